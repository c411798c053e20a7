// Copyright 2026 The blobflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BLOBFLOW_KERNEL_HPP
#define BLOBFLOW_KERNEL_HPP

#include <span>
#include <variant>
#include <vector>

#include "blobflow/grid.hpp"

namespace blobflow {

/// Width of the mollifier W_eps(x) = exp(-|x|/eps) / (2 eps).
class KernelParams {
 public:
  /// Throws ConfigError unless epsilon is positive and finite.
  explicit KernelParams(double epsilon);

  [[nodiscard]] double epsilon() const noexcept { return epsilon_; }

 private:
  double epsilon_;
};

/// The eps -> 0 limit: the convolution is replaced by the identity.
struct Local {};

/// Either a mollified pressure or the local one.
using Pressure = std::variant<Local, KernelParams>;

enum class BoundaryCondition { kNoFlux, kPeriodic };

enum class ConvolutionMode { kDense, kFastScan };

/// Largest grid for which the dense interaction matrix is materialized.
inline constexpr int kMaxDenseCells = 4096;

/// Integral of the whole-line kernel centred at cell i's midpoint over cell j.
[[nodiscard]] double cell_integral(int i, int j, const Grid& grid, const KernelParams& kernel);

/// Same integral for the kernel periodized over the domain length.
[[nodiscard]] double periodic_cell_integral(int i, int j, const Grid& grid,
                                            const KernelParams& kernel);

/// Row-major N x N matrix of cell integrals. Throws ConfigError if
/// N > kMaxDenseCells.
[[nodiscard]] std::vector<double> interaction_matrix(const Grid& grid, const KernelParams& kernel,
                                                     BoundaryCondition bc);

/// Precomputed O(N) two-scan convolution with the exponential kernel.
///
/// c_i = a u_i + sum_{j != i} s r^{|i-j|} u_j with r = exp(-dx/eps),
/// a = 1 - exp(-dx/(2 eps)) and s = sinh(dx/(2 eps)). The left and right sums
/// obey P_i = r P_{i-1} + s r u_{i-1} and its mirror. s r^k is carried as one
/// product so that large dx/eps never overflows the sinh factor.
class ExponentialScan {
 public:
  ExponentialScan(const Grid& grid, const KernelParams& kernel, BoundaryCondition bc);

  /// `out` must have the same size as `u`.
  void apply(std::span<const double> u, std::span<double> out) const;

 private:
  int n_;
  bool periodic_;
  double ratio_;       // r
  double diagonal_;    // a
  double first_off_;   // s r
  double wrap_gain_;   // 1 / (1 - r^N)
};

/// c = I u for the given mode.
[[nodiscard]] std::vector<double> convolve(const Density& rho, const KernelParams& kernel,
                                           BoundaryCondition bc, ConvolutionMode mode);

/// Interface velocities v_k = (c_k - c_{k-1}) / dx, k = 0..N, with c the
/// convolved density (Local: the density itself). Periodic closes interface
/// 0 and N with (c_0 - c_{N-1}) / dx; NoFlux leaves both ends at zero.
[[nodiscard]] std::vector<double> velocity_field(const Density& rho, const Pressure& pressure,
                                                 BoundaryCondition bc, ConvolutionMode mode);

}  // namespace blobflow

#endif  // BLOBFLOW_KERNEL_HPP
