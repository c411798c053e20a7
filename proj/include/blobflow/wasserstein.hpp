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

#ifndef BLOBFLOW_WASSERSTEIN_HPP
#define BLOBFLOW_WASSERSTEIN_HPP

#include <vector>

#include "blobflow/grid.hpp"

namespace blobflow {

/// Generalized inverse of the piecewise-linear CDF of a cell-average density.
///
/// Each cell with positive mass contributes one segment of mass coordinates
/// [breaks[k], breaks[k+1]] mapped affinely onto its cell
/// [left[k], right[k]]. Empty cells produce no segment, so the quantile jumps
/// across them.
class QuantileFunction {
 public:
  [[nodiscard]] const std::vector<double>& breaks() const noexcept { return breaks_; }
  [[nodiscard]] const std::vector<double>& left() const noexcept { return left_; }
  [[nodiscard]] const std::vector<double>& right() const noexcept { return right_; }
  [[nodiscard]] double total_mass() const noexcept { return breaks_.back(); }
  [[nodiscard]] std::size_t segments() const noexcept { return left_.size(); }

  /// F^{-1}(s) for s in [0, M]; right-continuous at jumps.
  [[nodiscard]] double operator()(double s) const;

 private:
  friend QuantileFunction quantile(const Density& rho);
  QuantileFunction() = default;

  std::vector<double> breaks_;
  std::vector<double> left_;
  std::vector<double> right_;
};

/// Throws ZeroMass when the density has no positive cell.
[[nodiscard]] QuantileFunction quantile(const Density& rho);

/// Relative mass tolerance accepted by w2.
inline constexpr double kMassTolerance = 1e-8;

/// Exact W2 between two equal-mass densities, possibly on different grids:
/// both quantiles are affine on every interval of the merged breakpoints, so
/// the squared difference integrates in closed form. O(N + M).
/// Throws MassMismatch or ZeroMass.
[[nodiscard]] double w2(const Density& a, const Density& b);

[[nodiscard]] double w2(const QuantileFunction& a, const QuantileFunction& b);

}  // namespace blobflow

#endif  // BLOBFLOW_WASSERSTEIN_HPP
