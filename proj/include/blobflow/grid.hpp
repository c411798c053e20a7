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

#ifndef BLOBFLOW_GRID_HPP
#define BLOBFLOW_GRID_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace blobflow {

/// Uniform partition of (r1, r2) into n cells. Cells are indexed 0..n-1;
/// interfaces 0..n, interface k sitting between cells k-1 and k.
class Grid {
 public:
  [[nodiscard]] double r1() const noexcept { return r1_; }
  [[nodiscard]] double r2() const noexcept { return r2_; }
  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] double dx() const noexcept { return dx_; }
  [[nodiscard]] double length() const noexcept { return r2_ - r1_; }

  [[nodiscard]] double center(int i) const noexcept { return r1_ + (i + 0.5) * dx_; }
  [[nodiscard]] double interface(int k) const noexcept { return k == n_ ? r2_ : r1_ + k * dx_; }

  [[nodiscard]] std::vector<double> centers() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  friend Grid make_grid(double r1, double r2, int n_cells);
  Grid(double r1, double r2, int n) : r1_{r1}, r2_{r2}, n_{n}, dx_{(r2 - r1) / n} {}

  double r1_;
  double r2_;
  int n_;
  double dx_;
};

/// Throws ConfigError on non-finite endpoints, r2 <= r1 or n_cells < 2.
[[nodiscard]] Grid make_grid(double r1, double r2, int n_cells);

/// Nonnegative cell averages on a grid. Immutable once built.
class Density {
 public:
  /// Throws ConfigError if the size does not match or any value is negative
  /// or not finite.
  Density(Grid grid, std::vector<double> values);

  /// Zero density.
  explicit Density(Grid grid);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double operator[](int i) const noexcept { return values_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] int size() const noexcept { return grid_.size(); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

[[nodiscard]] double mass(const Density& rho);

namespace datum {

/// (1/(sigma sqrt(2 pi))) exp(-(x-mean)^2 / (2 sigma^2))
struct Gaussian {
  double mean = 0.0;
  double sigma = 1.0;
};

/// (1 - x^2)_+
struct Parabola {};

/// 1/|domain| + c
struct UniformPlusConstant {
  double c = 0.0;
};

/// One independent uniform [0,1) value per cell.
struct RandomPiecewise {
  std::uint64_t seed = 0;
};

/// Exact cell averages read from a snapshot CSV.
struct FromFile {
  std::filesystem::path path;
};

}  // namespace datum

using InitialDatum = std::variant<datum::Gaussian, datum::Parabola, datum::UniformPlusConstant,
                                  datum::RandomPiecewise, datum::FromFile>;

/// Parses the command-line datum syntax: gauss | gauss:MEAN:SIGMA | parabola |
/// uniform+C | random:SEED | file:PATH.
[[nodiscard]] InitialDatum parse_datum(const std::string& text);

/// Inverse of parse_datum.
[[nodiscard]] std::string to_string(const InitialDatum& datum);

struct SampleStats {
  int clamped_cells = 0;  ///< negative samples set to zero
};

/// Cell averages by midpoint evaluation, clamped at zero. FromFile loads the
/// stored averages, which must live on a grid equal to `grid`.
[[nodiscard]] Density sample_initial(const InitialDatum& datum, const Grid& grid,
                                     SampleStats* stats = nullptr);

/// SplitMix64 finalizer applied to seed + counter * golden gamma, mapped to
/// [0,1) from the top 53 bits. Counter-based, so cell i's value does not
/// depend on how many other cells were drawn.
[[nodiscard]] double counter_uniform(std::uint64_t seed, std::uint64_t counter) noexcept;

}  // namespace blobflow

#endif  // BLOBFLOW_GRID_HPP
