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

#include "blobflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <type_traits>

#include "blobflow/error.hpp"
#include "blobflow/io.hpp"

namespace blobflow {

std::vector<double> Grid::centers() const {
  std::vector<double> x(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    x[static_cast<std::size_t>(i)] = center(i);
  }
  return x;
}

Grid make_grid(double r1, double r2, int n_cells) {
  if (!std::isfinite(r1) || !std::isfinite(r2)) {
    throw ConfigError("grid endpoints must be finite");
  }
  if (!(r2 > r1)) {
    throw ConfigError("grid requires r2 > r1, got r1=" + format_real(r1) +
                      " r2=" + format_real(r2));
  }
  if (n_cells < 2) {
    throw ConfigError("grid requires at least 2 cells, got " + std::to_string(n_cells));
  }
  return Grid{r1, r2, n_cells};
}

Density::Density(Grid grid, std::vector<double> values)
    : grid_{grid}, values_{std::move(values)} {
  if (values_.size() != static_cast<std::size_t>(grid_.size())) {
    throw ConfigError("density has " + std::to_string(values_.size()) + " values for " +
                      std::to_string(grid_.size()) + " cells");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw ConfigError("density value " + format_real(values_[i]) + " in cell " +
                        std::to_string(i) + " is negative or not finite");
    }
  }
}

Density::Density(Grid grid) : grid_{grid}, values_(static_cast<std::size_t>(grid.size()), 0.0) {}

double mass(const Density& rho) {
  double total = 0.0;
  for (double u : rho.values()) {
    total += u;
  }
  return total * rho.grid().dx();
}

namespace {

Density clamp_nonnegative(const Grid& grid, std::vector<double> values, SampleStats* stats);

bool starts_with(const std::string& text, const std::string& prefix) {
  return text.rfind(prefix, 0) == 0;
}

double parse_number(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end == text.c_str()) {
    throw ConfigError("cannot parse " + what + " from '" + text + "'");
  }
  if (end != text.c_str() + text.size()) {
    throw ConfigError("trailing characters in " + what + " '" + text + "'");
  }
  return value;
}

}  // namespace

InitialDatum parse_datum(const std::string& text) {
  if (text == "gauss") {
    return datum::Gaussian{};
  }
  if (starts_with(text, "gauss:")) {
    auto rest = text.substr(6);
    auto colon = rest.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("expected gauss:MEAN:SIGMA, got '" + text + "'");
    }
    datum::Gaussian g{parse_number(rest.substr(0, colon), "gaussian mean"),
                      parse_number(rest.substr(colon + 1), "gaussian sigma")};
    if (!(g.sigma > 0.0) || !std::isfinite(g.sigma) || !std::isfinite(g.mean)) {
      throw ConfigError("gaussian sigma must be positive");
    }
    return g;
  }
  if (text == "parabola") {
    return datum::Parabola{};
  }
  if (text == "uniform") {
    return datum::UniformPlusConstant{};
  }
  if (starts_with(text, "uniform+")) {
    double c = parse_number(text.substr(8), "uniform offset");
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw ConfigError("uniform offset must be nonnegative");
    }
    return datum::UniformPlusConstant{c};
  }
  if (starts_with(text, "random:")) {
    auto digits = text.substr(7);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("random seed must be an unsigned integer, got '" + digits + "'");
    }
    try {
      return datum::RandomPiecewise{std::stoull(digits)};
    } catch (const std::exception&) {
      throw ConfigError("random seed out of range: '" + digits + "'");
    }
  }
  if (starts_with(text, "file:")) {
    if (text.size() == 5) {
      throw ConfigError("file datum needs a path");
    }
    return datum::FromFile{text.substr(5)};
  }
  throw ConfigError("unknown datum '" + text + "'");
}

std::string to_string(const InitialDatum& d) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, datum::Gaussian>) {
          if (v.mean == 0.0 && v.sigma == 1.0) {
            return "gauss";
          }
          return "gauss:" + format_real(v.mean) + ":" + format_real(v.sigma);
        } else if constexpr (std::is_same_v<T, datum::Parabola>) {
          return "parabola";
        } else if constexpr (std::is_same_v<T, datum::UniformPlusConstant>) {
          return "uniform+" + format_real(v.c);
        } else if constexpr (std::is_same_v<T, datum::RandomPiecewise>) {
          return "random:" + std::to_string(v.seed);
        } else {
          return "file:" + v.path.string();
        }
      },
      d);
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) noexcept {
  std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

Density sample_initial(const InitialDatum& d, const Grid& grid, SampleStats* stats) {
  if (const auto* file = std::get_if<datum::FromFile>(&d)) {
    RawSnapshot snap = read_snapshot_values(file->path);
    if (!(snap.grid == grid)) {
      throw ConfigError("grid in " + file->path.string() + " does not match the requested grid");
    }
    return clamp_nonnegative(grid, std::move(snap.values), stats);
  }

  const auto n = static_cast<std::size_t>(grid.size());
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.center(static_cast<int>(i));
    values[i] = std::visit(
        [&](const auto& v) -> double {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, datum::Gaussian>) {
            if (!(v.sigma > 0.0)) {
              throw ConfigError("gaussian sigma must be positive");
            }
            const double z = (x - v.mean) / v.sigma;
            return std::exp(-0.5 * z * z) / (v.sigma * std::sqrt(2.0 * std::numbers::pi));
          } else if constexpr (std::is_same_v<T, datum::Parabola>) {
            return std::max(1.0 - x * x, 0.0);
          } else if constexpr (std::is_same_v<T, datum::UniformPlusConstant>) {
            if (!(v.c >= 0.0)) {
              throw ConfigError("uniform offset must be nonnegative");
            }
            return 1.0 / grid.length() + v.c;
          } else if constexpr (std::is_same_v<T, datum::RandomPiecewise>) {
            return counter_uniform(v.seed, i);
          } else {
            return 0.0;
          }
        },
        d);
  }

  return clamp_nonnegative(grid, std::move(values), stats);
}

namespace {

Density clamp_nonnegative(const Grid& grid, std::vector<double> values, SampleStats* stats) {
  int clamped = 0;
  for (double& u : values) {
    if (!std::isfinite(u)) {
      throw ConfigError("initial datum produced a non-finite value");
    }
    if (u < 0.0) {
      u = 0.0;
      ++clamped;
    }
  }
  if (stats != nullptr) {
    stats->clamped_cells = clamped;
  }
  return Density{grid, std::move(values)};
}

}  // namespace

}  // namespace blobflow
