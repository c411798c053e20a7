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

#include "blobflow/kernel.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "blobflow/error.hpp"
#include "blobflow/io.hpp"

namespace blobflow {

KernelParams::KernelParams(double epsilon) : epsilon_{epsilon} {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be positive and finite, got " + format_real(epsilon));
  }
}

namespace {

// s r^k = (exp(-(k - 1/2) h) - exp(-(k + 1/2) h)) / 2 with h = dx / eps: the
// integral over a cell whose centre lies k cells away.
double offset_weight(int k, double h) {
  return 0.5 * std::exp(-(k - 0.5) * h) * -std::expm1(-h);
}

}  // namespace

double cell_integral(int i, int j, const Grid& grid, const KernelParams& kernel) {
  const double eps = kernel.epsilon();
  const double xi = grid.center(i);
  const double lo = grid.interface(j);
  const double hi = grid.interface(j + 1);
  if (i == j) {
    return -std::expm1(-grid.dx() / (2.0 * eps));
  }
  // Both branches are (1/2)(e^{-near/eps} - e^{-far/eps}), factored so the
  // difference keeps full relative precision.
  const double near = lo > xi ? lo - xi : xi - hi;
  return 0.5 * std::exp(-near / eps) * -std::expm1(-(hi - lo) / eps);
}

double periodic_cell_integral(int i, int j, const Grid& grid, const KernelParams& kernel) {
  const int n = grid.size();
  const double h = grid.dx() / kernel.epsilon();
  const double wrap = -1.0 / std::expm1(-n * h);  // 1 / (1 - r^N)
  const int k = ((j - i) % n + n) % n;
  if (k == 0) {
    return -std::expm1(-0.5 * h) + 2.0 * offset_weight(n, h) * wrap;
  }
  return (offset_weight(k, h) + offset_weight(n - k, h)) * wrap;
}

std::vector<double> interaction_matrix(const Grid& grid, const KernelParams& kernel,
                                       BoundaryCondition bc) {
  const int n = grid.size();
  if (n > kMaxDenseCells) {
    throw ConfigError("dense interaction matrix limited to " + std::to_string(kMaxDenseCells) +
                      " cells, grid has " + std::to_string(n));
  }
  std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m[static_cast<std::size_t>(i) * n + j] = bc == BoundaryCondition::kPeriodic
                                                   ? periodic_cell_integral(i, j, grid, kernel)
                                                   : cell_integral(i, j, grid, kernel);
    }
  }
  return m;
}

ExponentialScan::ExponentialScan(const Grid& grid, const KernelParams& kernel,
                                 BoundaryCondition bc)
    : n_{grid.size()}, periodic_{bc == BoundaryCondition::kPeriodic} {
  const double h = grid.dx() / kernel.epsilon();
  ratio_ = std::exp(-h);
  diagonal_ = -std::expm1(-0.5 * h);
  first_off_ = offset_weight(1, h);
  wrap_gain_ = -1.0 / std::expm1(-n_ * h);
}

void ExponentialScan::apply(std::span<const double> u, std::span<double> out) const {
  const auto n = static_cast<std::size_t>(n_);
  const double r = ratio_;
  const double sr = first_off_;

  // Seeds of the two scans: zero on the line, the full image sums on a torus.
  double left = 0.0;
  double right = 0.0;
  if (periodic_) {
    double weight = sr;
    for (std::size_t k = 1; k <= n; ++k) {
      left += weight * u[(n - k) % n];
      right += weight * u[(k - 1) % n];
      weight *= r;
    }
    left *= wrap_gain_;
    right *= wrap_gain_;
  }

  // Forward pass stores the left sums in out; backward pass adds the rest.
  out[0] = left;
  for (std::size_t i = 1; i < n; ++i) {
    left = r * left + sr * u[i - 1];
    out[i] = left;
  }
  out[n - 1] += right + diagonal_ * u[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    right = r * right + sr * u[i + 1];
    out[i] += right + diagonal_ * u[i];
  }
}

std::vector<double> convolve(const Density& rho, const KernelParams& kernel,
                             BoundaryCondition bc, ConvolutionMode mode) {
  const auto n = static_cast<std::size_t>(rho.size());
  std::vector<double> c(n, 0.0);
  if (mode == ConvolutionMode::kFastScan) {
    ExponentialScan(rho.grid(), kernel, bc).apply(rho.values(), c);
    return c;
  }
  const auto m = interaction_matrix(rho.grid(), kernel, bc);
  const auto u = rho.values();
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += m[i * n + j] * u[j];
    }
    c[i] = sum;
  }
  return c;
}

std::vector<double> velocity_field(const Density& rho, const Pressure& pressure,
                                   BoundaryCondition bc, ConvolutionMode mode) {
  const int n = rho.size();
  const double dx = rho.grid().dx();
  std::vector<double> c;
  if (const auto* kernel = std::get_if<KernelParams>(&pressure)) {
    c = convolve(rho, *kernel, bc, mode);
  } else {
    c.assign(rho.values().begin(), rho.values().end());
  }
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k < n; ++k) {
    v[k] = (c[k] - c[k - 1]) / dx;
  }
  if (bc == BoundaryCondition::kPeriodic) {
    v[0] = (c[0] - c[n - 1]) / dx;
    v[n] = v[0];
  }
  return v;
}

}  // namespace blobflow
