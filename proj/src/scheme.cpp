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

#include "blobflow/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blobflow/error.hpp"

namespace blobflow {

namespace {

constexpr double kClampThreshold = 1e-14;
constexpr double kMaxStepsPerInterval = 1e9;
/// Positive values below this are flushed to zero.
constexpr double kUnderflowFloor = 1e-200;

void check_step_bound(double bound, double interval) {
  if (!(bound > 0.0) || interval / bound > kMaxStepsPerInterval) {
    throw SolverError("stable time step collapsed to " + format_real(bound) +
                      " (density too large or not finite)");
  }
}

void compute_slopes(std::span<const double> u, double dx, double theta, BoundaryCondition bc,
                    int order, std::span<double> out) {
  const auto n = u.size();
  if (order == 1) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const bool periodic = bc == BoundaryCondition::kPeriodic;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = i > 0 ? u[i - 1] : (periodic ? u[n - 1] : u[0]);
    const double next = i + 1 < n ? u[i + 1] : (periodic ? u[0] : u[n - 1]);
    out[i] = minmod(theta * (next - u[i]) / dx, (next - prev) / (2.0 * dx),
                    theta * (u[i] - prev) / dx);
  }
}

void sanitize(std::span<double> u, const char* stage) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    double& v = u[i];
    if (!std::isfinite(v)) {
      throw NonFiniteState(std::string("non-finite density in cell ") + std::to_string(i) +
                           " after " + stage);
    }
    if (v < 0.0) {
      if (v > -kClampThreshold) {
        v = 0.0;
      } else {
        throw NegativeDensity(static_cast<int>(i), v);
      }
    } else if (v < kUnderflowFloor) {
      v = 0.0;
    }
  }
}

}  // namespace

std::vector<double> slopes(const Density& rho, double theta, BoundaryCondition bc, int order) {
  std::vector<double> out(static_cast<std::size_t>(rho.size()));
  compute_slopes(rho.values(), rho.grid().dx(), theta, bc, order, out);
  return out;
}

Reconstruction reconstruct(const Density& rho, std::span<const double> slope) {
  const double half = 0.5 * rho.grid().dx();
  Reconstruction r;
  r.right.resize(static_cast<std::size_t>(rho.size()));
  r.left.resize(static_cast<std::size_t>(rho.size()));
  for (int i = 0; i < rho.size(); ++i) {
    r.right[i] = rho[i] + half * slope[i];
    r.left[i] = rho[i] - half * slope[i];
  }
  return r;
}

Solver::Solver(const Grid& grid, ModelConfig cfg) : grid_{grid}, cfg_{std::move(cfg)} {
  cfg_.validate();
  if (const auto* kernel = std::get_if<KernelParams>(&cfg_.pressure)) {
    width_ = kernel->epsilon();
    if (cfg_.mode == ConvolutionMode::kFastScan) {
      scan_.emplace(grid_, *kernel, cfg_.bc);
    } else {
      dense_ = interaction_matrix(grid_, *kernel, cfg_.bc);
    }
  }
  const auto n = static_cast<std::size_t>(grid_.size());
  pressure_.resize(n);
  speed_.resize(n + 1);
  slope_.resize(n);
  flux_.resize(n + 1);
  stage_.resize(n);
  k1_.resize(n);
}

void Solver::interface_speeds(std::span<const double> u) {
  const int n = grid_.size();
  const double dx = grid_.dx();
  std::span<const double> c = u;
  if (scan_) {
    scan_->apply(u, pressure_);
    c = pressure_;
  } else if (!dense_.empty()) {
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < un; ++i) {
      double sum = 0.0;
      const double* row = dense_.data() + i * un;
      for (std::size_t j = 0; j < un; ++j) {
        sum += row[j] * u[j];
      }
      pressure_[i] = sum;
    }
    c = pressure_;
  }

  double max_speed = 0.0;
  for (int k = 1; k < n; ++k) {
    double w = (c[k] - c[k - 1]) / dx;
    if (cfg_.drift) {
      w += grid_.interface(k);
    }
    speed_[k] = w;
    max_speed = std::max(max_speed, std::abs(w));
  }
  if (cfg_.bc == BoundaryCondition::kPeriodic) {
    const double w = (c[0] - c[n - 1]) / dx;
    speed_[0] = w;
    speed_[n] = w;
    max_speed = std::max(max_speed, std::abs(w));
  } else {
    speed_[0] = 0.0;
    speed_[n] = 0.0;
  }
  last_max_speed_ = max_speed;
}

void Solver::rhs(std::span<const double> u, std::span<double> out) {
  const int n = grid_.size();
  const double dx = grid_.dx();
  const double half = 0.5 * dx;
  interface_speeds(u);
  compute_slopes(u, dx, cfg_.theta, cfg_.bc, cfg_.order, slope_);

  // Interface k separates cell k-1 (its right trace) from cell k (its left
  // trace). The material moves with -w, so w > 0 carries mass leftwards out
  // of cell k and w < 0 rightwards out of cell k-1.
  auto flux = [&](int left_cell, int right_cell, double w) {
    const double from_right = u[right_cell] - half * slope_[right_cell];
    const double from_left = u[left_cell] + half * slope_[left_cell];
    double f = std::max(w, 0.0) * from_right + std::min(w, 0.0) * from_left;
    return cfg_.fault == FaultInjection::kFlipFluxSign ? -f : f;
  };
  for (int k = 1; k < n; ++k) {
    flux_[k] = flux(k - 1, k, speed_[k]);
  }
  if (cfg_.bc == BoundaryCondition::kPeriodic) {
    flux_[0] = flux(n - 1, 0, speed_[0]);
    flux_[n] = flux_[0];
  } else {
    flux_[0] = 0.0;
    flux_[n] = cfg_.fault == FaultInjection::kLeakBoundaryFlux ? flux_[n - 1] : 0.0;
  }
  for (int i = 0; i < n; ++i) {
    out[i] = (flux_[i + 1] - flux_[i]) / dx;
  }
}

double Solver::stable_dt(std::span<const double> u, double cfl) {
  const double dx = grid_.dx();
  interface_speeds(u);
  double dt = cfl * dx / std::max(last_max_speed_, dx);
  const double top = *std::max_element(u.begin(), u.end());
  if (top > 0.0) {
    dt = std::min(dt, cfl * (dx * dx + 4.0 * width_ * width_) / (2.0 * top));
  }
  return dt;
}

void Solver::advance(std::vector<double>& u, double dt) {
  const auto n = u.size();
  rhs(u, k1_);
  for (std::size_t i = 0; i < n; ++i) {
    stage_[i] = u[i] + dt * k1_[i];
  }
  sanitize(stage_, "first stage");
  rhs(stage_, k1_);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = 0.5 * u[i] + 0.5 * (stage_[i] + dt * k1_[i]);
  }
  sanitize(u, "second stage");
}

std::vector<double> rhs(const Density& rho, const ModelConfig& cfg) {
  Solver solver(rho.grid(), cfg);
  std::vector<double> out(static_cast<std::size_t>(rho.size()));
  solver.rhs(rho.values(), out);
  return out;
}

namespace {

// Advances u from t towards t_stop by one controlled step and returns the new
// time. Lands exactly on t_stop when the step reaches it.
double controlled_step(Solver& solver, std::vector<double>& u, double t,
                       const TimeControls& controls, double t_stop, long long& steps) {
  const double remaining = t_stop - t;
  if (const auto* fixed = std::get_if<FixedStep>(&controls.mode)) {
    const double nominal = std::min(fixed->dt, remaining);
    const double bound = solver.stable_dt(u, kDefaultCfl);
    check_step_bound(bound, nominal);
    const double pieces = std::max(1.0, std::ceil(nominal / bound));
    const double sub = nominal / pieces;
    for (long long p = 0; p < static_cast<long long>(pieces); ++p) {
      solver.advance(u, sub);
      ++steps;
    }
    return nominal == remaining ? t_stop : t + nominal;
  }
  const double bound = solver.stable_dt(u, std::get<AdaptiveStep>(controls.mode).cfl);
  check_step_bound(bound, remaining);
  const double dt = std::min(bound, remaining);
  solver.advance(u, dt);
  ++steps;
  return dt == remaining ? t_stop : t + dt;
}

}  // namespace

StepResult step(const Density& state, double t, const ModelConfig& cfg,
                const TimeControls& controls, double t_stop) {
  controls.validate();
  if (!(t_stop > t)) {
    return StepResult{state, t};
  }
  Solver solver(state.grid(), cfg);
  std::vector<double> u(state.values().begin(), state.values().end());
  long long steps = 0;
  const double t_new = controlled_step(solver, u, t, controls, t_stop, steps);
  return StepResult{Density{state.grid(), std::move(u)}, t_new};
}

SimulationResult simulate(const Density& initial, const ModelConfig& cfg,
                          const TimeControls& controls) {
  cfg.validate();
  controls.validate();
  Solver solver(initial.grid(), cfg);

  std::vector<double> times = controls.snapshot_times;
  if (times.empty() || times.front() != 0.0) {
    times.insert(times.begin(), 0.0);
  }

  SimulationResult result;
  std::vector<double> u(initial.values().begin(), initial.values().end());
  double t = 0.0;
  for (double target : times) {
    while (t < target) {
      const double t_before = t;
      std::vector<double> backup = u;
      try {
        t = controlled_step(solver, u, t, controls, target, result.steps);
      } catch (const SolverError& e) {
        throw SimulationFailure(std::string(e.what()) + " while stepping from t=" +
                                    format_real(t_before),
                                t_before, Density{initial.grid(), std::move(backup)});
      }
    }
    Density snap{initial.grid(), u};
    result.diagnostics.push_back(record(target, snap, cfg));
    result.snapshots.push_back(Snapshot{target, std::move(snap)});
  }
  return result;
}

SimulationResult simulate(const InitialDatum& datum, const Grid& grid, const ModelConfig& cfg,
                          const TimeControls& controls) {
  return simulate(sample_initial(datum, grid), cfg, controls);
}

}  // namespace blobflow
