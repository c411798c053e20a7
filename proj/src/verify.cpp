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

#include "blobflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "blobflow/diagnostics.hpp"
#include "blobflow/kernel.hpp"
#include "blobflow/scheme.hpp"
#include "blobflow/wasserstein.hpp"

namespace blobflow::verify {

double Barenblatt::operator()(double t, double x) const {
  const double s = 0.5 * t;
  return std::max(std::pow(s, -1.0 / 3.0) * (c - x * x / (12.0 * std::pow(s, 2.0 / 3.0))), 0.0);
}

double Barenblatt::average(double t, double lo, double hi) const {
  const double s = 0.5 * t;
  const double amp = std::pow(s, -1.0 / 3.0);
  const double curv = 1.0 / (12.0 * std::pow(s, 2.0 / 3.0));
  const double radius = std::sqrt(c / curv);
  const double a = std::max(lo, -radius);
  const double b = std::min(hi, radius);
  if (!(b > a)) {
    return 0.0;
  }
  auto antiderivative = [&](double x) { return amp * (c * x - curv * x * x * x / 3.0); };
  return (antiderivative(b) - antiderivative(a)) / (hi - lo);
}

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

template <class Body>
CheckResult guarded(const std::string& name, Body body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return CheckResult{name, false, std::string("error: ") + e.what()};
  }
}

Density cell_averages(const Grid& grid, auto&& average) {
  std::vector<double> v(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    v[i] = average(grid.interface(i), grid.interface(i + 1));
  }
  return Density{grid, std::move(v)};
}

double barenblatt_error(int cells, int order, FaultInjection fault) {
  const Barenblatt exact;
  const Grid grid = make_grid(-3.0, 3.0, cells);
  const Density start =
      cell_averages(grid, [&](double lo, double hi) { return exact.average(1.0, lo, hi); });
  ModelConfig cfg;
  cfg.order = order;
  cfg.fault = fault;
  // The solver clock starts at zero; the profile is sampled at t0 = 1.
  TimeControls controls{FixedStep{0.01}, 1.0, {0.0, 1.0}};
  const auto run = simulate(start, cfg, controls);
  const Density& final_state = run.snapshots.back().density;
  double err = 0.0;
  for (int i = 0; i < cells; ++i) {
    err += std::abs(final_state[i] - exact.average(2.0, grid.interface(i), grid.interface(i + 1)));
  }
  return err * grid.dx();
}

}  // namespace

CheckResult barenblatt_order(FaultInjection fault, const std::vector<int>& cells) {
  const std::string name = "barenblatt L1 order";
  return guarded(name, [&] {
    if (cells.size() < 2) {
      return CheckResult{name, false, "need at least two grids"};
    }
    std::ostringstream detail;
    bool ok = true;
    for (const auto& [order, threshold] : {std::pair{2, 1.3}, std::pair{1, 0.8}}) {
      std::vector<double> errors;
      for (int n : cells) {
        errors.push_back(barenblatt_error(n, order, fault));
      }
      detail << "order " << order << ": L1";
      for (double e : errors) {
        detail << ' ' << fmt(e);
      }
      detail << ", rates";
      for (std::size_t k = 1; k < errors.size(); ++k) {
        const double rate = std::log(errors[k - 1] / errors[k]) /
                            std::log(static_cast<double>(cells[k]) / cells[k - 1]);
        detail << ' ' << fmt(rate);
        ok = ok && rate >= threshold;
      }
      detail << " (need >= " << threshold << "); ";
    }
    return CheckResult{name, ok, detail.str()};
  });
}

CheckResult fokker_planck_steady_state(FaultInjection fault) {
  const std::string name = "fokker-planck steady state";
  return guarded(name, [&] {
    const Grid grid = make_grid(-8.0, 8.0, 1024);
    ModelConfig cfg;
    cfg.pressure = KernelParams{0.02};
    cfg.drift = true;
    cfg.fault = fault;
    TimeControls controls{AdaptiveStep{0.4}, 10.0, {0.0, 10.0}};
    const auto run = simulate(datum::UniformPlusConstant{0.0}, grid, cfg, controls);
    const double level = 0.5 * std::cbrt(2.25);
    const double radius = std::sqrt(2.0 * level);
    const Density steady = cell_averages(grid, [&](double lo, double hi) {
      const double a = std::max(lo, -radius);
      const double b = std::min(hi, radius);
      if (!(b > a)) {
        return 0.0;
      }
      return (level * (b - a) - (b * b * b - a * a * a) / 6.0) / (hi - lo);
    });
    const double dist = w2(run.snapshots.back().density, steady);
    return CheckResult{name, dist <= 5e-2, "W2(u(10), steady) = " + fmt(dist) + " (need <= 0.05)"};
  });
}

CheckResult kernel_equivalence() {
  const std::string name = "kernel dense/scan equivalence";
  return guarded(name, [&] {
    double worst = 0.0;
    double worst_row = 0.0;
    std::uint64_t counter = 0;
    for (int cells : {8, 37, 64, 256}) {
      for (double ratio : {0.1, 1.0, 10.0, 100.0}) {
        const Grid grid = make_grid(-1.0, 2.0, cells);
        const KernelParams kernel{ratio * grid.dx()};
        std::vector<double> u(static_cast<std::size_t>(cells));
        for (double& v : u) {
          v = counter_uniform(7, counter++);
        }
        const Density rho{grid, u};
        for (auto bc : {BoundaryCondition::kNoFlux, BoundaryCondition::kPeriodic}) {
          const auto dense = convolve(rho, kernel, bc, ConvolutionMode::kDense);
          const auto scan = convolve(rho, kernel, bc, ConvolutionMode::kFastScan);
          double diff = 0.0;
          double scale = 0.0;
          for (int i = 0; i < cells; ++i) {
            diff = std::max(diff, std::abs(dense[i] - scan[i]));
            scale = std::max(scale, std::abs(dense[i]));
          }
          worst = std::max(worst, diff / scale);
        }
        const auto m = interaction_matrix(grid, kernel, BoundaryCondition::kPeriodic);
        for (int i = 0; i < cells; ++i) {
          double sum = 0.0;
          for (int j = 0; j < cells; ++j) {
            sum += m[static_cast<std::size_t>(i) * cells + j];
          }
          worst_row = std::max(worst_row, std::abs(sum - 1.0));
        }
      }
    }
    const bool ok = worst <= 1e-10 && worst_row <= 1e-12;
    return CheckResult{name, ok,
                       "max relative discrepancy " + fmt(worst) + " (need <= 1e-10), periodic "
                       "row-sum error " + fmt(worst_row) + " (need <= 1e-12)"};
  });
}

CheckResult structural_properties(FaultInjection fault) {
  const std::string name = "conservation/positivity/maximum principle";
  return guarded(name, [&] {
    struct Case {
      const char* label;
      Grid grid;
      InitialDatum datum;
      ModelConfig cfg;
      bool check_linf;
    };
    auto model = [&](Pressure p, BoundaryCondition bc, bool drift) {
      ModelConfig m;
      m.pressure = p;
      m.bc = bc;
      m.drift = drift;
      m.fault = fault;
      return m;
    };
    // The truncated kernel lets mass pile up against a no-flux wall, so the
    // maximum is only monitored where the data stays off the walls.
    const std::vector<Case> cases{
        {"gauss eps=0.1 noflux", make_grid(-6.0, 6.0, 256), datum::Gaussian{},
         model(KernelParams{0.1}, BoundaryCondition::kNoFlux, false), true},
        {"parabola eps=0.05 periodic", make_grid(-1.5, 1.5, 128), datum::Parabola{},
         model(KernelParams{0.05}, BoundaryCondition::kPeriodic, false), true},
        {"random eps=0.2 periodic", make_grid(-2.0, 2.0, 128), datum::RandomPiecewise{3},
         model(KernelParams{0.2}, BoundaryCondition::kPeriodic, false), true},
        {"random eps=0.2 noflux", make_grid(-2.0, 2.0, 128), datum::RandomPiecewise{7},
         model(KernelParams{0.2}, BoundaryCondition::kNoFlux, false), false},
        {"random local noflux", make_grid(-2.0, 2.0, 128), datum::RandomPiecewise{5},
         model(Local{}, BoundaryCondition::kNoFlux, false), true},
        {"random eps=0.5 drift", make_grid(-3.0, 3.0, 128), datum::RandomPiecewise{11},
         model(KernelParams{0.5}, BoundaryCondition::kNoFlux, true), false},
    };
    std::vector<double> times;
    for (int k = 0; k <= 10; ++k) {
      times.push_back(0.05 * k);
    }
    const TimeControls controls{FixedStep{0.01}, 0.5, times};

    std::ostringstream detail;
    bool ok = true;
    for (const auto& c : cases) {
      const auto run = simulate(c.datum, c.grid, c.cfg, controls);
      const auto& d = run.diagnostics;
      double mass_drift = 0.0;
      double max_rise = 0.0;
      double energy_rise = 0.0;
      double lowest = 0.0;
      for (std::size_t k = 0; k < d.size(); ++k) {
        mass_drift = std::max(mass_drift, std::abs(d[k].mass - d[0].mass) / d[0].mass);
        const auto u = run.snapshots[k].density.values();
        lowest = std::min(lowest, *std::min_element(u.begin(), u.end()));
        if (k > 0) {
          max_rise = std::max(max_rise, d[k].linf - d[k - 1].linf);
          energy_rise = std::max(energy_rise, d[k].energy_nonlocal - d[k - 1].energy_nonlocal);
        }
      }
      bool case_ok = mass_drift <= 1e-10 && lowest >= 0.0;
      if (c.check_linf) {
        case_ok = case_ok && max_rise <= 1e-8;
      }
      if (!c.cfg.drift) {
        case_ok = case_ok && energy_rise <= 1e-8;
      }
      ok = ok && case_ok;
      detail << c.label << (case_ok ? " ok" : " FAILED") << " (mass drift " << fmt(mass_drift);
      if (c.check_linf) {
        detail << ", max rise " << fmt(max_rise);
      }
      if (!c.cfg.drift) {
        detail << ", energy rise " << fmt(energy_rise);
      }
      detail << "); ";
    }
    return CheckResult{name, ok, detail.str()};
  });
}

std::vector<CheckResult> run_all(FaultInjection fault) {
  return {barenblatt_order(fault), fokker_planck_steady_state(fault), kernel_equivalence(),
          structural_properties(fault)};
}

}  // namespace blobflow::verify
