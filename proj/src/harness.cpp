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

#include "blobflow/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>

#include "blobflow/io.hpp"
#include "blobflow/scheme.hpp"
#include "blobflow/wasserstein.hpp"

namespace blobflow {

InsufficientPoints::InsufficientPoints(std::size_t found)
    : ConfigError("slope fit needs at least 3 points inside the window, found " +
                  std::to_string(found)) {}

NonPositiveDistance::NonPositiveDistance(double epsilon)
    : ConfigError("zero distance at epsilon=" + format_real(epsilon) +
                  " inside the fit window") {}

namespace {

// Window membership tolerant to the rounding of log-spaced endpoints.
bool in_window(double eps, FitWindow window) {
  constexpr double slack = 1e-9;
  return eps >= window.lo * (1.0 - slack) && eps <= window.hi * (1.0 + slack);
}

}  // namespace

SlopeFit fit_slope(std::span<const std::pair<double, double>> points, FitWindow window) {
  std::vector<std::pair<double, double>> logs;
  for (const auto& [eps, dist] : points) {
    if (!in_window(eps, window)) {
      continue;
    }
    if (!(dist > 0.0)) {
      throw NonPositiveDistance(eps);
    }
    logs.emplace_back(std::log(eps), std::log(dist));
  }
  if (logs.size() < 3) {
    throw InsufficientPoints(logs.size());
  }
  const double n = static_cast<double>(logs.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (!(sxx > 0.0)) {
    throw InsufficientPoints(1);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw ConfigError("log spacing needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = std::log(hi / lo) / (count - 1);
  for (int k = 0; k < count; ++k) {
    out[k] = lo * std::exp(step * k);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

void SweepConfig::validate() const {
  if (epsilons.empty()) {
    throw ConfigError("sweep needs at least one epsilon");
  }
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    (void)KernelParams{epsilons[k]};
    if (k > 0 && !(epsilons[k] > epsilons[k - 1])) {
      throw ConfigError("sweep epsilons must be strictly increasing");
    }
  }
  const FitWindow range{epsilons.front(), epsilons.back()};
  if (!(fit_window.lo < fit_window.hi && in_window(fit_window.lo, range) &&
        in_window(fit_window.hi, range))) {
    throw ConfigError("fit window [" + format_real(fit_window.lo) + ", " +
                      format_real(fit_window.hi) + "] is not inside the epsilon range");
  }
  base.validate();
  controls.validate();
  if (!allow_underresolved && grid.dx() > epsilons.front()) {
    throw ResolutionViolation(grid.dx(), epsilons.front());
  }
}

std::vector<std::pair<double, double>> ConvergenceReport::at_time(double time) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& e : entries) {
    if (e.time == time) {
      out.emplace_back(e.epsilon, e.w2);
    }
  }
  return out;
}

std::optional<double> boundary_contact_time(std::span<const Snapshot> snapshots,
                                            double threshold) {
  for (const auto& s : snapshots) {
    const auto u = s.density.values();
    if (u.front() > threshold || u.back() > threshold) {
      return s.time;
    }
  }
  return std::nullopt;
}

ConvergenceReport run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  return run_sweep(cfg, sample_initial(cfg.datum, cfg.grid));
}

ConvergenceReport run_sweep(const SweepConfig& cfg, const Density& initial) {
  cfg.validate();
  if (!(initial.grid() == cfg.grid)) {
    throw ConfigError("initial density does not live on the sweep grid");
  }

  // Run 0 is the local model, run k >= 1 uses epsilons[k - 1].
  const std::size_t runs = cfg.epsilons.size() + 1;
  std::vector<std::optional<SimulationResult>> results(runs);
  std::vector<std::exception_ptr> errors(runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < runs; k = next++) {
      try {
        ModelConfig model = cfg.base;
        if (k == 0) {
          model.pressure = Local{};
        } else {
          model.pressure = KernelParams{cfg.epsilons[k - 1]};
        }
        results[k] = simulate(initial, model, cfg.controls);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::size_t jobs = cfg.jobs > 0 ? static_cast<std::size_t>(cfg.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, runs);
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < jobs; ++j) {
      pool.emplace_back(worker);
    }
    worker();
  }
  for (std::size_t k = 0; k < runs; ++k) {
    if (!errors[k]) {
      continue;
    }
    const std::string label = k == 0 ? "local run" : "epsilon=" + format_real(cfg.epsilons[k - 1]);
    try {
      std::rethrow_exception(errors[k]);
    } catch (const Error& e) {
      throw Error(e.kind(), label + ": " + e.what());
    }
  }

  ConvergenceReport report;
  const auto& local = results[0]->snapshots;
  for (std::size_t t = 0; t < local.size(); ++t) {
    for (std::size_t k = 1; k < runs; ++k) {
      const auto& snap = results[k]->snapshots[t];
      report.entries.push_back(
          ConvergenceEntry{local[t].time, cfg.epsilons[k - 1], w2(snap.density, local[t].density)});
    }
  }

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& snap : local) {
    const auto points = report.at_time(snap.time);
    TimeSlope ts{snap.time, SlopeFit{nan, nan, nan}};
    try {
      ts.fit = fit_slope(points, cfg.fit_window);
    } catch (const ConfigError&) {
      // t = 0 and other degenerate times have no meaningful rate.
    }
    report.slopes.push_back(ts);

    double larger = -1.0;
    for (auto it = points.rbegin(); it != points.rend(); ++it) {
      if (!in_window(it->first, cfg.fit_window)) {
        continue;
      }
      if (larger >= 0.0 && it->second > 1.05 * larger) {
        report.warnings.push_back("t=" + format_real(snap.time) + ": w2 grows from " +
                                  format_real(larger) + " to " + format_real(it->second) +
                                  " as epsilon decreases to " + format_real(it->first));
      }
      larger = it->second;
    }
  }
  report.boundary_contact_time = boundary_contact_time(local);
  report.local_snapshots = local;
  return report;
}

void write_report_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "time,epsilon,w2\n";
  for (const auto& e : report.entries) {
    out << format_real(e.time) << ',' << format_real(e.epsilon) << ',' << format_real(e.w2)
        << '\n';
  }
}

void write_fit_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "time,slope,intercept,r2\n";
  for (const auto& s : report.slopes) {
    out << format_real(s.time) << ',' << format_real(s.fit.slope) << ','
        << format_real(s.fit.intercept) << ',' << format_real(s.fit.r_squared) << '\n';
  }
}

void write_plot_data(std::ostream& out, const ConvergenceReport& report) {
  bool first = true;
  for (const auto& s : report.slopes) {
    if (!first) {
      out << "\n\n";
    }
    first = false;
    out << "# t=" << format_real(s.time) << "\n# log_eps log_w2\n";
    for (const auto& [eps, dist] : report.at_time(s.time)) {
      if (dist > 0.0) {
        out << format_real(std::log(eps)) << ' ' << format_real(std::log(dist)) << '\n';
      }
    }
  }
}

}  // namespace blobflow
