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

#ifndef BLOBFLOW_HARNESS_HPP
#define BLOBFLOW_HARNESS_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blobflow/error.hpp"
#include "blobflow/grid.hpp"
#include "blobflow/io.hpp"
#include "blobflow/model.hpp"

namespace blobflow {

class InsufficientPoints : public ConfigError {
 public:
  explicit InsufficientPoints(std::size_t found);
};

class NonPositiveDistance : public ConfigError {
 public:
  explicit NonPositiveDistance(double epsilon);
};

/// Inclusive epsilon range used for slope fits.
struct FitWindow {
  double lo = 1e-3;
  double hi = 1e-1;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;  ///< log of the empirical rate constant
  double r_squared = 0.0;
};

/// Least squares on (log eps, log w2) over the points inside the window.
/// Throws InsufficientPoints (fewer than 3 inside) or NonPositiveDistance.
[[nodiscard]] SlopeFit fit_slope(std::span<const std::pair<double, double>> points,
                                 FitWindow window);

/// `count` logarithmically spaced values from lo to hi inclusive.
[[nodiscard]] std::vector<double> log_spaced(double lo, double hi, int count);

struct SweepConfig {
  std::vector<double> epsilons;
  ModelConfig base;  ///< pressure is ignored
  Grid grid;
  InitialDatum datum;
  TimeControls controls;
  FitWindow fit_window;
  bool allow_underresolved = false;
  int jobs = 0;  ///< 0: min(#runs, hardware threads)

  /// Throws ConfigError on an empty or non-increasing epsilon list or a fit
  /// window outside the epsilon range, ResolutionViolation when dx > min eps
  /// without the override.
  void validate() const;
};

struct ConvergenceEntry {
  double time;
  double epsilon;
  double w2;
};

struct TimeSlope {
  double time;
  SlopeFit fit;  ///< NaN fields when no fit is possible at this time
};

struct ConvergenceReport {
  std::vector<ConvergenceEntry> entries;  ///< ordered by (time, epsilon)
  std::vector<TimeSlope> slopes;          ///< ordered by time
  std::vector<Snapshot> local_snapshots;
  std::optional<double> boundary_contact_time;  ///< of the local run
  std::vector<std::string> warnings;

  /// (epsilon, w2) pairs at one snapshot time.
  [[nodiscard]] std::vector<std::pair<double, double>> at_time(double time) const;
};

/// Density threshold above which a boundary cell counts as reached.
inline constexpr double kContactThreshold = 1e-6;

[[nodiscard]] std::optional<double> boundary_contact_time(std::span<const Snapshot> snapshots,
                                                          double threshold = kContactThreshold);

/// Runs the local model and every eps model from the same sampled density and
/// tabulates W2(u_eps, u) at every snapshot time. Runs execute on a worker
/// pool; the result does not depend on scheduling.
[[nodiscard]] ConvergenceReport run_sweep(const SweepConfig& cfg);

/// As above with an explicit initial density (the datum field is ignored).
[[nodiscard]] ConvergenceReport run_sweep(const SweepConfig& cfg, const Density& initial);

/// `time,epsilon,w2`
void write_report_csv(std::ostream& out, const ConvergenceReport& report);
/// `time,slope,intercept,r2`
void write_fit_csv(std::ostream& out, const ConvergenceReport& report);
/// One block per time of `log_eps log_w2` rows, blocks separated by two blank
/// lines (gnuplot `index` layout).
void write_plot_data(std::ostream& out, const ConvergenceReport& report);

}  // namespace blobflow

#endif  // BLOBFLOW_HARNESS_HPP
