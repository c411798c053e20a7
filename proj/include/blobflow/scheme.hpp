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

#ifndef BLOBFLOW_SCHEME_HPP
#define BLOBFLOW_SCHEME_HPP

#include <optional>
#include <string>
#include <span>
#include <vector>

#include "blobflow/diagnostics.hpp"
#include "blobflow/error.hpp"
#include "blobflow/grid.hpp"
#include "blobflow/io.hpp"
#include "blobflow/kernel.hpp"
#include "blobflow/model.hpp"

namespace blobflow {

/// Generalized minmod: the smallest-magnitude argument when all three share a
/// strict sign, zero otherwise.
[[nodiscard]] constexpr double minmod(double a, double b, double c) noexcept {
  if (a > 0.0 && b > 0.0 && c > 0.0) {
    double m = a < b ? a : b;
    return m < c ? m : c;
  }
  if (a < 0.0 && b < 0.0 && c < 0.0) {
    double m = a > b ? a : b;
    return m > c ? m : c;
  }
  return 0.0;
}

/// Limited slopes. NoFlux duplicates the boundary cell as its own ghost
/// neighbour, Periodic wraps; order 1 gives all zeros.
[[nodiscard]] std::vector<double> slopes(const Density& rho, double theta, BoundaryCondition bc,
                                         int order = 2);

struct Reconstruction {
  std::vector<double> right;  ///< value at x_{i+1/2} from inside cell i
  std::vector<double> left;   ///< value at x_{i-1/2} from inside cell i
};

[[nodiscard]] Reconstruction reconstruct(const Density& rho, std::span<const double> slopes);

/// Semi-discrete finite-volume operator with cached kernel coefficients and
/// scratch buffers. One instance per run; not thread-safe.
class Solver {
 public:
  Solver(const Grid& grid, ModelConfig cfg);

  [[nodiscard]] const Grid& grid() const noexcept { return grid_; }
  [[nodiscard]] const ModelConfig& config() const noexcept { return cfg_; }

  /// du_i/dt = (F_{i+1/2} - F_{i-1/2}) / dx with F = u w, w = dc/dx (+ x with
  /// drift). The flux takes its density from the side the material comes
  /// from: the material velocity is -w, so F = w^+ u^L_{i+1} + w^- u^R_i.
  void rhs(std::span<const double> u, std::span<double> out);

  /// Largest |w| over the interfaces of the last rhs evaluation.
  [[nodiscard]] double last_max_speed() const noexcept { return last_max_speed_; }

  /// min(cfl dx / max(|w|, dx), cfl (dx^2 + 4 eps^2) / (2 max u)) for state u,
  /// eps = 0 for the local model. The second term bounds the stiffest mode of
  /// the linearized operator, u k^2 / (1 + eps^2 k^2) at the grid frequency.
  [[nodiscard]] double stable_dt(std::span<const double> u, double cfl);

  /// One two-stage SSP Runge-Kutta step of size dt in place. Values in
  /// (-1e-14, 1e-200) are reset to zero after each stage; lower values raise
  /// NegativeDensity, NaN/inf raise NonFiniteState.
  void advance(std::vector<double>& u, double dt);

 private:
  void interface_speeds(std::span<const double> u);

  Grid grid_;
  ModelConfig cfg_;
  std::optional<ExponentialScan> scan_;
  std::vector<double> dense_;
  std::vector<double> pressure_;
  std::vector<double> speed_;
  std::vector<double> slope_;
  std::vector<double> flux_;
  std::vector<double> stage_;
  std::vector<double> k1_;
  double last_max_speed_ = 0.0;
  double width_ = 0.0;
};

[[nodiscard]] std::vector<double> rhs(const Density& rho, const ModelConfig& cfg);

struct StepResult {
  Density state;
  double time;
};

/// Advances from t by one step: the fixed step or the adaptive step, shortened
/// so as not to pass `t_stop`. A fixed step larger than the stability bound is
/// split into equal sub-steps that each satisfy it.
[[nodiscard]] StepResult step(const Density& state, double t, const ModelConfig& cfg,
                              const TimeControls& controls, double t_stop);

/// A solver error annotated with the last accepted state, for post-mortem dumps.
class SimulationFailure : public SolverError {
 public:
  SimulationFailure(const std::string& what, double time, Density last_state)
      : SolverError(what), time_{time}, last_state_{std::move(last_state)} {}

  [[nodiscard]] double time() const noexcept { return time_; }
  [[nodiscard]] const Density& last_state() const noexcept { return last_state_; }

 private:
  double time_;
  Density last_state_;
};

struct SimulationResult {
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
  long long steps = 0;
};

/// Runs from the given initial density and returns a snapshot (plus its
/// diagnostics) at every requested time; t = 0 is always included. Solver
/// errors are rethrown as SimulationFailure.
[[nodiscard]] SimulationResult simulate(const Density& initial, const ModelConfig& cfg,
                                        const TimeControls& controls);

[[nodiscard]] SimulationResult simulate(const InitialDatum& datum, const Grid& grid,
                                        const ModelConfig& cfg, const TimeControls& controls);

}  // namespace blobflow

#endif  // BLOBFLOW_SCHEME_HPP
