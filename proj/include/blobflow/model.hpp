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

#ifndef BLOBFLOW_MODEL_HPP
#define BLOBFLOW_MODEL_HPP

#include <variant>
#include <vector>

#include "blobflow/kernel.hpp"

namespace blobflow {

/// Deliberate scheme defects used by the self-verification suite to prove its
/// checks can fail. Never set outside of tests.
enum class FaultInjection { kNone, kFlipFluxSign, kLeakBoundaryFlux };

/// Everything defining one PDE run:
///   du/dt = d/dx( u d/dx (W_eps * u) ) [+ d/dx( x u ) with drift].
struct ModelConfig {
  Pressure pressure = Local{};
  bool drift = false;
  BoundaryCondition bc = BoundaryCondition::kNoFlux;
  int order = 2;
  double theta = 1.5;
  ConvolutionMode mode = ConvolutionMode::kFastScan;
  FaultInjection fault = FaultInjection::kNone;

  /// Throws ConfigError on theta outside [1,2], order not 1 or 2, or
  /// periodic boundaries combined with drift.
  void validate() const;

  [[nodiscard]] bool is_local() const noexcept { return std::holds_alternative<Local>(pressure); }
};

struct FixedStep {
  double dt = 0.01;
};

struct AdaptiveStep {
  double cfl = 0.4;
};

/// Courant number used to bound each sub-step of a fixed nominal step.
inline constexpr double kDefaultCfl = 0.4;

struct TimeControls {
  std::variant<FixedStep, AdaptiveStep> mode = FixedStep{};
  double t_end = 0.0;
  std::vector<double> snapshot_times{0.0};

  /// Throws ConfigError on dt <= 0, cfl outside (0,1), negative t_end or
  /// snapshot times that are unsorted or outside [0, t_end].
  void validate() const;
};

}  // namespace blobflow

#endif  // BLOBFLOW_MODEL_HPP
