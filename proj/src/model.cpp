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

#include "blobflow/model.hpp"

#include <cmath>
#include <string>

#include "blobflow/error.hpp"
#include "blobflow/io.hpp"

namespace blobflow {

void ModelConfig::validate() const {
  if (!(theta >= 1.0 && theta <= 2.0)) {
    throw ConfigError("theta must lie in [1, 2], got " + format_real(theta));
  }
  if (order != 1 && order != 2) {
    throw ConfigError("reconstruction order must be 1 or 2, got " + std::to_string(order));
  }
  if (drift && bc == BoundaryCondition::kPeriodic) {
    throw ConfigError(
        "drift is not supported with periodic boundaries: the drift velocity x jumps across the "
        "periodic seam");
  }
}

void TimeControls::validate() const {
  if (const auto* fixed = std::get_if<FixedStep>(&mode)) {
    if (!(fixed->dt > 0.0) || !std::isfinite(fixed->dt)) {
      throw ConfigError("dt must be positive, got " + format_real(fixed->dt));
    }
  } else {
    const double cfl = std::get<AdaptiveStep>(mode).cfl;
    if (!(cfl > 0.0 && cfl < 1.0)) {
      throw ConfigError("cfl must lie in (0, 1), got " + format_real(cfl));
    }
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw ConfigError("t_end must be nonnegative, got " + format_real(t_end));
  }
  double previous = -1.0;
  for (double t : snapshot_times) {
    if (!(t >= 0.0 && t <= t_end)) {
      throw ConfigError("snapshot time " + format_real(t) + " outside [0, t_end]");
    }
    if (!(t > previous)) {
      throw ConfigError("snapshot times must be strictly increasing");
    }
    previous = t;
  }
}

}  // namespace blobflow
