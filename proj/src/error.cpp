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

#include "blobflow/error.hpp"

#include <string>

#include "blobflow/io.hpp"

namespace blobflow {

NegativeDensity::NegativeDensity(int cell, double value)
    : SolverError("negative density " + format_real(value) + " in cell " + std::to_string(cell)),
      cell_{cell},
      value_{value} {}

ResolutionViolation::ResolutionViolation(double dx, double min_eps)
    : Error(ErrorKind::kResolution, "cell size dx=" + format_real(dx) +
                                        " exceeds the smallest epsilon " + format_real(min_eps) +
                                        "; refine the grid or allow under-resolution"),
      dx_{dx},
      min_eps_{min_eps} {}

MassMismatch::MassMismatch(double mass_a, double mass_b)
    : Error(ErrorKind::kMetric,
            "mass mismatch: " + format_real(mass_a) + " vs " + format_real(mass_b)) {}

}  // namespace blobflow
