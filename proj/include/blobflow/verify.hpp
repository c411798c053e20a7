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

#ifndef BLOBFLOW_VERIFY_HPP
#define BLOBFLOW_VERIFY_HPP

#include <string>
#include <vector>

#include "blobflow/model.hpp"

namespace blobflow::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Barenblatt profile u(t,x) = B(t/2, x) with
/// B(s,x) = s^{-1/3} (c - x^2 / (12 s^{2/3}))_+, an exact solution of the
/// local equation.
struct Barenblatt {
  double c = 1.0 / 3.0;

  [[nodiscard]] double operator()(double t, double x) const;
  /// Exact average over [lo, hi].
  [[nodiscard]] double average(double t, double lo, double hi) const;
};

/// Local solver from t=1 to t=2 on (-3,3) with successively refined grids; L1
/// order >= 1.3 between each pair for second-order and >= 0.8 for first-order
/// reconstruction.
[[nodiscard]] CheckResult barenblatt_order(FaultInjection fault = FaultInjection::kNone,
                                           const std::vector<int>& cells = {128, 256, 512});

/// Confined nonlocal run from a unit-mass uniform state approaches the
/// steady profile (C - x^2/2)_+, C = (3/2)^{2/3} / 2.
[[nodiscard]] CheckResult fokker_planck_steady_state(FaultInjection fault = FaultInjection::kNone);

/// Dense and scan convolutions agree; periodic rows sum to one.
[[nodiscard]] CheckResult kernel_equivalence();

/// Mass conservation, nonnegativity, maximum principle and energy decay
/// over a set of short runs.
[[nodiscard]] CheckResult structural_properties(FaultInjection fault = FaultInjection::kNone);

[[nodiscard]] std::vector<CheckResult> run_all(FaultInjection fault = FaultInjection::kNone);

}  // namespace blobflow::verify

#endif  // BLOBFLOW_VERIFY_HPP
