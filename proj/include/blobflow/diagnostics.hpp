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

#ifndef BLOBFLOW_DIAGNOSTICS_HPP
#define BLOBFLOW_DIAGNOSTICS_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "blobflow/grid.hpp"
#include "blobflow/model.hpp"

namespace blobflow {

struct DiagnosticsRecord {
  double time = 0.0;
  double mass = 0.0;
  double linf = 0.0;
  double energy_local = 0.0;     ///< E = 1/2 int u^2
  double energy_nonlocal = 0.0;  ///< E_eps = 1/2 int (W_eps * u) u
  double entropy = 0.0;          ///< int u log u
  double second_moment = 0.0;    ///< int u x^2
  double energy_gap = 0.0;       ///< |E_eps - E|
};

[[nodiscard]] double energy_local(const Density& rho);

[[nodiscard]] double energy_nonlocal(const Density& rho, const KernelParams& kernel,
                                     BoundaryCondition bc,
                                     ConvolutionMode mode = ConvolutionMode::kFastScan);

struct EntropyMoment {
  double entropy = 0.0;
  double second_moment = 0.0;
};

/// Cells below 1e-300 count as zero in the entropy.
[[nodiscard]] EntropyMoment entropy_and_moment(const Density& rho);

/// For a local model the nonlocal energy is the identity-kernel limit, so
/// E_eps = E and the gap is zero.
[[nodiscard]] DiagnosticsRecord record(double time, const Density& rho, const ModelConfig& cfg);

/// Column order: time,mass,linf,E,Eeps,entropy,m2,gap.
void write_diagnostics(std::ostream& out, std::span<const DiagnosticsRecord> records);

}  // namespace blobflow

#endif  // BLOBFLOW_DIAGNOSTICS_HPP
