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

#include "blobflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "blobflow/io.hpp"

namespace blobflow {

double energy_local(const Density& rho) {
  double sum = 0.0;
  for (double u : rho.values()) {
    sum += u * u;
  }
  return 0.5 * sum * rho.grid().dx();
}

double energy_nonlocal(const Density& rho, const KernelParams& kernel, BoundaryCondition bc,
                       ConvolutionMode mode) {
  const auto c = convolve(rho, kernel, bc, mode);
  double sum = 0.0;
  for (int i = 0; i < rho.size(); ++i) {
    sum += rho[i] * c[i];
  }
  return 0.5 * sum * rho.grid().dx();
}

EntropyMoment entropy_and_moment(const Density& rho) {
  const Grid& g = rho.grid();
  EntropyMoment out;
  for (int i = 0; i < rho.size(); ++i) {
    const double u = rho[i];
    if (u > 1e-300) {
      out.entropy += u * std::log(u);
    }
    const double x = g.center(i);
    out.second_moment += u * x * x;
  }
  out.entropy *= g.dx();
  out.second_moment *= g.dx();
  return out;
}

DiagnosticsRecord record(double time, const Density& rho, const ModelConfig& cfg) {
  DiagnosticsRecord r;
  r.time = time;
  r.mass = mass(rho);
  r.linf = rho.values().empty() ? 0.0 : *std::max_element(rho.values().begin(), rho.values().end());
  r.energy_local = energy_local(rho);
  if (const auto* kernel = std::get_if<KernelParams>(&cfg.pressure)) {
    r.energy_nonlocal = energy_nonlocal(rho, *kernel, cfg.bc, ConvolutionMode::kFastScan);
  } else {
    r.energy_nonlocal = r.energy_local;
  }
  r.energy_gap = std::abs(r.energy_nonlocal - r.energy_local);
  const auto em = entropy_and_moment(rho);
  r.entropy = em.entropy;
  r.second_moment = em.second_moment;
  return r;
}

void write_diagnostics(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  out << "time,mass,linf,E,Eeps,entropy,m2,gap\n";
  for (const auto& r : records) {
    out << format_real(r.time) << ',' << format_real(r.mass) << ',' << format_real(r.linf) << ','
        << format_real(r.energy_local) << ',' << format_real(r.energy_nonlocal) << ','
        << format_real(r.entropy) << ',' << format_real(r.second_moment) << ','
        << format_real(r.energy_gap) << '\n';
  }
}

}  // namespace blobflow
