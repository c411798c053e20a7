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

#include "blobflow/wasserstein.hpp"

#include <algorithm>
#include <cmath>

#include "blobflow/error.hpp"

namespace blobflow {

QuantileFunction quantile(const Density& rho) {
  const Grid& g = rho.grid();
  QuantileFunction q;
  q.breaks_.push_back(0.0);
  double cumulative = 0.0;
  for (int i = 0; i < rho.size(); ++i) {
    if (rho[i] > 0.0) {
      cumulative += rho[i] * g.dx();
      q.breaks_.push_back(cumulative);
      q.left_.push_back(g.interface(i));
      q.right_.push_back(g.interface(i + 1));
    }
  }
  if (q.left_.empty()) {
    throw ZeroMass();
  }
  return q;
}

double QuantileFunction::operator()(double s) const {
  const auto it = std::upper_bound(breaks_.begin() + 1, breaks_.end() - 1, s);
  const auto k = static_cast<std::size_t>(it - breaks_.begin() - 1);
  const double frac = (s - breaks_[k]) / (breaks_[k + 1] - breaks_[k]);
  return left_[k] + std::clamp(frac, 0.0, 1.0) * (right_[k] - left_[k]);
}

double w2(const QuantileFunction& a, const QuantileFunction& b) {
  const double ma = a.total_mass();
  const double mb = b.total_mass();
  if (std::abs(ma - mb) > kMassTolerance * std::max(ma, mb)) {
    throw MassMismatch(ma, mb);
  }
  const double total = std::min(ma, mb);

  // Walk the merged breakpoints. On [s, next] both quantiles are affine, so
  // the squared difference d(s)^2 integrates to h (d0^2 + d0 d1 + d1^2) / 3.
  const auto& ba = a.breaks();
  const auto& bb = b.breaks();
  auto eval = [](const QuantileFunction& q, std::size_t k, double s) {
    const double lo = q.breaks()[k];
    const double hi = q.breaks()[k + 1];
    return q.left()[k] + (s - lo) / (hi - lo) * (q.right()[k] - q.left()[k]);
  };
  std::size_t ka = 0;
  std::size_t kb = 0;
  double s = 0.0;
  double sum = 0.0;
  while (s < total) {
    const double next = std::min({ba[ka + 1], bb[kb + 1], total});
    const double h = next - s;
    if (h > 0.0) {
      const double d0 = eval(a, ka, s) - eval(b, kb, s);
      const double d1 = eval(a, ka, next) - eval(b, kb, next);
      sum += h * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0;
    }
    s = next;
    if (ba[ka + 1] <= s && ka + 1 < a.segments()) {
      ++ka;
    }
    if (bb[kb + 1] <= s && kb + 1 < b.segments()) {
      ++kb;
    }
    if (s >= total) {
      break;
    }
  }
  return std::sqrt(std::max(sum, 0.0));
}

double w2(const Density& a, const Density& b) { return w2(quantile(a), quantile(b)); }

}  // namespace blobflow
