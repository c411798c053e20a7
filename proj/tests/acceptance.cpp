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

// End-to-end acceptance suite. Prints one [PASS]/[FAIL] line per criterion
// and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "blobflow/diagnostics.hpp"
#include "blobflow/harness.hpp"
#include "blobflow/kernel.hpp"
#include "blobflow/scheme.hpp"
#include "blobflow/verify.hpp"
#include "blobflow/wasserstein.hpp"

using namespace blobflow;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

int failures = 0;

void criterion(const char* name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = Outcome{false, std::string("error: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.passed) {
    ++failures;
  }
  std::printf("[%s] %s (%.1f s): %s\n", o.passed ? "PASS" : "FAIL", name, secs, o.detail.c_str());
  std::fflush(stdout);
}

double slope(const ConvergenceReport& r, double t, FitWindow w) {
  return fit_slope(r.at_time(t), w).slope;
}

// Sweeps shared by the rate criteria and the envelope criterion.
ConvergenceReport gaussian_report;
ConvergenceReport parabola_report;
bool gaussian_done = false;
bool parabola_done = false;

constexpr double kParabolaEarly = 1.0;
constexpr double kParabolaLate = 6.0;

Outcome gaussian_sweep() {
  const SweepConfig cfg{log_spaced(5e-3, 5.0, 12),
                        ModelConfig{},
                        make_grid(-10.0, 10.0, 4096),
                        datum::Gaussian{},
                        TimeControls{FixedStep{0.01}, 1.0, {0.0, 0.5, 1.0}},
                        FitWindow{5e-3, 1e-1},
                        false,
                        0};
  gaussian_report = run_sweep(cfg);
  gaussian_done = true;
  std::ostringstream d;
  bool ok = true;
  for (double t : {0.5, 1.0}) {
    const double small = slope(gaussian_report, t, FitWindow{5e-3, 1e-1});
    const double large = slope(gaussian_report, t, FitWindow{1.0, 5.0});
    const bool small_ok = std::abs(small - 1.0) <= 0.25;
    const bool large_ok = large < 0.5;
    ok = ok && small_ok && large_ok;
    d << "t=" << t << ": slope on [5e-3,0.1] " << fmt(small) << (small_ok ? "" : " (need 1 +- 0.25)")
      << ", slope on [1,5] " << fmt(large) << (large_ok ? "" : " (need < 0.5)") << "; ";
  }
  return Outcome{ok, d.str()};
}

Outcome parabola_noflux() {
  const std::vector<double> times{0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, kParabolaLate};
  const SweepConfig cfg{log_spaced(6e-3, 5.0, 12),
                        ModelConfig{},
                        make_grid(-3.0, 3.0, 1024),
                        datum::Parabola{},
                        TimeControls{FixedStep{0.01}, kParabolaLate, times},
                        FitWindow{6e-3, 1e-1},
                        false,
                        0};
  parabola_report = run_sweep(cfg);
  parabola_done = true;
  const auto contact = parabola_report.boundary_contact_time;
  if (!contact) {
    return Outcome{false, "the local solution never reached the boundary"};
  }
  std::ostringstream d;
  d << "contact detected at t=" << *contact << "; ";
  bool ok = kParabolaEarly < *contact && kParabolaLate > *contact;
  if (!ok) {
    d << "early/late times do not bracket contact; ";
  }
  const double early = slope(parabola_report, kParabolaEarly, cfg.fit_window);
  const double late = slope(parabola_report, kParabolaLate, cfg.fit_window);
  const bool early_ok = std::abs(early - 1.0) <= 0.25;
  const bool late_ok = std::abs(late - 0.5) <= 0.2;
  ok = ok && early_ok && late_ok;
  d << "t=" << kParabolaEarly << " slope " << fmt(early) << (early_ok ? "" : " (need 1 +- 0.25)")
    << ", t=" << kParabolaLate << " slope " << fmt(late) << (late_ok ? "" : " (need 0.5 +- 0.2)");
  for (const auto& s : parabola_report.slopes) {
    if (s.time > 0.0) {
      d << (s.time == parabola_report.slopes[1].time ? "; all slopes:" : "") << " t=" << s.time
        << ":" << fmt(s.fit.slope);
    }
  }
  return Outcome{ok, d.str()};
}

// W2 <= K sqrt(eps) with K the largest observed ratio. The trend check asks
// that W2 / sqrt(eps) never grows by more than 3x as eps decreases.
Outcome sqrt_envelope() {
  if (!gaussian_done || !parabola_done) {
    return Outcome{false, "the sweeps it depends on did not complete"};
  }
  double k = 0.0;
  double worst_growth = 0.0;
  std::string worst_at;
  for (const auto* report : {&gaussian_report, &parabola_report}) {
    for (const auto& s : report->slopes) {
      if (s.time == 0.0) {
        continue;
      }
      const auto points = report->at_time(s.time);
      for (std::size_t a = 0; a < points.size(); ++a) {
        const double ra = points[a].second / std::sqrt(points[a].first);
        k = std::max(k, ra);
        for (std::size_t b = a + 1; b < points.size(); ++b) {
          const double rb = points[b].second / std::sqrt(points[b].first);
          if (rb > 0.0 && ra / rb > worst_growth) {
            worst_growth = ra / rb;
            worst_at = (report == &gaussian_report ? "gaussian" : "parabola") +
                       std::string(" t=") + fmt(s.time) + " eps=" + fmt(points[a].first);
          }
        }
      }
    }
  }
  const bool ok = std::isfinite(k) && k > 0.0 && worst_growth <= 3.0;
  return Outcome{ok, "K = " + fmt(k) + ", largest growth of W2/sqrt(eps) toward small eps " +
                         fmt(worst_growth) + " at " + worst_at + " (need <= 3)"};
}

Outcome barenblatt() {
  const auto r = verify::barenblatt_order(FaultInjection::kNone, {256, 512, 1024});
  return Outcome{r.passed, r.detail};
}

Outcome fokker_planck() {
  const Grid grid = make_grid(-20.0, 20.0, 4096);
  ModelConfig cfg;
  cfg.pressure = KernelParams{1e-2};
  cfg.drift = true;
  const auto run =
      simulate(datum::UniformPlusConstant{0.0}, grid, cfg, TimeControls{FixedStep{0.01}, 10.0, {10.0}});
  const double level = 0.5 * std::pow(1.5, 2.0 / 3.0);
  const double radius = std::sqrt(2.0 * level);
  std::vector<double> steady(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    const double a = std::max(grid.interface(i), -radius);
    const double b = std::min(grid.interface(i + 1), radius);
    steady[i] = b > a ? (level * (b - a) - (b * b * b - a * a * a) / 6.0) / grid.dx() : 0.0;
  }
  const double dist = w2(run.snapshots.back().density, Density{grid, steady});
  return Outcome{dist <= 5e-2, "W2(u(10), steady state) = " + fmt(dist) + " (need <= 0.05), " +
                                   std::to_string(run.steps) + " steps"};
}

Density random_unit_density(std::mt19937_64& rng, double r1, double r2, int n, double zero_prob) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double& x : v) {
    x = uni(rng) < zero_prob ? 0.0 : uni(rng);
    total += x;
  }
  if (total == 0.0) {
    v[0] = 1.0;
    total = 1.0;
  }
  const Grid g = make_grid(r1, r2, n);
  for (double& x : v) {
    x /= total * g.dx();
  }
  return Density{g, v};
}

double sampled_w2(const Density& a, const Density& b, long samples) {
  struct Walker {
    const Density& rho;
    int cell = 0;
    double acc = 0.0;
    double operator()(double s) {
      const double dx = rho.grid().dx();
      while (cell + 1 < rho.size() && (rho[cell] == 0.0 || acc + rho[cell] * dx < s)) {
        acc += rho[cell] * dx;
        ++cell;
      }
      return rho.grid().interface(cell) + (s - acc) / rho[cell];
    }
  };
  Walker qa{a};
  Walker qb{b};
  const double m = mass(a);
  double sum = 0.0;
  for (long k = 0; k < samples; ++k) {
    const double s = m * (static_cast<double>(k) + 0.5) / static_cast<double>(samples);
    const double d = qa(s) - qb(s);
    sum += d * d;
  }
  return std::sqrt(m * sum / static_cast<double>(samples));
}

Outcome metric() {
  std::ostringstream d;
  bool ok = true;

  const Density box{make_grid(0.0, 1.0, 10), std::vector<double>(10, 1.0)};
  const Density moved{make_grid(2.0, 3.0, 7), std::vector<double>(7, 1.0)};
  const double shift = w2(box, moved);
  ok = ok && std::abs(shift - 2.0) <= 1e-13;
  d << "translation " << fmt(shift) << "; ";

  const Density wide{make_grid(0.0, 2.0, 10), std::vector<double>(10, 0.5)};
  const double third = w2(box, wide);
  ok = ok && std::abs(third - 1.0 / std::sqrt(3.0)) <= 1e-13;
  d << "uniform [0,1] vs [0,2] " << fmt(third) << "; ";

  std::mt19937_64 rng(8675309);
  std::uniform_int_distribution<int> cells(2, 64);
  std::uniform_real_distribution<double> offset(-1.0, 1.0);
  double slack = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Density> t;
    for (int k = 0; k < 3; ++k) {
      const double r1 = offset(rng);
      t.push_back(random_unit_density(rng, r1, r1 + 1.5 + offset(rng), cells(rng), 0.3));
    }
    slack = std::max(slack, w2(t[0], t[2]) - w2(t[0], t[1]) - w2(t[1], t[2]));
  }
  ok = ok && slack <= 1e-12;
  d << "triangle inequality worst excess " << fmt(slack) << "; ";

  std::uniform_int_distribution<int> small(2, 16);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double ra = offset(rng);
    const double rb = offset(rng);
    const Density a = random_unit_density(rng, ra, ra + 1.5 + offset(rng), small(rng), 0.25);
    const Density b = random_unit_density(rng, rb, rb + 1.5 + offset(rng), small(rng), 0.25);
    worst = std::max(worst, std::abs(w2(a, b) - sampled_w2(a, b, 10000000)));
  }
  ok = ok && worst <= 1e-6;
  d << "brute-force quantile sampling max deviation " << fmt(worst) << " (need <= 1e-6)";
  return Outcome{ok, d.str()};
}

Outcome kernel_equivalence() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double worst = 0.0;
  double worst_row = 0.0;
  int cases = 0;
  for (int n : {2, 8, 37, 64, 256, 1000, 4096}) {
    for (double ratio : {1e-3, 0.1, 1.0, 10.0, 100.0, 1e3}) {
      const Grid g = make_grid(-1.0, 1.0 + uni(rng), n);
      const KernelParams k{ratio * g.dx()};
      for (auto bc : {BoundaryCondition::kNoFlux, BoundaryCondition::kPeriodic}) {
        for (int rep = 0; rep < 3; ++rep) {
          std::vector<double> v(static_cast<std::size_t>(n));
          for (double& x : v) {
            x = uni(rng) < 0.2 ? 0.0 : uni(rng);
          }
          v[0] += 1e-3;
          const Density rho{g, v};
          const auto dense = convolve(rho, k, bc, ConvolutionMode::kDense);
          const auto scan = convolve(rho, k, bc, ConvolutionMode::kFastScan);
          double diff = 0.0;
          double norm = 0.0;
          for (int i = 0; i < n; ++i) {
            diff = std::max(diff, std::abs(dense[i] - scan[i]));
            norm = std::max(norm, std::abs(dense[i]));
          }
          worst = std::max(worst, diff / norm);
          ++cases;
        }
        if (bc == BoundaryCondition::kPeriodic) {
          const Density ones{g, std::vector<double>(static_cast<std::size_t>(n), 1.0)};
          for (auto mode : {ConvolutionMode::kDense, ConvolutionMode::kFastScan}) {
            for (double c : convolve(ones, k, bc, mode)) {
              worst_row = std::max(worst_row, std::abs(c - 1.0));
            }
          }
        }
      }
    }
  }
  const bool ok = worst <= 1e-10 && worst_row <= 1e-12;
  return Outcome{ok, std::to_string(cases) + " cases, max relative discrepancy " + fmt(worst) +
                         " (need <= 1e-10), periodic row-sum error " + fmt(worst_row) +
                         " (need <= 1e-12)"};
}

Outcome structural() {
  const auto runs = verify::structural_properties();
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::uniform_int_distribution<int> cells(2, 128);
  int violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = cells(rng);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) {
      x = uni(rng) < 0.2 ? 0.0 : uni(rng);
    }
    const Density rho{make_grid(-1.0, 1.0, n), v};
    const KernelParams k{std::exp(std::log(1e-3) + uni(rng) * std::log(1e4))};
    const auto bc = trial % 2 == 0 ? BoundaryCondition::kNoFlux : BoundaryCondition::kPeriodic;
    const double e = energy_local(rho);
    const double ee = energy_nonlocal(rho, k, bc);
    worst = std::max(worst, (ee - e) / std::max(e, 1e-300));
    if (ee > e * (1.0 + 1e-12)) {
      ++violations;
    }
  }
  const bool ok = runs.passed && violations == 0;
  return Outcome{ok, runs.detail + "Eeps <= E on 10^4 random densities: " +
                         std::to_string(violations) + " violations (largest relative excess " +
                         fmt(worst) + ")"};
}

double max_jump(const Density& rho) {
  double m = 0.0;
  for (int i = 0; i + 1 < rho.size(); ++i) {
    m = std::max(m, std::abs(rho[i + 1] - rho[i]));
  }
  return m;
}

Outcome regularity() {
  const Grid grid = make_grid(-10.0, 10.0, 2048);
  const TimeControls controls{FixedStep{0.01}, 1.0, {1.0}};
  ModelConfig local;
  local.drift = true;
  ModelConfig blob = local;
  blob.pressure = KernelParams{1.0};
  std::ostringstream d;
  bool ok = true;
  for (std::uint64_t seed : {2024u, 1u, 99u}) {
    const datum::RandomPiecewise start{seed};
    const double local_jump =
        max_jump(simulate(start, grid, local, controls).snapshots.back().density);
    const double blob_jump =
        max_jump(simulate(start, grid, blob, controls).snapshots.back().density);
    const double ratio = blob_jump / local_jump;
    ok = ok && ratio >= 5.0;
    d << "seed " << seed << ": max jump local " << fmt(local_jump) << ", eps=1 " << fmt(blob_jump)
      << ", ratio " << fmt(ratio) << "; ";
  }
  d << "(need >= 5)";
  return Outcome{ok, d.str()};
}

}  // namespace

int main() {
  criterion("gaussian sweep rates", gaussian_sweep);
  criterion("no-flux parabola rates around boundary contact", parabola_noflux);
  criterion("sqrt(eps) envelope", sqrt_envelope);
  criterion("barenblatt order", barenblatt);
  criterion("fokker-planck steady state", fokker_planck);
  criterion("metric exactness", metric);
  criterion("kernel equivalence", kernel_equivalence);
  criterion("structural properties", structural);
  criterion("regularity of random data", regularity);
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
