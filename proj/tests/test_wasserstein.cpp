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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "blobflow/error.hpp"
#include "blobflow/wasserstein.hpp"

using namespace blobflow;

namespace {

Density random_density(std::mt19937_64& rng, double r1, double r2, int n, double zero_prob) {
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

// Midpoint sampling of the inverse CDF, walking the cells directly without
// QuantileFunction.
class BruteQuantile {
 public:
  explicit BruteQuantile(const Density& rho) : rho_{rho} {}

  double operator()(double s) {
    const Grid& g = rho_.grid();
    while (cell_ + 1 < rho_.size() && (rho_[cell_] == 0.0 || acc_ + rho_[cell_] * g.dx() < s)) {
      acc_ += rho_[cell_] * g.dx();
      ++cell_;
    }
    return g.interface(cell_) + (s - acc_) / rho_[cell_];
  }

 private:
  const Density& rho_;
  int cell_ = 0;
  double acc_ = 0.0;
};

double brute_w2(const Density& a, const Density& b, int samples) {
  BruteQuantile qa(a);
  BruteQuantile qb(b);
  const double m = mass(a);
  double sum = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double s = m * (k + 0.5) / samples;
    const double d = qa(s) - qb(s);
    sum += d * d;
  }
  return std::sqrt(m * sum / samples);
}

}  // namespace

TEST_CASE("identical densities are at distance zero") {
  std::mt19937_64 rng(1);
  const Density a = random_density(rng, -1.0, 1.0, 50, 0.3);
  CHECK(w2(a, a) == 0.0);
}

TEST_CASE("translation by whole cells moves by the shift") {
  const Grid g = make_grid(0.0, 10.0, 100);
  std::vector<double> v(100, 0.0);
  for (int i = 10; i < 30; ++i) {
    v[i] = (0.5 + 0.01 * i) / 1.39;
  }
  std::vector<double> shifted(100, 0.0);
  std::rotate_copy(v.begin(), v.end() - 17, v.end(), shifted.begin());
  CHECK(w2(Density{g, v}, Density{g, shifted}) == doctest::Approx(1.7).epsilon(1e-13));
}

TEST_CASE("translation across different grids") {
  std::mt19937_64 rng(2);
  const Density a = random_density(rng, 0.0, 1.0, 20, 0.2);
  std::vector<double> v(a.values().begin(), a.values().end());
  const Density b{make_grid(0.3125, 1.3125, 20), v};
  CHECK(w2(a, b) == doctest::Approx(0.3125).epsilon(1e-13));
}

TEST_CASE("uniform on [0,1] versus uniform on [0,2] is 1/sqrt(3)") {
  const Density a{make_grid(0.0, 1.0, 7), std::vector<double>(7, 1.0)};
  const Density b{make_grid(0.0, 2.0, 13), std::vector<double>(13, 0.5)};
  CHECK(w2(a, b) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("refining a density does not move it") {
  std::mt19937_64 rng(3);
  const Density a = random_density(rng, -2.0, 2.0, 16, 0.4);
  std::vector<double> fine;
  for (double x : a.values()) {
    fine.push_back(x);
    fine.push_back(x);
  }
  CHECK(w2(a, Density{make_grid(-2.0, 2.0, 32), fine}) <= 1e-7);
}

TEST_CASE("unit uniform on [0,1] versus [2,3] is 2") {
  const Density a{make_grid(0.0, 1.0, 5), std::vector<double>(5, 1.0)};
  const Density b{make_grid(2.0, 3.0, 9), std::vector<double>(9, 1.0)};
  CHECK(w2(a, b) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(w2(a, b) == w2(b, a));
}

TEST_CASE("dilation about the barycenter") {
  // Dilating by k about the barycenter moves every quantile by (k - 1)(q - b),
  // so W2 = |1 - k| sqrt(second moment about b) for unit mass.
  const Grid g = make_grid(-5.0, 5.0, 200);
  const Density rho = sample_initial(datum::Gaussian{0.3, 0.8}, g);
  std::vector<double> v(rho.values().begin(), rho.values().end());
  const double m = mass(rho);
  for (double& x : v) {
    x /= m;
  }
  const Density unit{g, v};
  double bary = 0.0;
  for (int i = 0; i < 200; ++i) {
    bary += v[i] * g.dx() * g.center(i);
  }
  double moment = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double c = g.center(i) - bary;
    moment += v[i] * (g.dx() * c * c + g.dx() * g.dx() * g.dx() / 12.0);
  }
  for (double k : {0.5, 2.0, 3.0}) {
    std::vector<double> scaled(v);
    for (double& x : scaled) {
      x /= k;
    }
    const Density dilated{make_grid(bary + k * (-5.0 - bary), bary + k * (5.0 - bary), 200), scaled};
    CHECK(w2(unit, dilated) == doctest::Approx(std::abs(1.0 - k) * std::sqrt(moment)).epsilon(1e-10));
  }
  const Density narrow{make_grid(-1.0, 1.0, 10), std::vector<double>(10, 0.5)};
  const Density wide{make_grid(-2.0, 2.0, 10), std::vector<double>(10, 0.25)};
  CHECK(w2(narrow, wide) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("quantile of simple densities") {
  const auto q = quantile(Density{make_grid(0.0, 1.0, 2), {2.0, 0.0}});
  for (double s : {0.0, 0.3, 0.7, 1.0}) {
    CHECK(q(s) == doctest::Approx(s / 2.0));
  }
  const auto one = quantile(Density{make_grid(0.0, 1.0, 4), {0.0, 0.0, 4.0, 0.0}});
  CHECK(one(0.0) == doctest::Approx(0.5));
  CHECK(one(1.0) == doctest::Approx(0.75));
}

TEST_CASE("quantile function steps over empty cells") {
  const Grid g = make_grid(0.0, 4.0, 4);
  const Density rho{g, {0.5, 0.0, 0.0, 0.5}};
  const auto q = quantile(rho);
  CHECK(q.segments() == 2);
  CHECK(q.total_mass() == doctest::Approx(1.0));
  CHECK(q(0.25) == doctest::Approx(0.5));
  CHECK(q(0.75) == doctest::Approx(3.5));
  CHECK(q(0.5) == doctest::Approx(3.0));
}

TEST_CASE("triangle inequality on 10^3 random triples") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> cells(2, 60);
  std::uniform_real_distribution<double> offset(-1.0, 1.0);
  double worst = -1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double ra = offset(rng);
    const double rb = offset(rng);
    const double rc = offset(rng);
    const Density a = random_density(rng, ra, ra + 1.5 + offset(rng), cells(rng), 0.3);
    const Density b = random_density(rng, rb, rb + 1.5 + offset(rng), cells(rng), 0.3);
    const Density c = random_density(rng, rc, rc + 1.5 + offset(rng), cells(rng), 0.3);
    worst = std::max(worst, w2(a, c) - w2(a, b) - w2(b, c));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("agrees with brute-force quantile sampling on 100 random instances") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> cells(2, 16);
  std::uniform_real_distribution<double> offset(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double ra = offset(rng);
    const double rb = offset(rng);
    const Density a = random_density(rng, ra, ra + 1.5 + offset(rng), cells(rng), 0.25);
    const Density b = random_density(rng, rb, rb + 1.5 + offset(rng), cells(rng), 0.25);
    worst = std::max(worst, std::abs(w2(a, b) - brute_w2(a, b, 1000000)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("metric errors") {
  const Grid g = make_grid(0.0, 1.0, 4);
  const Density a{g, {1.0, 1.0, 1.0, 1.0}};
  const Density b{g, {1.0, 1.0, 1.0, 1.1}};
  CHECK_THROWS_AS((void)w2(a, b), MassMismatch);
  CHECK_THROWS_AS((void)w2(a, Density{g}), ZeroMass);
  CHECK_THROWS_AS((void)quantile(Density{g}), ZeroMass);
  const Density c{g, {1.0, 1.0, 1.0, 1.0 + 1e-9}};
  CHECK_NOTHROW((void)w2(a, c));
}
