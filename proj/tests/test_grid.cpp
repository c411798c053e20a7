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

#include <cmath>
#include <limits>

#include "blobflow/error.hpp"
#include "blobflow/grid.hpp"

using namespace blobflow;

TEST_CASE("make_grid validates its arguments") {
  CHECK_THROWS_AS((void)make_grid(1.0, 1.0, 10), ConfigError);
  CHECK_THROWS_AS((void)make_grid(2.0, 1.0, 10), ConfigError);
  CHECK_THROWS_AS((void)make_grid(0.0, 1.0, 1), ConfigError);
  CHECK_THROWS_AS((void)make_grid(0.0, std::numeric_limits<double>::infinity(), 10), ConfigError);
  CHECK_THROWS_AS((void)make_grid(std::nan(""), 1.0, 10), ConfigError);
}

TEST_CASE("cell centers sit midway between interfaces") {
  const Grid g = make_grid(-3.0, 3.0, 12);
  CHECK(g.dx() == doctest::Approx(0.5));
  CHECK(g.center(0) == doctest::Approx(-2.75));
  CHECK(g.center(11) == doctest::Approx(2.75));
  CHECK(g.interface(0) == -3.0);
  CHECK(g.interface(12) == 3.0);
  const auto c = g.centers();
  REQUIRE(c.size() == 12);
  for (int i = 0; i < 12; ++i) {
    CHECK(c[i] == doctest::Approx(0.5 * (g.interface(i) + g.interface(i + 1))));
  }
}

TEST_CASE("density rejects bad values") {
  const Grid g = make_grid(0.0, 1.0, 3);
  CHECK_THROWS_AS(Density(g, {1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(Density(g, {1.0, -1e-3, 0.0}), ConfigError);
  CHECK_THROWS_AS(Density(g, {1.0, std::nan(""), 0.0}), ConfigError);
  CHECK_NOTHROW(Density(g, {0.0, 0.0, 5.0}));
  CHECK(mass(Density(g)) == 0.0);
}

TEST_CASE("sampled parabola carries mass 4/3") {
  // Midpoint sampling of (1 - x^2)_+ on a grid aligned with its support: the
  // mass defect is dx^2/12 per unit length of support, i.e. 2 dx^2 / 12.
  const Grid g = make_grid(-3.0, 3.0, 600);
  const Density rho = sample_initial(datum::Parabola{}, g);
  CHECK(mass(rho) == doctest::Approx(4.0 / 3.0 + 2.0 * g.dx() * g.dx() / 12.0).epsilon(1e-12));
}

TEST_CASE("gaussian datum has unit mass on a wide grid") {
  const Density rho = sample_initial(datum::Gaussian{}, make_grid(-10.0, 10.0, 4096));
  CHECK(mass(rho) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("uniform datum is 1/|domain| plus the offset") {
  const Grid g = make_grid(-20.0, 20.0, 64);
  const Density rho = sample_initial(parse_datum("uniform+10"), g);
  for (double u : rho.values()) {
    CHECK(u == doctest::Approx(10.025));
  }
  CHECK(mass(sample_initial(parse_datum("uniform"), g)) == doctest::Approx(1.0));
}

TEST_CASE("random datum is counter based") {
  const Density coarse = sample_initial(datum::RandomPiecewise{42}, make_grid(0.0, 1.0, 10));
  const Density fine = sample_initial(datum::RandomPiecewise{42}, make_grid(0.0, 2.0, 20));
  const Density other = sample_initial(datum::RandomPiecewise{43}, make_grid(0.0, 1.0, 10));
  bool differs = false;
  for (int i = 0; i < 10; ++i) {
    CHECK(coarse[i] == fine[i]);
    CHECK(coarse[i] >= 0.0);
    CHECK(coarse[i] < 1.0);
    differs = differs || coarse[i] != other[i];
  }
  CHECK(differs);
}

TEST_CASE("counter_uniform mean and range") {
  double sum = 0.0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    const double v = counter_uniform(7, static_cast<std::uint64_t>(k));
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
    sum += v;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("datum strings round-trip") {
  for (const char* text : {"gauss", "parabola", "uniform+10", "random:17", "file:/tmp/x.csv",
                           "gauss:1:0.5"}) {
    CHECK(to_string(parse_datum(to_string(parse_datum(text)))) == to_string(parse_datum(text)));
  }
  CHECK(to_string(parse_datum("random:17")) == "random:17");
  CHECK(to_string(parse_datum("gauss")) == "gauss");
  CHECK_THROWS_AS((void)parse_datum("triangle"), ConfigError);
  CHECK_THROWS_AS((void)parse_datum("random:abc"), ConfigError);
  CHECK_THROWS_AS((void)parse_datum("uniform+x"), ConfigError);
  CHECK_THROWS_AS((void)parse_datum("file:"), ConfigError);
  CHECK_THROWS_AS((void)sample_initial(parse_datum("gauss:0:0"), make_grid(0.0, 1.0, 4)),
                  ConfigError);
}
