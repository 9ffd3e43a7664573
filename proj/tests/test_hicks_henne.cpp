// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include "bladeopt/hicks_henne.hpp"
#include "bladeopt/rng.hpp"

using namespace bladeopt;
using Catch::Matchers::WithinAbs;

TEST_CASE("bump peaks at one at its maximum location") {
  CHECK_THAT(hicks_henne(0.5, 0.5), WithinAbs(1.0, 1e-15));
  for (double x0 : {0.1, 0.25, 0.3, 0.7, 0.9}) CHECK_THAT(hicks_henne(x0, x0), WithinAbs(1.0, 1e-12));
}

TEST_CASE("bump vanishes at both chord ends") {
  for (double x0 : {0.1, 0.3, 0.5, 0.9}) {
    CHECK(hicks_henne(0.0, x0) == 0.0);
    CHECK(hicks_henne(1.0, x0) == 0.0);
  }
}

TEST_CASE("bump reference values") {
  CHECK_THAT(hicks_henne(0.25, 0.5), WithinAbs(0.5, 1e-12));
  // 50-digit reference from tests/oracles/compute_oracles.py
  CHECK_THAT(hicks_henne(0.3, 0.25), WithinAbs(0.97769045162593207616, 1e-10));
}

TEST_CASE("bump rejects points outside its domain") {
  CHECK_THROWS_AS(hicks_henne(-0.1, 0.5), DomainError);
  CHECK_THROWS_AS(hicks_henne(1.1, 0.5), DomainError);
  CHECK_THROWS_AS(hicks_henne(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(hicks_henne(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(hicks_henne(std::nan(""), 0.5), DomainError);
}

TEST_CASE("bump stays in the unit interval and peaks near x0 on a dense grid") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double x0 = rng.uniform(0.02, 0.98);
    const int n = 4000;
    double best = -1.0, arg = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = static_cast<double>(i) / n;
      const double b = hicks_henne(x, x0);
      REQUIRE(b >= 0.0);
      REQUIRE(b <= 1.0);
      if (b > best) {
        best = b;
        arg = x;
      }
    }
    CHECK(std::abs(arg - x0) <= 1.0 / n);
  }
}

TEST_CASE("maxima are equally spaced in the open unit interval") {
  CHECK(basis_maxima(1) == std::vector<double>{0.5});
  CHECK(basis_maxima(3) == std::vector<double>{0.25, 0.5, 0.75});
  const auto m9 = basis_maxima(9);
  REQUIRE(m9.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK_THAT(m9[i], WithinAbs(0.1 * (i + 1), 1e-15));
  for (std::size_t n = 1; n <= 20; ++n) {
    const auto m = basis_maxima(n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(m[i] > 0.0);
      CHECK(m[i] < 1.0);
      if (i > 0) CHECK_THAT(m[i] - m[i - 1], WithinAbs(1.0 / (n + 1), 1e-15));
    }
  }
  CHECK_THROWS_AS(basis_maxima(0), DomainError);
}

TEST_CASE("search dimension counts three sections of shape and placement variables") {
  const std::vector<std::pair<std::size_t, std::size_t>> table{
      {3, 18}, {4, 21}, {5, 24}, {7, 30}, {9, 36}, {10, 39}, {12, 45}};
  for (auto [n, d] : table) CHECK(search_dimension(n) == d);
  CHECK_THROWS_AS(search_dimension(0), DomainError);
}

TEST_CASE("basis displacement sums weighted bumps") {
  const HicksHenneBasis basis(3);
  CHECK(basis.count() == 3);
  const std::vector<double> a{0.01, -0.02, 0.03};
  const double x = 0.4;
  const double expected = 0.01 * hicks_henne(x, 0.25) - 0.02 * hicks_henne(x, 0.5) + 0.03 * hicks_henne(x, 0.75);
  CHECK_THAT(basis.displacement(x, a), WithinAbs(expected, 1e-17));
  CHECK(basis.displacement(0.0, a) == 0.0);
  CHECK(basis.displacement(1.0, a) == 0.0);
  CHECK_THROWS_AS(basis.displacement(0.5, {0.1}), DomainError);
}
