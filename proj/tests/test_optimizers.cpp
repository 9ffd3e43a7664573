// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "bladeopt/optimizer.hpp"
#include "bladeopt/rng.hpp"

using namespace bladeopt;
using Catch::Matchers::WithinAbs;

namespace {

double shifted_sphere(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += (v - 0.7) * (v - 0.7);
  return s;
}

// Evaluations until the best fitness drops below target, or `limit`.
template <class Opt>
std::size_t evaluations_to_target(Opt& opt, double target, std::size_t limit) {
  std::size_t evals = 0;
  while (evals < limit) {
    const auto xs = opt.ask();
    std::vector<double> f;
    for (const auto& x : xs) {
      f.push_back(shifted_sphere(x));
      ++evals;
      if (f.back() < target) return evals;
    }
    opt.tell(f);
  }
  return limit;
}

// Median evaluations of the reference implementations over seeds 1..20, from
// tests/oracles/compute_oracles.py.
constexpr std::size_t kCmaOracleBudget = 1189;
constexpr std::size_t kPsoOracleBudget = 1046;

std::size_t median(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST_CASE("random generator is reproducible and restorable") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    (void)c;
  }
  CHECK(Rng(42)() != Rng(43)());
  Rng r(9);
  (void)r.normal();  // leave a spare normal pending
  const auto snap = r.state();
  auto r2 = Rng::from_state(snap);
  for (int i = 0; i < 50; ++i) {
    CHECK(r.normal() == r2.normal());
    CHECK(r.uniform() == r2.uniform());
  }
  double sum = 0.0, sq = 0.0;
  Rng g(1);
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = g.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
  for (int i = 0; i < 1000; ++i) {
    const double u = g.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("bound handling clamps to the unit cube") {
  CHECK(bound_handle({0.2, 0.5, 1.0}) == std::vector<double>{0.2, 0.5, 1.0});
  CHECK(bound_handle({1.3, -0.2, 0.4}) == std::vector<double>{1.0, 0.0, 0.4});
  CHECK(in_unit_cube(std::vector<double>{0.0, 1.0}));
  CHECK_FALSE(in_unit_cube(std::vector<double>{0.0, 1.0001}));
}

TEST_CASE("CMA-ES starts at the identity point with the configured step") {
  CmaEs es(36, {}, 1);
  CHECK(es.mean().isApprox(Eigen::VectorXd::Constant(36, 0.5)));
  CHECK(es.sigma() == 0.05);
  CHECK(es.covariance().isIdentity());
  CHECK(es.weights().size() == 4);
  CHECK_THAT(std::accumulate(es.weights().begin(), es.weights().end(), 0.0), WithinAbs(1.0, 1e-15));
  CmaEs custom(3, {}, 1, std::vector<double>{0.1, 0.2, 0.3});
  CHECK(custom.mean()[2] == 0.3);
  CHECK_THROWS_AS(CmaEs(3, {}, 1, std::vector<double>{0.1}), DomainError);
  CHECK_THROWS_AS(CmaEs(3, {12, 13, 0.05, 10}, 1), DomainError);
  CHECK_THROWS_AS(CmaEs(3, {12, 4, 0.0, 10}, 1), DomainError);
}

TEST_CASE("CMA-ES asks lambda candidates inside the cube, reproducibly") {
  for (std::size_t lambda : {12, 24}) {
    CmaSettings s;
    s.lambda = lambda;
    CmaEs a(30, s, 7), b(30, s, 7);
    const auto xa = a.ask();
    CHECK(xa.size() == lambda);
    CHECK(xa == b.ask());
    for (const auto& x : xa) CHECK(in_unit_cube(x));
  }
  CmaEs es(5, {}, 1);
  (void)es.ask();
  CHECK_THROWS_AS(es.ask(), Error);
  CHECK_THROWS_AS(es.tell(std::vector<double>(11, 0.0)), DomainError);
  CHECK_THROWS_AS(es.tell(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, NAN}), DomainError);
  CmaEs idle(5, {}, 1);
  CHECK_THROWS_AS(idle.tell(std::vector<double>(12, 0.0)), Error);
}

TEST_CASE("CMA-ES with a vanishing step samples at the mean") {
  CmaSettings s;
  s.sigma0 = 1e-12;
  CmaEs es(10, s, 3, std::vector<double>(10, 0.3));
  for (const auto& x : es.ask()) {
    for (double v : x) CHECK_THAT(v, WithinAbs(0.3, 1e-10));
  }
}

TEST_CASE("CMA-ES flat fitness keeps the mean and the incumbent") {
  CmaEs es(8, {}, 2);
  auto xs = es.ask();
  std::vector<double> f(12);
  for (std::size_t i = 0; i < 12; ++i) f[i] = static_cast<double>(i);
  es.tell(f);
  const double best = es.best_fitness();
  const Eigen::VectorXd mean = es.mean();
  const Eigen::MatrixXd cov = es.covariance();
  (void)es.ask();
  es.tell(std::vector<double>(12, 5.0));
  CHECK(es.mean() == mean);
  CHECK(es.covariance() == cov);
  CHECK(es.best_fitness() == best);
  // Ties are resolved by candidate index.
  CHECK(es.last_selection() == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("CMA-ES selection is invariant to a constant fitness offset") {
  Rng noise(5);
  CmaEs a(12, {}, 9), b(12, {}, 9);
  for (int g = 0; g < 30; ++g) {
    const auto xa = a.ask();
    const auto xb = b.ask();
    REQUIRE(xa == xb);
    std::vector<double> fa(12), fb(12);
    for (std::size_t i = 0; i < 12; ++i) {
      fa[i] = noise.uniform();
      fb[i] = fa[i] + 1000.0;
    }
    a.tell(fa);
    b.tell(fb);
    CHECK(a.last_selection() == b.last_selection());
  }
}

TEST_CASE("CMA-ES covariance stays symmetric positive definite on random fitness") {
  Rng noise(17);
  CmaEs es(30, {}, 4);
  double incumbent = std::numeric_limits<double>::infinity();
  for (int g = 0; g < 200; ++g) {
    (void)es.ask();
    std::vector<double> f(12);
    for (auto& v : f) v = noise.uniform();
    es.tell(f);
    const auto& C = es.covariance();
    REQUIRE((C - C.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(C);
    REQUIRE(solver.eigenvalues().minCoeff() > 1e-14);
    REQUIRE(es.best_fitness() <= incumbent);
    incumbent = es.best_fitness();
  }
}

TEST_CASE("CMA-ES meets the sphere oracle budget") {
  std::vector<std::size_t> budgets;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CmaEs es(10, {}, seed);
    const auto used = evaluations_to_target(es, 1e-8, 40000);
    CHECK(used < 40000);
    budgets.push_back(used);
  }
  CHECK(median(budgets) <= 2 * kCmaOracleBudget);
}

TEST_CASE("PSO initialises inside the cube and returns the initial swarm first") {
  ParticleSwarm pso(30, {}, 3);
  const auto x0 = pso.positions();
  const auto asked = pso.ask();
  CHECK(asked.size() == 12);
  CHECK(asked == x0);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(in_unit_cube(asked[i]));
    for (double v : pso.velocities()[i]) CHECK(std::abs(v) <= 0.5);
  }
  CHECK_THROWS_AS(pso.ask(), Error);
  CHECK_THROWS_AS(ParticleSwarm(3, {1, 0.8, 1.7, 1.4, 0.5}, 1), DomainError);
  ParticleSwarm other(30, {}, 3);
  CHECK(other.ask() == asked);
}

TEST_CASE("PSO without forces or inertia stops moving") {
  PsoSettings s;
  s.omega = 0.0;
  s.phi1 = 0.0;
  s.phi2 = 0.0;
  ParticleSwarm pso(6, s, 8);
  (void)pso.ask();
  pso.tell(std::vector<double>(12, 1.0));
  const auto after_first = pso.ask();
  pso.tell(std::vector<double>(12, 1.0));
  for (int g = 0; g < 5; ++g) {
    CHECK(pso.ask() == after_first);
    pso.tell(std::vector<double>(12, 1.0));
  }
}

TEST_CASE("PSO velocities decay by the inertia factor without forces") {
  PsoSettings s;
  s.omega = 0.6;
  s.phi1 = 0.0;
  s.phi2 = 0.0;
  s.v_max = 0.05;
  ParticleSwarm pso(8, s, 21);
  (void)pso.ask();
  pso.tell(std::vector<double>(12, 0.0));
  for (int g = 0; g < 10; ++g) {
    const auto v0 = pso.velocities();
    (void)pso.ask();
    pso.tell(std::vector<double>(12, 0.0));
    const auto& v1 = pso.velocities();
    for (std::size_t i = 0; i < v0.size(); ++i) {
      for (std::size_t d = 0; d < v0[i].size(); ++d) {
        // Either the geometric decay or zeroed at a bound.
        const bool decayed = v1[i][d] == s.omega * v0[i][d];
        const bool stopped = v1[i][d] == 0.0;
        REQUIRE((decayed || stopped));
      }
    }
  }
}

TEST_CASE("PSO candidates stay in the cube and the incumbent never worsens") {
  ParticleSwarm pso(10, {}, 12);
  Rng noise(2);
  double incumbent = std::numeric_limits<double>::infinity();
  for (int g = 0; g < 100; ++g) {
    const auto xs = pso.ask();
    std::vector<double> f;
    for (const auto& x : xs) {
      REQUIRE(in_unit_cube(x));
      f.push_back(shifted_sphere(x) + 0.01 * noise.uniform());
    }
    pso.tell(f);
    REQUIRE(pso.best_fitness() <= incumbent);
    incumbent = pso.best_fitness();
  }
}

TEST_CASE("PSO meets the sphere oracle budget") {
  std::vector<std::size_t> budgets;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ParticleSwarm pso(10, {}, seed);
    const auto used = evaluations_to_target(pso, 1e-3, 40000);
    CHECK(used < 40000);
    budgets.push_back(used);
  }
  CHECK(median(budgets) <= 2 * kPsoOracleBudget);
}

TEST_CASE("optimizer snapshots resume bit-exactly") {
  for (auto kind : {OptimizerKind::cma_es, OptimizerKind::pso}) {
    OptimizerConfig cfg;
    cfg.kind = kind;
    cfg.dimension = 12;
    cfg.seed = 77;
    Optimizer a(cfg);
    auto step = [](Optimizer& o) {
      const auto xs = o.ask();
      std::vector<double> f;
      for (const auto& x : xs) f.push_back(shifted_sphere(x));
      o.tell(f);
      return xs;
    };
    for (int g = 0; g < 5; ++g) step(a);
    const auto snap = a.to_json();
    auto b = Optimizer::from_json(cfg, nlohmann::json::parse(snap.dump()));
    for (int g = 0; g < 5; ++g) REQUIRE(step(a) == step(b));
    CHECK(a.best_fitness() == b.best_fitness());
    CHECK(a.best_vector() == b.best_vector());
    CHECK(a.generation() == 10);

    auto other = cfg;
    other.dimension = 13;
    CHECK_THROWS_AS(Optimizer::from_json(other, snap), ConfigError);
  }
  OptimizerConfig cfg;
  cfg.dimension = 4;
  Optimizer o(cfg);
  (void)o.ask();
  CHECK_THROWS_AS(o.to_json(), Error);
}

TEST_CASE("optimizer configuration is validated") {
  CHECK(optimizer_kind_from_string("cma-es") == OptimizerKind::cma_es);
  CHECK(optimizer_kind_from_string("pso") == OptimizerKind::pso);
  CHECK_THROWS_AS(optimizer_kind_from_string("nelder-mead"), ConfigError);
  OptimizerConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.dimension = 3;
  cfg.validate();
  cfg.cma.mu = 13;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.dimension = 3;
  cfg.pso.particles = 1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.dimension = 3;
  cfg.start = std::vector<double>{0.5};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
