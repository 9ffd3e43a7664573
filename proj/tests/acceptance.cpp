// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Prints one line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "bladeopt/bladeopt.hpp"
#include "support.hpp"

using namespace bladeopt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  double time_limit;  // seconds
  std::function<Outcome()> check;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Median over seeds 1..20 of two independent reference implementations.
constexpr std::size_t kCmaOracleBudget = 1189;
constexpr std::size_t kPsoOracleBudget = 1046;
constexpr double kHicksHenneRef = 0.97769045162593207616;
constexpr double kEfficiencyRef = 0.87605461681790176365;

double shifted_sphere(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += (v - 0.7) * (v - 0.7);
  return s;
}

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

std::size_t median(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome hicks_henne_suite() {
  double worst = 0.0;
  for (double x0 : {0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95}) {
    worst = std::max({worst, std::abs(hicks_henne(x0, x0) - 1.0), std::abs(hicks_henne(0.0, x0)),
                      std::abs(hicks_henne(1.0, x0))});
  }
  worst = std::max(worst, std::abs(hicks_henne(0.25, 0.5) - 0.5));
  const double oracle = std::abs(hicks_henne(0.3, 0.25) - kHicksHenneRef);
  return {worst <= 1e-12 && oracle <= 1e-10, "identities max error " + fmt(worst) + ", oracle error " + fmt(oracle)};
}

Outcome dimension_law() {
  bool ok = search_dimension(9) == 36 && search_dimension(7) == 30 && search_dimension(12) == 45;
  ok = ok && search_dimension(3) == 18;
  for (std::size_t n = 3; n <= 12; ++n) ok = ok && search_dimension(n) >= 18 && search_dimension(n) <= 45;
  return {ok, "9->" + std::to_string(search_dimension(9)) + " 7->" + std::to_string(search_dimension(7)) +
                  " 12->" + std::to_string(search_dimension(12)) + " 3->" + std::to_string(search_dimension(3))};
}

Outcome efficiency_formula() {
  const double g = 1.4, pr = 2.0;
  const double iso = std::abs(isentropic_efficiency(1e5, pr * 1e5, 300.0, std::pow(pr, (g - 1.0) / g) * 300.0) - 1.0);
  const double derived = std::abs(isentropic_efficiency(1.0, 2.0, 1.0, 1.25, g) - kEfficiencyRef);
  Rng rng(8);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double p_in = rng.uniform(5e4, 2e5), t_in = rng.uniform(250.0, 320.0);
    const double p_out = p_in * rng.uniform(1.01, 3.0), t_out = t_in * rng.uniform(1.01, 1.5);
    const double a = std::exp(rng.uniform(-5.0, 5.0)), b = std::exp(rng.uniform(-5.0, 5.0));
    const double eta = isentropic_efficiency(p_in, p_out, t_in, t_out);
    worst = std::max(worst, std::abs(isentropic_efficiency(a * p_in, a * p_out, b * t_in, b * t_out) - eta) / eta);
  }
  return {iso <= 1e-12 && derived <= 1e-10 && worst <= 1e-12,
          "isentropic error " + fmt(iso) + ", oracle error " + fmt(derived) + ", scaling max rel error " + fmt(worst)};
}

Outcome optimizer_oracles() {
  std::vector<std::size_t> cma, pso;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CmaEs es(10, {}, seed);
    cma.push_back(evaluations_to_target(es, 1e-8, 40000));
    ParticleSwarm sw(10, {}, seed);
    pso.push_back(evaluations_to_target(sw, 1e-3, 40000));
  }
  const auto mc = median(cma), mp = median(pso);
  return {mc <= 2 * kCmaOracleBudget && mp <= 2 * kPsoOracleBudget,
          "median evaluations CMA-ES " + std::to_string(mc) + " (limit " + std::to_string(2 * kCmaOracleBudget) +
              "), PSO " + std::to_string(mp) + " (limit " + std::to_string(2 * kPsoOracleBudget) + ")"};
}

Outcome determinism() {
  test::TempDir dir("acc_det");
  const std::string cli = BLADEOPT_CLI;
  const std::string args = " -s n_hh=9 -s budget.max_generations=8 -s optimizer.seed=11 -s max_parallel=4";
  const auto run_to = [&](const fs::path& out, const std::string& extra) {
    return shell("'" + cli + "' run" + args + extra + " -o '" + out.string() + "' > /dev/null 2>&1");
  };
  const auto resume = [&](const fs::path& out) {
    return shell("'" + cli + "' resume '" + out.string() + "' > /dev/null 2>&1");
  };
  if (run_to(dir / "a", "") != 0 || run_to(dir / "b", "") != 0 || run_to(dir / "c", " --stop-after 3") != 0 ||
      resume(dir / "c") != 0) {
    return {false, "cli invocation failed"};
  }
  const auto a = test::slurp(dir / "a" / "evaluations.jsonl");
  const bool same = !a.empty() && a == test::slurp(dir / "b" / "evaluations.jsonl");
  const bool resumed = a == test::slurp(dir / "c" / "evaluations.jsonl") &&
                       test::slurp(dir / "a" / "best_blade.dat") == test::slurp(dir / "c" / "best_blade.dat");
  const auto lines = std::count(a.begin(), a.end(), '\n');
  return {same && resumed, std::to_string(lines) + " records; repeat identical=" + (same ? "yes" : "no") +
                               ", resume identical=" + (resumed ? "yes" : "no")};
}

// Two equal-height basins placed symmetrically about the start point, on a
// nearly flat base.
nlohmann::json two_basin_surrogate(std::size_t dim) {
  std::vector<double> c1(dim), c2(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double s = i % 2 == 0 ? 1.0 : -1.0;
    c1[i] = 0.5 + 0.1 * s;
    c2[i] = 0.5 - 0.1 * s;
  }
  nlohmann::json s;
  s["anchor"] = std::vector<double>(dim, 0.5);
  s["base_level"] = 0.5;
  s["curvature"] = 0.02;
  s["series_length"] = 10;
  s["explicit_bumps"] = {{{"center", c1}, {"height", 0.1}, {"width", 0.1}},
                         {{"center", c2}, {"height", 0.1}, {"width", 0.1}}};
  return s;
}

Outcome equal_quality_distinct_shapes() {
  test::TempDir dir("acc_modes");
  auto doc = default_config_document();
  doc["n_hh"] = 7;
  doc["budget"]["max_generations"] = 60;
  doc["output_dir"] = (dir / "sweep").string();
  const std::size_t dim = search_dimension(7);
  doc["evaluator"]["surrogate"].update(two_basin_surrogate(dim));
  const auto results = sweep(doc, SweepAxis::seed, {1, 2, 3});
  std::vector<RunRecord> recs;
  for (const auto& r : results) {
    if (!r.record) return {false, r.label + " failed: " + r.error};
    recs.push_back(*r.record);
  }
  const auto s = compare_runs(recs);
  // Which basin each run settled in, for the report.
  const auto c1 = doc["evaluator"]["surrogate"]["explicit_bumps"][0]["center"].get<std::vector<double>>();
  const auto c2 = doc["evaluator"]["surrogate"]["explicit_bumps"][1]["center"].get<std::vector<double>>();
  std::string basins;
  for (const auto& rec : recs) {
    const auto& x = rec.best().x;
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      d1 += (x[i] - c1[i]) * (x[i] - c1[i]);
      d2 += (x[i] - c2[i]) * (x[i] - c2[i]);
    }
    basins += d1 < d2 ? "A" : "B";
  }
  return {s.fitness_spread < 0.01 && s.max_distance > s.delta_g,
          "fitness spread " + fmt(s.fitness_spread) + ", max distance " + fmt(s.max_distance) + " m, delta_g " +
              fmt(s.delta_g) + " m, basins " + basins};
}

Outcome population_size_parity() {
  test::TempDir dir("acc_lambda");
  auto doc = default_config_document();
  doc["budget"]["max_generations"] = 100000;
  doc["budget"]["max_evaluations"] = 1 + 24 * 25;
  doc["evaluator"]["surrogate"]["series_length"] = 10;
  doc["output_dir"] = (dir / "sweep").string();
  const auto results = sweep(doc, SweepAxis::lambda, {12, 24});
  std::vector<double> finals;
  std::vector<std::size_t> counts;
  for (const auto& r : results) {
    if (!r.record) return {false, r.label + " failed: " + r.error};
    const auto series = best_so_far(*r.record).by_evaluation;
    finals.push_back(series.back());
    counts.push_back(series.size());
  }
  const double spread = relative_spread(finals);
  return {counts[0] == counts[1] && spread < 0.05,
          "evaluations " + std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + ", final best " +
              fmt(finals[0]) + " vs " + fmt(finals[1]) + ", relative difference " + fmt(spread)};
}

Outcome geometry_identities() {
  const auto base = synthetic_baseline();
  bool identity = true;
  for (std::size_t n : {3, 7, 9, 12}) {
    const auto space = SearchSpace::for_blade(base, n);
    identity = identity && build_blade(base, space.decode(space.identity_point())) == base;
  }
  double round_trip = 0.0;
  Rng rng(3);
  const auto space = SearchSpace::for_blade(base, 9);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(space.dimension());
    for (auto& v : x) v = rng.uniform();
    const auto x2 = space.encode(space.decode(x));
    for (std::size_t i = 0; i < x.size(); ++i) round_trip = std::max(round_trip, std::abs(x2[i] - x[i]));
  }
  double rigid = 0.0;
  const HicksHenneBasis basis(5);
  for (double theta : {0.01, -0.05, 0.3, 1.0}) {
    auto d = SectionDeformation::identity(5);
    d.rotation = theta;
    const auto& s = base.sections[4];
    const auto r = deform_section(s, d, basis);
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const double d0 = norm(s.points[i] - s.points[j]);
        rigid = std::max(rigid, std::abs(norm(r.points[i] - r.points[j]) - d0) / d0);
      }
    }
  }
  const auto diff = flattened_diff(base, base);
  const bool zero = std::all_of(diff.begin(), diff.end(), [](double v) { return v == 0.0; });
  return {identity && round_trip <= 1e-12 && rigid <= 1e-9 && zero,
          std::string("identity exact=") + (identity ? "yes" : "no") + ", round trip " + fmt(round_trip) +
              ", rigid rotation rel error " + fmt(rigid) + ", self diff zero=" + (zero ? "yes" : "no")};
}

Outcome external_protocol() {
  test::TempDir dir("acc_ext");
  const auto samples = test::source_dir() / "samples";
  auto doc = default_config_document();
  doc["n_hh"] = 3;
  doc["evaluator"]["kind"] = "external";
  doc["budget"]["max_generations"] = 2;
  doc["evaluator"]["external"]["command"] = "sh '" + (samples / "stub_solver.sh").string() + "'";
  doc["output_dir"] = (dir / "stub").string();
  const auto ok = run(parse_experiment_config(doc));
  bool stub_ok = ok.status == "complete" && ok.generations() == 2;
  for (const auto& r : ok.rows) stub_ok = stub_ok && r.converged && std::abs(r.eta_avg - 0.9) < 1e-9;

  doc["evaluator"]["external"]["command"] = "sh '" + (samples / "failing_solver.sh").string() + "'";
  doc["output_dir"] = (dir / "failing").string();
  const auto bad = run(parse_experiment_config(doc));
  double min_fitness = bad.baseline.fitness;
  for (const auto& r : bad.rows) min_fitness = std::min(min_fitness, r.fitness);
  const bool fail_ok = bad.rows.size() == 2 * bad.population && min_fitness >= 1.0;
  return {stub_ok && fail_ok, "stub run " + ok.status + " with " + std::to_string(ok.evaluations()) +
                                  " evaluations; failing solver min fitness " + fmt(min_fitness) + " over " +
                                  std::to_string(bad.evaluations()) + " evaluations"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, 1.0, hicks_henne_suite},          {2, 1.0, dimension_law},
      {3, 60.0, efficiency_formula},        {4, 60.0, optimizer_oracles},
      {5, 60.0, determinism},               {6, 300.0, equal_quality_distinct_shapes},
      {7, 300.0, population_size_parity},   {8, 60.0, geometry_identities},
      {9, 120.0, external_protocol},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.time_limit) {
      o.pass = false;
      o.detail += "; exceeded " + fmt(c.time_limit) + " s";
    }
    std::printf("criterion %d: %s (%.2f s) %s\n", c.id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
