// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

#include <sys/wait.h>

#include "bladeopt/blade_io.hpp"
#include "bladeopt/harness.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using bladeopt::test::slurp;
using bladeopt::test::TempDir;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell with stdout captured in `scratch`.
Result cli(const std::string& args, const fs::path& scratch, const std::string& env = "") {
  const auto out = scratch / "stdout.txt";
  const std::string cmd = env + " '" + std::string(BLADEOPT_CLI) + "' " + args + " > '" + out.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  return r;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

const std::string kSmall = " -s n_hh=3 -s budget.max_generations=3 -s evaluator.surrogate.series_length=10";

}  // namespace

TEST_CASE("usage errors") {
  TempDir dir("cli_usage");
  CHECK(cli("--help", dir.path()).code == 0);
  CHECK(cli("", dir.path()).code == 2);
  CHECK(cli("frobnicate", dir.path()).code == 2);
  CHECK(cli("run --no-such-flag", dir.path()).code == 2);
  CHECK(cli("sweep --axis seed", dir.path()).code == 2);
  CHECK(cli("sweep --axis colour --values 1", dir.path()).code == 2);
}

TEST_CASE("dry run validates and writes nothing") {
  TempDir dir("cli_dry");
  const auto out = dir / "run";
  const auto r = cli("run --dry-run -s n_hh=9 -o " + q(out), dir.path());
  CHECK(r.code == 0);
  CHECK(r.out.find("N_search=36") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("configuration errors exit with 3 before touching disk") {
  TempDir dir("cli_cfg");
  const auto out = dir / "run";
  CHECK(cli("run -s n_hh=-1 -o " + q(out), dir.path()).code == 3);
  CHECK(cli("run -s optimizer.kind=simplex -o " + q(out), dir.path()).code == 3);
  CHECK(cli("run -s no.such.key=1 -o " + q(out), dir.path()).code == 3);
  CHECK(cli("run -s n_hh -o " + q(out), dir.path()).code == 3);
  CHECK(cli("run -c does_not_exist.json -o " + q(out), dir.path()).code == 3);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("config directory from the environment") {
  TempDir dir("cli_env");
  {
    std::ofstream os(dir / "default.json");
    os << R"({"n_hh": 4})";
  }
  {
    std::ofstream os(dir / "named.json");
    os << R"({"n_hh": 5})";
  }
  const std::string env = "BLADEOPT_CONFIG_DIR=" + q(dir.path());
  CHECK(cli("run --dry-run", dir.path(), env).out.find("N_search=21") != std::string::npos);
  CHECK(cli("run --dry-run -c named.json", dir.path(), env).out.find("N_search=24") != std::string::npos);
  CHECK(cli("run --dry-run -c named.json -s n_hh=6", dir.path(), env).out.find("N_search=27") != std::string::npos);
}

TEST_CASE("run, resume, analyze, diff and export") {
  TempDir dir("cli_flow");
  const auto full = dir / "full";
  const auto part = dir / "part";
  REQUIRE(cli("run" + kSmall + " -o " + q(full), dir.path()).code == 0);
  REQUIRE(cli("run" + kSmall + " --stop-after 1 -o " + q(part), dir.path()).code == 0);
  CHECK(bladeopt::load_run_record(part).status == "interrupted");
  REQUIRE(cli("resume " + q(part), dir.path()).code == 0);
  CHECK(slurp(full / "evaluations.jsonl") == slurp(part / "evaluations.jsonl"));
  CHECK(slurp(full / "best_blade.dat") == slurp(part / "best_blade.dat"));
  CHECK(bladeopt::load_run_record(part).status == "complete");

  const auto an = dir / "analysis";
  const auto r = cli("analyze " + q(full) + " " + q(part) + " -o " + q(an), dir.path());
  CHECK(r.code == 0);
  CHECK(fs::exists(an / "scatter.tsv"));
  CHECK(fs::exists(an / "incumbent_generation.tsv"));
  REQUIRE(fs::exists(an / "comparison.json"));
  const auto cmp = nlohmann::json::parse(slurp(an / "comparison.json"));
  CHECK(cmp["min_distance"].get<double>() == 0.0);
  CHECK_FALSE(cmp["multimodal"].get<bool>());
  CHECK(cli("analyze " + q(full) + " --axis evaluation -o " + q(an), dir.path()).code == 0);
  CHECK(fs::exists(an / "incumbent_evaluation.tsv"));
  CHECK(cli("analyze " + q(dir / "nothing") + " -o " + q(an), dir.path()).code == 5);

  CHECK(cli("diff " + q(full), dir.path()).code == 0);
  const auto vtk = bladeopt::read_vtk_polydata(full / "diff.vtk");
  CHECK(vtk.points.size() == 11 * 61);
  CHECK(cli("diff --baseline " + q(full / "baseline_blade.dat") + " --optimized " + q(full / "baseline_blade.dat") +
                " --file " + q(dir / "zero.vtk"),
            dir.path())
            .code == 0);
  for (double v : bladeopt::read_vtk_polydata(dir / "zero.vtk").scalars) CHECK(v == 0.0);
  CHECK(cli("diff --baseline " + q(full / "baseline_blade.dat"), dir.path()).code == 2);

  CHECK(cli("export " + q(full) + " --format obj", dir.path()).code == 0);
  CHECK(fs::exists(full / "best_blade.obj"));
  CHECK(cli("export " + q(full) + " --which baseline --format vtk --file " + q(dir / "b.vtk"), dir.path()).code == 0);
  CHECK(fs::exists(dir / "b.vtk"));
  CHECK(cli("export " + q(dir / "nothing"), dir.path()).code == 5);
}

TEST_CASE("baseline subcommand") {
  TempDir dir("cli_base");
  CHECK(cli("baseline --file " + q(dir / "b.dat"), dir.path()).code == 0);
  const auto blade = bladeopt::read_blade(fs::path(dir / "b.dat"));
  CHECK(blade.sections.size() == 11);
  CHECK(cli("baseline --format obj --file " + q(dir / "b.obj"), dir.path()).code == 0);
  CHECK(fs::exists(dir / "b.obj"));
  CHECK(cli("baseline --format step --file " + q(dir / "b.step"), dir.path()).code == 2);
}

TEST_CASE("sweep writes one directory per value") {
  TempDir dir("cli_sweep");
  const auto out = dir / "sweep";
  REQUIRE(cli("sweep --axis seed --values 1,2,3" + kSmall + " -o " + q(out), dir.path()).code == 0);
  for (const char* sub : {"seed_1", "seed_2", "seed_3"}) {
    CHECK(fs::exists(out / sub / "summary.json"));
    CHECK(fs::exists(out / sub / "evaluations.jsonl"));
  }
  CHECK(slurp(out / "seed_1" / "evaluations.jsonl") != slurp(out / "seed_2" / "evaluations.jsonl"));
  CHECK(cli("sweep --axis n_hh --values 2,0" + kSmall + " -o " + q(dir / "bad"), dir.path()).code == 3);
  CHECK_FALSE(fs::exists(dir / "bad"));
}

TEST_CASE("failing external solver aborts with 4") {
  TempDir dir("cli_ext");
  const auto solver = bladeopt::test::source_dir() / "samples" / "failing_solver.sh";
  const std::string args = " -s n_hh=3 -s evaluator.kind=external -s \"evaluator.external.command=sh " +
                           solver.string() + "\" -s max_failed_generations=2 -s budget.max_generations=10";
  const auto out = dir / "run";
  const auto r = cli("run" + args + " -o " + q(out), dir.path());
  CHECK(r.code == 4);
  const auto rec = bladeopt::load_run_record(out);
  CHECK(rec.status == "aborted");
  CHECK(rec.generations() == 2);
}
