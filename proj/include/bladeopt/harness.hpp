// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0
//
// Optimization runs and their on-disk records.
//
// A run directory holds
//
//   config.json         resolved configuration document
//   evaluations.jsonl   one JSON object per evaluation, baseline first, keys
//                       sorted, no timing data (byte-stable for a given seed)
//   timings.jsonl       wall time per evaluation, same order
//   checkpoint.json     optimizer state and partial record after the latest
//                       completed generation
//   summary.json        status, counts, incumbent series and best candidate
//   baseline_blade.dat  baseline geometry
//   best_blade.dat      geometry of the best candidate
//   work/               external evaluator work directories

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bladeopt/blade_io.hpp"
#include "bladeopt/config.hpp"
#include "bladeopt/errors.hpp"
#include "bladeopt/evaluator.hpp"
#include "bladeopt/optimizer.hpp"
#include "bladeopt/rng.hpp"

namespace bladeopt {

inline constexpr int kRecordVersion = 1;

struct CandidateRow {
  std::size_t generation = 0;  // 0 for the baseline
  std::size_t index = 0;
  std::vector<double> x;
  double fitness = 0.0;
  double eta_avg = 0.0;
  double penalty = 0.0;
  bool converged = false;
  bool feasible = true;
  std::string message;
  double wall_seconds = 0.0;

  [[nodiscard]] bool penalized() const { return penalty > 0.0; }
};

struct RunRecord {
  nlohmann::json config;
  std::string name;
  std::uint64_t seed = 0;
  std::string rng_algorithm = kRngAlgorithm;
  std::string optimizer;
  std::size_t population = 0;
  std::size_t n_hh = 0;
  std::size_t dimension = 0;
  std::string status = "running";  // running | interrupted | complete | aborted
  std::string diagnostic;
  std::size_t generations_planned = 0;

  CandidateRow baseline;
  std::vector<CandidateRow> rows;        // generation-major, candidate order
  std::vector<double> incumbent;         // best candidate fitness after each generation
  std::optional<std::size_t> best_row;   // index into rows

  BladeGeometry baseline_blade;
  std::optional<BladeGeometry> best_blade;
  std::filesystem::path run_dir;

  [[nodiscard]] std::size_t generations() const { return incumbent.size(); }
  [[nodiscard]] std::size_t evaluations() const { return 1 + rows.size(); }
  [[nodiscard]] double eta_baseline() const { return baseline.eta_avg; }

  /// Candidate efficiency over baseline efficiency; empty when the baseline
  /// produced no usable efficiency.
  [[nodiscard]] std::optional<double> normalized(double eta) const {
    if (!baseline.converged || !(baseline.eta_avg > 0.0)) return std::nullopt;
    return eta / baseline.eta_avg;
  }

  [[nodiscard]] const CandidateRow& best() const {
    if (!best_row) throw Error("run record has no candidates");
    return rows.at(*best_row);
  }
};

struct IncumbentSeries {
  std::vector<double> by_generation;  // one entry per generation
  std::vector<double> by_evaluation;  // one entry per evaluation, baseline first
};

inline IncumbentSeries best_so_far(const RunRecord& record) {
  IncumbentSeries s;
  double best = std::numeric_limits<double>::infinity();
  std::size_t gen = 0;
  for (const auto& r : record.rows) {
    if (r.generation != gen) {
      if (gen != 0) s.by_generation.push_back(best);
      gen = r.generation;
    }
    best = std::min(best, r.fitness);
  }
  if (gen != 0) s.by_generation.push_back(best);

  best = record.baseline.fitness;
  s.by_evaluation.push_back(best);
  for (const auto& r : record.rows) {
    best = std::min(best, r.fitness);
    s.by_evaluation.push_back(best);
  }
  return s;
}

/// Derived quantities of a configuration, without evaluating anything.
inline nlohmann::json plan_summary(const ExperimentConfig& cfg) {
  const std::size_t pop = cfg.optimizer.population_size();
  const std::size_t gens = cfg.budget.generations(pop);
  return {{"name", cfg.name},
          {"n_hh", cfg.n_hh},
          {"N_search", cfg.dimension()},
          {"optimizer", to_string(cfg.optimizer.kind)},
          {"population", pop},
          {"generations", gens},
          {"evaluations", 1 + gens * pop},
          {"evaluator", to_string(cfg.evaluator.kind)},
          {"max_parallel", cfg.max_parallel},
          {"output_dir", cfg.output_dir.string()}};
}

namespace detail {

inline nlohmann::json row_to_json(const CandidateRow& r, const RunRecord& rec) {
  nlohmann::json j{{"kind", r.generation == 0 ? "baseline" : "candidate"},
                   {"generation", r.generation},
                   {"index", r.index},
                   {"x", r.x},
                   {"fitness", r.fitness},
                   {"eta_avg", r.eta_avg},
                   {"penalty", r.penalty},
                   {"converged", r.converged},
                   {"feasible", r.feasible},
                   {"message", r.message}};
  const auto n = rec.normalized(r.eta_avg);
  j["eta_normalized"] = n ? nlohmann::json(*n) : nlohmann::json(nullptr);
  return j;
}

inline CandidateRow row_from_json(const nlohmann::json& j) {
  CandidateRow r;
  r.generation = j.at("generation").get<std::size_t>();
  r.index = j.at("index").get<std::size_t>();
  r.x = j.at("x").get<std::vector<double>>();
  r.fitness = j.at("fitness").get<double>();
  r.eta_avg = j.at("eta_avg").get<double>();
  r.penalty = j.at("penalty").get<double>();
  r.converged = j.at("converged").get<bool>();
  r.feasible = j.at("feasible").get<bool>();
  r.message = j.at("message").get<std::string>();
  if (j.contains("wall_seconds")) r.wall_seconds = j.at("wall_seconds").get<double>();
  return r;
}

inline nlohmann::json timing_json(const CandidateRow& r) {
  return {{"generation", r.generation}, {"index", r.index}, {"wall_seconds", r.wall_seconds}};
}

inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot write " + tmp.string());
    os << text;
    if (!os.flush()) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

inline void append_lines(const std::filesystem::path& path, const std::vector<nlohmann::json>& lines) {
  std::ofstream os(path, std::ios::binary | std::ios::app);
  if (!os) throw IoError("cannot append to " + path.string());
  for (const auto& j : lines) os << j.dump() << '\n';
  if (!os.flush()) throw IoError("write failed for " + path.string());
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  auto j = nlohmann::json::parse(is, nullptr, false);
  if (j.is_discarded()) throw IoError(path.string() + " is not valid JSON");
  return j;
}

inline void update_best(RunRecord& rec) {
  rec.best_row.reset();
  for (std::size_t i = 0; i < rec.rows.size(); ++i) {
    if (!rec.best_row || rec.rows[i].fitness < rec.rows[*rec.best_row].fitness) rec.best_row = i;
  }
}

inline CandidateRow make_row(std::size_t generation, std::size_t index, std::vector<double> x,
                             const FitnessReport& r, double seconds) {
  CandidateRow row;
  row.generation = generation;
  row.index = index;
  row.x = std::move(x);
  row.fitness = r.fitness;
  row.eta_avg = r.eta_avg;
  row.penalty = r.penalty;
  row.converged = r.converged;
  row.feasible = r.feasible;
  row.message = r.message;
  row.wall_seconds = seconds;
  return row;
}

inline std::string candidate_label(std::size_t generation, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "g%04zu_c%03zu", generation, index);
  return buf;
}

/// Evaluation that turns solver plumbing failures into a non-converged result
/// so they count against the failure streak instead of killing the run.
inline FitnessReport evaluate_guarded(const CandidateEvaluator& ev, std::span<const double> x,
                                      const std::string& label) {
  try {
    return ev.evaluate(x, label);
  } catch (const EvaluationError& e) {
    return failed_report(true, ev.config().fitness, e.what());
  } catch (const IoError& e) {
    return failed_report(true, ev.config().fitness, e.what());
  }
}

inline nlohmann::json summary_json(const RunRecord& rec) {
  const auto inc = best_so_far(rec);
  nlohmann::json j{{"version", kRecordVersion},
                   {"name", rec.name},
                   {"status", rec.status},
                   {"diagnostic", rec.diagnostic},
                   {"seed", rec.seed},
                   {"rng_algorithm", rec.rng_algorithm},
                   {"optimizer", rec.optimizer},
                   {"population", rec.population},
                   {"n_hh", rec.n_hh},
                   {"dimension", rec.dimension},
                   {"generations_planned", rec.generations_planned},
                   {"generations", rec.generations()},
                   {"evaluations", rec.evaluations()},
                   {"eta_baseline", rec.eta_baseline()},
                   {"baseline_converged", rec.baseline.converged},
                   {"incumbent_by_generation", inc.by_generation}};
  if (rec.best_row) {
    j["best"] = row_to_json(rec.best(), rec);
  } else {
    j["best"] = nullptr;
  }
  return j;
}

inline void write_summary(const RunRecord& rec) {
  write_text_atomic(rec.run_dir / "summary.json", summary_json(rec).dump(2) + "\n");
  if (rec.best_blade) {
    std::ostringstream os;
    write_blade(os, *rec.best_blade);
    write_text_atomic(rec.run_dir / "best_blade.dat", os.str());
  }
}

inline void write_checkpoint(const RunRecord& rec, const Optimizer& opt, std::size_t failed_streak) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rec.rows) {
    auto j = row_to_json(r, rec);
    j["wall_seconds"] = r.wall_seconds;
    rows.push_back(std::move(j));
  }
  auto base = row_to_json(rec.baseline, rec);
  base["wall_seconds"] = rec.baseline.wall_seconds;
  const nlohmann::json j{{"version", kRecordVersion},
                         {"status", rec.status},
                         {"diagnostic", rec.diagnostic},
                         {"generations", rec.generations()},
                         {"failed_streak", failed_streak},
                         {"optimizer", opt.to_json()},
                         {"baseline", std::move(base)},
                         {"rows", std::move(rows)}};
  write_text_atomic(rec.run_dir / "checkpoint.json", j.dump() + "\n");
}

inline void rebuild_incumbent(RunRecord& rec) {
  rec.incumbent = best_so_far(rec).by_generation;
  update_best(rec);
}

}  // namespace detail

struct RunOptions {
  /// Stop (status "interrupted") once this many generations are complete.
  std::optional<std::size_t> stop_after_generations;
  /// Reuse a baseline evaluation instead of evaluating it again.
  std::optional<FitnessReport> baseline_report;
};

namespace detail {

inline RunRecord drive(const ExperimentConfig& cfg, RunRecord rec, Optimizer opt, std::size_t failed_streak,
                       const CandidateEvaluator& ev, const RunOptions& options) {
  namespace fs = std::filesystem;
  using clock = std::chrono::steady_clock;
  const std::size_t pop = opt.population_size();
  rec.status = "running";
  while (rec.generations() < rec.generations_planned) {
    if (options.stop_after_generations && rec.generations() >= *options.stop_after_generations) {
      rec.status = "interrupted";
      write_checkpoint(rec, opt, failed_streak);
      write_summary(rec);
      return rec;
    }
    const std::size_t g = rec.generations() + 1;
    auto xs = opt.ask();
    if (xs.size() != pop) throw Error("optimizer returned an unexpected population size");
    auto reports = evaluate_in_order(xs.size(), cfg.max_parallel, [&](std::size_t i) {
      const auto t0 = clock::now();
      auto r = evaluate_guarded(ev, xs[i], candidate_label(g, i));
      return std::make_pair(std::move(r), std::chrono::duration<double>(clock::now() - t0).count());
    });
    std::vector<double> fit(pop);
    std::vector<nlohmann::json> eval_lines, timing_lines;
    bool all_penalized = true;
    for (std::size_t i = 0; i < pop; ++i) {
      fit[i] = reports[i].first.fitness;
      rec.rows.push_back(make_row(g, i, std::move(xs[i]), reports[i].first, reports[i].second));
      all_penalized = all_penalized && rec.rows.back().penalized();
      eval_lines.push_back(row_to_json(rec.rows.back(), rec));
      timing_lines.push_back(timing_json(rec.rows.back()));
    }
    opt.tell(fit);
    const double prev = rec.incumbent.empty() ? std::numeric_limits<double>::infinity() : rec.incumbent.back();
    rec.incumbent.push_back(std::min(prev, *std::min_element(fit.begin(), fit.end())));
    update_best(rec);
    append_lines(rec.run_dir / "evaluations.jsonl", eval_lines);
    append_lines(rec.run_dir / "timings.jsonl", timing_lines);

    failed_streak = all_penalized ? failed_streak + 1 : 0;
    if (failed_streak >= cfg.max_failed_generations) {
      rec.status = "aborted";
      std::ostringstream msg;
      msg << "evaluator failing: every candidate penalized for " << failed_streak
          << " consecutive generations (last message: " << rec.rows.back().message << ")";
      rec.diagnostic = msg.str();
    }
    write_checkpoint(rec, opt, failed_streak);
    if (rec.status == "aborted") {
      write_summary(rec);
      throw EvaluationError(rec.diagnostic);
    }
  }
  rec.status = "complete";
  if (rec.best_row) rec.best_blade = ev.blade_for(rec.best().x);
  write_checkpoint(rec, opt, failed_streak);
  write_summary(rec);
  return rec;
}

inline ExperimentConfig config_for_run_dir(nlohmann::json doc, const std::filesystem::path& run_dir) {
  doc["output_dir"] = run_dir.string();
  return parse_experiment_config(doc);
}

}  // namespace detail

/// Run an experiment from scratch into cfg.output_dir.
inline RunRecord run(const ExperimentConfig& cfg, const RunOptions& options = {}) {
  namespace fs = std::filesystem;
  using clock = std::chrono::steady_clock;
  if (cfg.dimension() != cfg.optimizer.dimension) throw ConfigError("optimizer dimension does not match 3(n_hh+3)");
  const CandidateEvaluator ev(cfg);
  Optimizer opt(cfg.optimizer);

  RunRecord rec;
  rec.config = cfg.document;
  rec.name = cfg.name;
  rec.seed = cfg.optimizer.seed;
  rec.optimizer = to_string(cfg.optimizer.kind);
  rec.population = opt.population_size();
  rec.n_hh = cfg.n_hh;
  rec.dimension = cfg.dimension();
  rec.generations_planned = cfg.budget.generations(rec.population);
  rec.baseline_blade = ev.baseline();
  rec.run_dir = cfg.output_dir;

  std::error_code ec;
  fs::create_directories(rec.run_dir, ec);
  if (ec) throw IoError("cannot create run directory " + rec.run_dir.string() + ": " + ec.message());
  for (const char* f : {"evaluations.jsonl", "timings.jsonl", "checkpoint.json", "summary.json", "best_blade.dat"}) {
    fs::remove(rec.run_dir / f, ec);
  }
  detail::write_text_atomic(rec.run_dir / "config.json", cfg.document.dump(2) + "\n");
  {
    std::ostringstream os;
    write_blade(os, rec.baseline_blade);
    detail::write_text_atomic(rec.run_dir / "baseline_blade.dat", os.str());
  }

  const auto x0 = ev.space().identity_point();
  const auto t0 = clock::now();
  const FitnessReport base =
      options.baseline_report ? *options.baseline_report : detail::evaluate_guarded(ev, x0, "baseline");
  rec.baseline = detail::make_row(0, 0, x0, base, std::chrono::duration<double>(clock::now() - t0).count());
  detail::append_lines(rec.run_dir / "evaluations.jsonl", {detail::row_to_json(rec.baseline, rec)});
  detail::append_lines(rec.run_dir / "timings.jsonl", {detail::timing_json(rec.baseline)});

  return detail::drive(cfg, std::move(rec), std::move(opt), 0, ev, options);
}

/// Continue a run from its checkpoint. The result equals the uninterrupted
/// run apart from wall times.
inline RunRecord resume(const std::filesystem::path& run_dir, const RunOptions& options = {}) {
  const auto cfg = detail::config_for_run_dir(detail::read_json_file(run_dir / "config.json"), run_dir);
  const auto ck = detail::read_json_file(run_dir / "checkpoint.json");
  try {
    if (ck.at("version").get<int>() != kRecordVersion) throw IoError("unsupported checkpoint version");
    const CandidateEvaluator ev(cfg);
    auto opt = Optimizer::from_json(cfg.optimizer, ck.at("optimizer"));

    RunRecord rec;
    rec.config = cfg.document;
    rec.name = cfg.name;
    rec.seed = cfg.optimizer.seed;
    rec.optimizer = to_string(cfg.optimizer.kind);
    rec.population = opt.population_size();
    rec.n_hh = cfg.n_hh;
    rec.dimension = cfg.dimension();
    rec.generations_planned = cfg.budget.generations(rec.population);
    rec.baseline_blade = ev.baseline();
    rec.run_dir = run_dir;
    rec.status = ck.at("status").get<std::string>();
    rec.diagnostic = ck.at("diagnostic").get<std::string>();
    rec.baseline = detail::row_from_json(ck.at("baseline"));
    for (const auto& j : ck.at("rows")) rec.rows.push_back(detail::row_from_json(j));
    detail::rebuild_incumbent(rec);
    if (rec.generations() != ck.at("generations").get<std::size_t>() ||
        rec.rows.size() != rec.generations() * rec.population) {
      throw IoError("checkpoint in " + run_dir.string() + " is inconsistent");
    }
    std::size_t streak = ck.at("failed_streak").get<std::size_t>();
    if (rec.status == "aborted") {
      streak = 0;
      rec.diagnostic.clear();
    }

    // Rewrite the line files from the checkpoint so they never hold rows of a
    // generation that was not checkpointed.
    std::string evals = detail::row_to_json(rec.baseline, rec).dump() + "\n";
    std::string times = detail::timing_json(rec.baseline).dump() + "\n";
    for (const auto& r : rec.rows) {
      evals += detail::row_to_json(r, rec).dump() + "\n";
      times += detail::timing_json(r).dump() + "\n";
    }
    detail::write_text_atomic(run_dir / "evaluations.jsonl", evals);
    detail::write_text_atomic(run_dir / "timings.jsonl", times);
    return detail::drive(cfg, std::move(rec), std::move(opt), streak, ev, options);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed checkpoint in " + run_dir.string() + ": " + e.what());
  }
}

/// Read a run directory back into a record (wall times included).
inline RunRecord load_run_record(const std::filesystem::path& run_dir) {
  try {
    RunRecord rec;
    rec.run_dir = run_dir;
    rec.config = detail::read_json_file(run_dir / "config.json");
    const auto s = detail::read_json_file(run_dir / "summary.json");
    rec.name = s.at("name").get<std::string>();
    rec.status = s.at("status").get<std::string>();
    rec.diagnostic = s.at("diagnostic").get<std::string>();
    rec.seed = s.at("seed").get<std::uint64_t>();
    rec.rng_algorithm = s.at("rng_algorithm").get<std::string>();
    rec.optimizer = s.at("optimizer").get<std::string>();
    rec.population = s.at("population").get<std::size_t>();
    rec.n_hh = s.at("n_hh").get<std::size_t>();
    rec.dimension = s.at("dimension").get<std::size_t>();
    rec.generations_planned = s.at("generations_planned").get<std::size_t>();

    std::ifstream evals(run_dir / "evaluations.jsonl");
    if (!evals) throw IoError("cannot open " + (run_dir / "evaluations.jsonl").string());
    std::ifstream times(run_dir / "timings.jsonl");
    std::string line;
    bool first = true;
    while (std::getline(evals, line)) {
      if (line.empty()) continue;
      auto row = detail::row_from_json(nlohmann::json::parse(line));
      std::string tline;
      if (times && std::getline(times, tline) && !tline.empty()) {
        row.wall_seconds = nlohmann::json::parse(tline).at("wall_seconds").get<double>();
      }
      if (first) {
        rec.baseline = std::move(row);
        first = false;
      } else {
        rec.rows.push_back(std::move(row));
      }
    }
    if (first) throw IoError("run " + run_dir.string() + " has no evaluations");
    detail::rebuild_incumbent(rec);
    rec.baseline_blade = read_blade(run_dir / "baseline_blade.dat");
    if (std::filesystem::exists(run_dir / "best_blade.dat")) rec.best_blade = read_blade(run_dir / "best_blade.dat");
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed run record in " + run_dir.string() + ": " + e.what());
  }
}

enum class SweepAxis { seed, lambda, n_hh };

inline SweepAxis sweep_axis_from_string(const std::string& s) {
  if (s == "seed" || s == "seeds") return SweepAxis::seed;
  if (s == "lambda") return SweepAxis::lambda;
  if (s == "n_hh") return SweepAxis::n_hh;
  throw ConfigError("unknown sweep axis '" + s + "' (expected seed, lambda or n_hh)");
}

inline std::string to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::seed:
      return "seed";
    case SweepAxis::lambda:
      return "lambda";
    case SweepAxis::n_hh:
      return "n_hh";
  }
  return "?";
}

struct SweepResult {
  std::string label;
  std::uint64_t value = 0;
  std::optional<RunRecord> record;
  std::string error;  // set when the run failed
};

/// Configuration of one sweep member: `base` with the axis set to `value`,
/// writing into <base output_dir>/<axis>_<value>.
inline ExperimentConfig sweep_member_config(const nlohmann::json& base, SweepAxis axis, std::uint64_t value) {
  auto doc = base;
  const std::string label = to_string(axis) + "_" + std::to_string(value);
  switch (axis) {
    case SweepAxis::seed:
      doc["optimizer"]["seed"] = value;
      break;
    case SweepAxis::lambda:
      doc["optimizer"]["cma"]["lambda"] = value;
      doc["optimizer"]["pso"]["particles"] = value;
      break;
    case SweepAxis::n_hh:
      doc["n_hh"] = value;
      break;
  }
  doc["name"] = doc.at("name").get<std::string>() + "_" + label;
  doc["output_dir"] = (std::filesystem::path(base.at("output_dir").get<std::string>()) / label).string();
  if (!doc["evaluator"]["external"]["work_dir"].is_null()) {
    doc["evaluator"]["external"]["work_dir"] =
        (std::filesystem::path(doc["evaluator"]["external"]["work_dir"].get<std::string>()) / label).string();
  }
  return parse_experiment_config(doc);
}

/// Independent runs over one axis. A failing member is reported in its result
/// and does not stop its siblings. Baseline evaluations are shared between
/// members whose baseline blade, evaluator and search dimension coincide.
inline std::vector<SweepResult> sweep(const nlohmann::json& base, SweepAxis axis,
                                      const std::vector<std::uint64_t>& values) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<SweepResult> out;
  std::map<std::string, FitnessReport> baseline_cache;
  for (const auto v : values) {
    SweepResult res;
    res.value = v;
    res.label = to_string(axis) + "_" + std::to_string(v);
    try {
      const auto cfg = sweep_member_config(base, axis, v);
      std::ostringstream key;
      write_blade(key, cfg.baseline.load());
      auto ev_doc = cfg.document.at("evaluator");
      ev_doc["external"]["work_dir"] = nullptr;
      key << ev_doc.dump() << '\n' << cfg.dimension();
      RunOptions opts;
      if (auto it = baseline_cache.find(key.str()); it != baseline_cache.end()) opts.baseline_report = it->second;
      res.record = run(cfg, opts);
      const auto& b = res.record->baseline;
      FitnessReport r;
      r.fitness = b.fitness;
      r.eta_avg = b.eta_avg;
      r.penalty = b.penalty;
      r.converged = b.converged;
      r.feasible = b.feasible;
      r.message = b.message;
      if (b.penalized()) r.penalties.push_back({b.feasible ? "nonconverged" : "infeasible", b.penalty});
      baseline_cache.emplace(key.str(), r);
    } catch (const std::exception& e) {
      res.error = e.what();
    }
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace bladeopt
