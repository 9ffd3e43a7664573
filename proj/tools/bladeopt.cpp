// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0
//
// bladeopt command-line driver.
//
// Exit codes: 0 success, 1 internal error, 2 usage error, 3 configuration
// error, 4 evaluator failure, 5 I/O failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bladeopt/bladeopt.hpp"

namespace fs = std::filesystem;
using namespace bladeopt;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kConfig = 3, kEvaluator = 4, kIo = 5 };

struct ConfigArgs {
  std::string config;
  std::vector<std::string> overrides;
  std::string output_dir;
};

void add_config_options(CLI::App* cmd, ConfigArgs& a) {
  cmd->add_option("-c,--config", a.config,
                  "Experiment configuration (JSON). Relative names are also looked up in $BLADEOPT_CONFIG_DIR");
  cmd->add_option("-s,--set", a.overrides, "Override a configuration value, e.g. optimizer.seed=3 (repeatable)");
  cmd->add_option("-o,--output-dir", a.output_dir, "Run directory (overrides output_dir)");
}

fs::path locate_config(const std::string& name) {
  const fs::path p(name);
  if (fs::exists(p) || p.is_absolute()) return p;
  if (const char* dir = std::getenv("BLADEOPT_CONFIG_DIR")) {
    if (fs::exists(fs::path(dir) / p)) return fs::path(dir) / p;
  }
  throw ConfigError("configuration file " + name + " not found");
}

// Resolved document: file (or $BLADEOPT_CONFIG_DIR/default.json, or built-in
// defaults), then overrides, then --output-dir. No side effects.
nlohmann::json resolve_document(const ConfigArgs& a) {
  nlohmann::json doc;
  if (!a.config.empty()) {
    doc = load_config_file(locate_config(a.config));
  } else if (const char* dir = std::getenv("BLADEOPT_CONFIG_DIR");
             dir != nullptr && fs::exists(fs::path(dir) / "default.json")) {
    doc = load_config_file(fs::path(dir) / "default.json");
  } else {
    doc = default_config_document();
  }
  for (const auto& o : a.overrides) apply_override(doc, o);
  if (!a.output_dir.empty()) doc["output_dir"] = a.output_dir;
  return doc;
}

void print_record(const RunRecord& rec) {
  std::cout << "run " << rec.name << " status=" << rec.status << " generations=" << rec.generations()
            << " evaluations=" << rec.evaluations() << " eta_baseline=" << format_double(rec.eta_baseline());
  if (rec.best_row) {
    std::cout << " best_fitness=" << format_double(rec.best().fitness)
              << " best_eta=" << format_double(rec.best().eta_avg);
    if (const auto n = rec.normalized(rec.best().eta_avg)) std::cout << " best_eta_normalized=" << format_double(*n);
  }
  std::cout << " dir=" << rec.run_dir.string() << "\n";
}

std::vector<std::uint64_t> parse_values(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.front() == '-') throw ConfigError("sweep value '" + item + "' is not a count");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("sweep needs at least one value");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blade shape optimization with Hicks-Henne parameterization and evolutionary search"};
  app.require_subcommand(1);

  ConfigArgs base_args;
  std::string base_out = "baseline_blade.dat";
  std::string base_format = "dat";
  auto* baseline = app.add_subcommand("baseline", "Write the configured baseline blade");
  add_config_options(baseline, base_args);
  baseline->add_option("--file", base_out, "Output file")->capture_default_str();
  baseline->add_option("--format", base_format, "dat, obj or vtk")
      ->check(CLI::IsMember({"dat", "obj", "vtk"}))
      ->capture_default_str();

  ConfigArgs run_args;
  bool dry_run = false;
  std::size_t stop_after = 0;
  auto* run_cmd = app.add_subcommand("run", "Run one optimization");
  add_config_options(run_cmd, run_args);
  run_cmd->add_flag("--dry-run", dry_run, "Validate and print derived quantities without evaluating");
  run_cmd->add_option("--stop-after", stop_after, "Stop after this many generations (resume later)");

  ConfigArgs sweep_args;
  std::string axis = "seed";
  std::string values;
  auto* sweep_cmd = app.add_subcommand("sweep", "Independent runs over seed, lambda or n_hh");
  add_config_options(sweep_cmd, sweep_args);
  sweep_cmd->add_option("--axis", axis, "seed, lambda or n_hh")
      ->check(CLI::IsMember({"seed", "lambda", "n_hh"}))
      ->capture_default_str();
  sweep_cmd->add_option("--values", values, "Comma-separated values, e.g. 1,2,3")->required();

  std::string resume_dir;
  std::size_t resume_stop = 0;
  auto* resume_cmd = app.add_subcommand("resume", "Continue an interrupted run from its checkpoint");
  resume_cmd->add_option("run_dir", resume_dir, "Run directory")->required();
  resume_cmd->add_option("--stop-after", resume_stop, "Stop after this many generations in total");

  std::vector<std::string> analyze_dirs;
  std::string analyze_out = "analysis";
  std::string analyze_axis = "generation";
  double epsilon_f = 0.01;
  double delta_g = 0.0;
  auto* analyze = app.add_subcommand("analyze", "Convergence tables and cross-run comparison");
  analyze->add_option("run_dirs", analyze_dirs, "Run directories")->required();
  analyze->add_option("-o,--output-dir", analyze_out, "Output directory")->capture_default_str();
  analyze->add_option("--axis", analyze_axis, "Incumbent axis: generation or evaluation")
      ->check(CLI::IsMember({"generation", "evaluation"}))
      ->capture_default_str();
  analyze->add_option("--epsilon-f", epsilon_f, "Relative fitness spread threshold")->capture_default_str();
  analyze->add_option("--delta-g", delta_g, "Geometry distance threshold in meters (default: measured)");

  std::string diff_run, diff_base, diff_opt, diff_out;
  auto* diff = app.add_subcommand("diff", "VTK file of the normal displacement between two blades");
  diff->add_option("run_dir", diff_run, "Run directory (baseline vs best blade)");
  diff->add_option("--baseline", diff_base, "Baseline blade file");
  diff->add_option("--optimized", diff_opt, "Optimized blade file");
  diff->add_option("--file", diff_out, "Output VTK file (default: <run_dir>/diff.vtk, else diff.vtk)");

  std::string export_run, export_which = "best", export_format = "obj", export_out;
  auto* exp = app.add_subcommand("export", "Export a blade of a run as dat, obj or vtk");
  exp->add_option("run_dir", export_run, "Run directory")->required();
  exp->add_option("--which", export_which, "best or baseline")
      ->check(CLI::IsMember({"best", "baseline"}))
      ->capture_default_str();
  exp->add_option("--format", export_format, "dat, obj or vtk")
      ->check(CLI::IsMember({"dat", "obj", "vtk"}))
      ->capture_default_str();
  exp->add_option("--file", export_out, "Output file (default: <run_dir>/<which>_blade.<format>)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const auto write_geometry = [](const BladeGeometry& b, const fs::path& path, const std::string& format) {
    if (format == "dat") {
      write_blade(path, b);
    } else if (format == "obj") {
      write_obj(path, b);
    } else {
      write_vtk_polydata(path, b, std::vector<double>(b.point_count(), 0.0), "zero");
    }
  };

  try {
    if (*baseline) {
      const auto cfg = parse_experiment_config(resolve_document(base_args));
      const auto blade = cfg.baseline.load();
      write_geometry(blade, base_out, base_format);
      std::cout << "baseline sections=" << blade.sections.size() << " points=" << blade.sections.front().size()
                << " file=" << base_out << "\n";
    } else if (*run_cmd) {
      const auto cfg = parse_experiment_config(resolve_document(run_args));
      if (dry_run) {
        const CandidateEvaluator ev(cfg);  // loads and validates the baseline and evaluator
        const auto plan = plan_summary(cfg);
        for (const auto& [k, v] : plan.items()) {
          std::cout << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
        return kOk;
      }
      RunOptions opts;
      if (run_cmd->count("--stop-after") > 0) opts.stop_after_generations = stop_after;
      print_record(bladeopt::run(cfg, opts));
    } else if (*sweep_cmd) {
      const auto doc = resolve_document(sweep_args);
      const auto ax = sweep_axis_from_string(axis);
      const auto vals = parse_values(values);
      for (const auto v : vals) (void)sweep_member_config(doc, ax, v);  // validate every member first
      const auto results = bladeopt::sweep(doc, ax, vals);
      bool failed = false;
      for (const auto& r : results) {
        if (r.record) {
          print_record(*r.record);
        } else {
          failed = true;
          std::cerr << "run " << r.label << " failed: " << r.error << "\n";
        }
      }
      if (failed) return kEvaluator;
    } else if (*resume_cmd) {
      RunOptions opts;
      if (resume_cmd->count("--stop-after") > 0) opts.stop_after_generations = resume_stop;
      print_record(bladeopt::resume(resume_dir, opts));
    } else if (*analyze) {
      std::vector<RunRecord> records;
      for (const auto& d : analyze_dirs) records.push_back(load_run_record(d));
      const auto tables = convergence_export(records, convergence_axis_from_string(analyze_axis), analyze_out);
      std::cout << "scatter " << tables.scatter.string() << " rows=" << tables.scatter_rows << "\n";
      std::cout << "incumbent " << tables.incumbent.string() << " rows=" << tables.incumbent_rows << "\n";
      if (records.size() >= 2) {
        CompareOptions co;
        co.epsilon_f = epsilon_f;
        if (analyze->count("--delta-g") > 0) co.delta_g = delta_g;
        const auto summary = compare_runs(records, co).to_json();
        std::ofstream os(fs::path(analyze_out) / "comparison.json");
        if (!(os << summary.dump(2) << "\n")) throw IoError("cannot write comparison.json");
        std::cout << "comparison " << (fs::path(analyze_out) / "comparison.json").string()
                  << " fitness_spread=" << format_double(summary["fitness_spread"].get<double>())
                  << " min_distance=" << format_double(summary["min_distance"].get<double>())
                  << " delta_g=" << format_double(summary["delta_g"].get<double>())
                  << " multimodal=" << (summary["multimodal"].get<bool>() ? "true" : "false") << "\n";
      }
    } else if (*diff) {
      BladeGeometry a, b;
      if (!diff_run.empty()) {
        const auto rec = load_run_record(diff_run);
        if (!rec.best_blade) throw IoError("run " + diff_run + " has no best blade");
        a = rec.baseline_blade;
        b = *rec.best_blade;
      } else if (!diff_base.empty() && !diff_opt.empty()) {
        a = read_blade(diff_base);
        b = read_blade(diff_opt);
      } else {
        std::cerr << "diff needs a run directory or --baseline and --optimized\n";
        return kUsage;
      }
      require_same_topology(a, b, "diff");
      if (diff_out.empty()) diff_out = diff_run.empty() ? "diff.vtk" : (fs::path(diff_run) / "diff.vtk").string();
      diff_export(a, b, diff_out);
      std::cout << "diff " << diff_out << " points=" << a.point_count() << "\n";
    } else if (*exp) {
      const auto rec = load_run_record(export_run);
      if (export_which == "best" && !rec.best_blade) throw IoError("run " + export_run + " has no best blade");
      const auto& blade = export_which == "best" ? *rec.best_blade : rec.baseline_blade;
      const fs::path out =
          export_out.empty() ? fs::path(export_run) / (export_which + "_blade." + export_format) : fs::path(export_out);
      write_geometry(blade, out, export_format);
      std::cout << "export " << out.string() << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const EvaluationError& e) {
    std::cerr << "evaluator failure: " << e.what() << "\n";
    return kEvaluator;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
