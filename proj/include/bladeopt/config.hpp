// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration (schema version 1).
//
// A configuration file is a JSON object laid over default_config_document().
// Every key must already exist in the defaults; unknown keys are rejected.
// Keys whose default is null are optional and accept any JSON value. Command
// line overrides use dotted paths into the same document ("optimizer.seed=3").

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bladeopt/baseline.hpp"
#include "bladeopt/blade_io.hpp"
#include "bladeopt/errors.hpp"
#include "bladeopt/evaluation.hpp"
#include "bladeopt/external.hpp"
#include "bladeopt/feasibility.hpp"
#include "bladeopt/hicks_henne.hpp"
#include "bladeopt/optimizer.hpp"
#include "bladeopt/search_space.hpp"
#include "bladeopt/surrogate.hpp"

namespace bladeopt {

inline constexpr int kConfigSchemaVersion = 1;

inline nlohmann::json default_config_document() {
  using nlohmann::json;
  const SyntheticBaselineConfig b;
  return json{
      {"schema_version", kConfigSchemaVersion},
      {"name", "experiment"},
      {"n_hh", 9},
      {"optimizer",
       {{"kind", "cma-es"},
        {"seed", 1},
        {"start", nullptr},
        {"cma", {{"lambda", 12}, {"mu", 4}, {"sigma0", 0.05}, {"max_resamples", 10}}},
        {"pso", {{"particles", 12}, {"omega", 0.8}, {"phi1", 1.7}, {"phi2", 1.4}, {"v_max", 0.5}}}}},
      {"search_space", {{"amplitude_fraction", 0.02}, {"rotation_deg", 5.0}, {"shift_fraction", 0.05}}},
      {"evaluator",
       {{"kind", "surrogate"},
        {"check_feasibility", nullptr},
        {"min_thickness_fraction", 1e-3},
        {"fitness",
         {{"gamma", 1.4}, {"averaging_window", 1000}, {"penalty_nonconverged", 0.5}, {"penalty_infeasible", 1.0}}},
        {"surrogate",
         {{"seed", 7},
          {"bumps", 8},
          {"base_level", 0.85},
          {"curvature", 0.2},
          {"height_min", 0.01},
          {"height_max", 0.015},
          {"width_min", 0.05},
          {"width_max", 0.12},
          {"series_length", 1000},
          {"anchor", nullptr},
          {"explicit_bumps", json::array()}}},
        {"external", {{"command", ""}, {"timeout_seconds", 6.0 * 3600.0}, {"work_dir", nullptr}}},
        {"benchmark", {{"name", "sphere"}}}}},
      {"budget", {{"max_generations", 10}, {"max_evaluations", nullptr}}},
      {"max_parallel", 4},
      {"max_failed_generations", 5},
      {"baseline",
       {{"source", "synthetic"},
        {"path", nullptr},
        {"synthetic",
         {{"sections", b.sections},
          {"points_per_section", b.points_per_section},
          {"hub_radius", b.hub_radius},
          {"tip_radius", b.tip_radius},
          {"chord_hub", b.chord_hub},
          {"chord_tip", b.chord_tip},
          {"thickness_hub", b.thickness_hub},
          {"thickness_tip", b.thickness_tip},
          {"camber_hub", b.camber_hub},
          {"camber_tip", b.camber_tip},
          {"camber_position", b.camber_position},
          {"stagger_hub_deg", b.stagger_hub_deg},
          {"stagger_tip_deg", b.stagger_tip_deg}}}}},
      {"output_dir", "runs/experiment"}};
}

namespace detail {

inline void merge_into(nlohmann::json& target, const nlohmann::json& source, const std::string& prefix) {
  if (!source.is_object()) throw ConfigError("configuration '" + prefix + "' must be an object");
  for (const auto& [key, value] : source.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!target.contains(key)) throw ConfigError("unknown configuration key '" + path + "'");
    auto& slot = target[key];
    if (slot.is_object()) {
      merge_into(slot, value, path);
    } else {
      slot = value;
    }
  }
}

}  // namespace detail

/// Defaults overlaid with `user`; rejects unknown keys.
inline nlohmann::json merge_config(const nlohmann::json& user) {
  auto doc = default_config_document();
  detail::merge_into(doc, user, "");
  return doc;
}

/// Apply "dotted.path=value". The value is parsed as JSON when possible and
/// taken as a plain string otherwise.
inline void apply_override(nlohmann::json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);

  const auto schema = default_config_document();
  const nlohmann::json* schema_node = &schema;
  nlohmann::json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!schema_node->is_object() || !schema_node->contains(key)) {
      throw ConfigError("unknown configuration key '" + path + "'");
    }
    schema_node = &(*schema_node)[key];
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (schema_node->is_object()) throw ConfigError("override '" + path + "' names a section, not a value");
  auto parsed = nlohmann::json::parse(text, nullptr, false);
  *node = parsed.is_discarded() ? nlohmann::json(text) : parsed;
}

inline nlohmann::json load_config_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open configuration file " + path.string());
  auto user = nlohmann::json::parse(is, nullptr, false);
  if (user.is_discarded()) throw ConfigError("configuration file " + path.string() + " is not valid JSON");
  return merge_config(user);
}

enum class EvaluatorKind { surrogate, external, benchmark };

inline std::string to_string(EvaluatorKind k) {
  switch (k) {
    case EvaluatorKind::surrogate:
      return "surrogate";
    case EvaluatorKind::external:
      return "external";
    case EvaluatorKind::benchmark:
      return "benchmark";
  }
  return "?";
}

struct EvaluatorConfig {
  EvaluatorKind kind = EvaluatorKind::surrogate;
  bool check_feasibility = false;
  FeasibilityOptions feasibility;
  FitnessConfig fitness;
  SurrogateConfig surrogate;
  ExternalConfig external;
  std::string benchmark = "sphere";
};

struct Budget {
  std::size_t max_generations = 10;
  std::optional<std::size_t> max_evaluations;

  /// Whole generations that fit: the baseline uses one evaluation.
  [[nodiscard]] std::size_t generations(std::size_t population) const {
    std::size_t g = max_generations;
    if (max_evaluations) g = std::min(g, *max_evaluations > 0 ? (*max_evaluations - 1) / population : 0);
    return g;
  }
};

struct BaselineSource {
  bool from_file = false;
  std::filesystem::path path;
  SyntheticBaselineConfig synthetic;

  [[nodiscard]] BladeGeometry load() const {
    return from_file ? read_blade(path) : synthetic_baseline(synthetic);
  }
};

struct ExperimentConfig {
  nlohmann::json document;  // fully resolved
  std::string name;
  OptimizerConfig optimizer;
  std::size_t n_hh = 9;
  SearchBounds bounds;
  EvaluatorConfig evaluator;
  Budget budget;
  std::size_t max_parallel = 4;
  std::size_t max_failed_generations = 5;
  BaselineSource baseline;
  std::filesystem::path output_dir;

  [[nodiscard]] std::size_t dimension() const { return search_dimension(n_hh); }
};

/// Non-negative integer member; floats and negative numbers are rejected
/// instead of being wrapped.
inline std::uint64_t count_at(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

/// Typed view of a resolved document; all type and range errors surface as
/// ConfigError.
inline ExperimentConfig parse_experiment_config(const nlohmann::json& doc) {
  try {
    ExperimentConfig c;
    c.document = doc;
    if (doc.at("schema_version").get<int>() != kConfigSchemaVersion) {
      throw ConfigError("unsupported configuration schema_version");
    }
    c.name = doc.at("name").get<std::string>();
    c.n_hh = count_at(doc, "n_hh");
    if (c.n_hh == 0) throw ConfigError("n_hh must be positive");

    const auto& o = doc.at("optimizer");
    c.optimizer.kind = optimizer_kind_from_string(o.at("kind").get<std::string>());
    c.optimizer.seed = count_at(o, "seed");
    c.optimizer.dimension = search_dimension(c.n_hh);
    if (!o.at("start").is_null()) c.optimizer.start = o.at("start").get<std::vector<double>>();
    const auto& cma = o.at("cma");
    c.optimizer.cma.lambda = count_at(cma, "lambda");
    c.optimizer.cma.mu = count_at(cma, "mu");
    c.optimizer.cma.sigma0 = cma.at("sigma0").get<double>();
    c.optimizer.cma.max_resamples = count_at(cma, "max_resamples");
    const auto& pso = o.at("pso");
    c.optimizer.pso.particles = count_at(pso, "particles");
    c.optimizer.pso.omega = pso.at("omega").get<double>();
    c.optimizer.pso.phi1 = pso.at("phi1").get<double>();
    c.optimizer.pso.phi2 = pso.at("phi2").get<double>();
    c.optimizer.pso.v_max = pso.at("v_max").get<double>();
    c.optimizer.validate();

    const auto& ss = doc.at("search_space");
    c.bounds.amplitude_fraction = ss.at("amplitude_fraction").get<double>();
    c.bounds.rotation = ss.at("rotation_deg").get<double>() * std::numbers::pi / 180.0;
    c.bounds.shift_fraction = ss.at("shift_fraction").get<double>();
    if (!(c.bounds.amplitude_fraction > 0.0 && c.bounds.rotation > 0.0 && c.bounds.shift_fraction > 0.0)) {
      throw ConfigError("search_space bounds must be positive");
    }

    const auto& e = doc.at("evaluator");
    const auto kind = e.at("kind").get<std::string>();
    if (kind == "surrogate") {
      c.evaluator.kind = EvaluatorKind::surrogate;
    } else if (kind == "external") {
      c.evaluator.kind = EvaluatorKind::external;
    } else if (kind == "benchmark") {
      c.evaluator.kind = EvaluatorKind::benchmark;
    } else {
      throw ConfigError("unknown evaluator kind '" + kind + "'");
    }
    c.evaluator.check_feasibility = e.at("check_feasibility").is_null()
                                        ? c.evaluator.kind == EvaluatorKind::external
                                        : e.at("check_feasibility").get<bool>();
    c.evaluator.feasibility.min_thickness_fraction = e.at("min_thickness_fraction").get<double>();
    const auto& f = e.at("fitness");
    c.evaluator.fitness.gamma = f.at("gamma").get<double>();
    c.evaluator.fitness.averaging_window = count_at(f, "averaging_window");
    c.evaluator.fitness.penalty_nonconverged = f.at("penalty_nonconverged").get<double>();
    c.evaluator.fitness.penalty_infeasible = f.at("penalty_infeasible").get<double>();
    c.evaluator.fitness.validate();
    const auto& s = e.at("surrogate");
    auto& sc = c.evaluator.surrogate;
    sc.seed = count_at(s, "seed");
    sc.bumps = count_at(s, "bumps");
    sc.base_level = s.at("base_level").get<double>();
    sc.curvature = s.at("curvature").get<double>();
    sc.height_min = s.at("height_min").get<double>();
    sc.height_max = s.at("height_max").get<double>();
    sc.width_min = s.at("width_min").get<double>();
    sc.width_max = s.at("width_max").get<double>();
    sc.series_length = count_at(s, "series_length");
    if (!s.at("anchor").is_null()) sc.anchor = s.at("anchor").get<std::vector<double>>();
    for (const auto& b : s.at("explicit_bumps")) {
      sc.explicit_bumps.push_back(
          {b.at("center").get<std::vector<double>>(), b.at("height").get<double>(), b.at("width").get<double>()});
    }
    const auto& x = e.at("external");
    c.evaluator.external.command = x.at("command").get<std::string>();
    c.evaluator.external.timeout_seconds = x.at("timeout_seconds").get<double>();
    if (!(c.evaluator.external.timeout_seconds > 0.0)) throw ConfigError("external timeout must be positive");
    if (c.evaluator.kind == EvaluatorKind::external && c.evaluator.external.command.empty()) {
      throw ConfigError("external evaluator needs evaluator.external.command");
    }
    c.evaluator.benchmark = e.at("benchmark").at("name").get<std::string>();
    if (c.evaluator.benchmark != "sphere" && c.evaluator.benchmark != "rosenbrock" &&
        c.evaluator.benchmark != "rastrigin") {
      throw ConfigError("unknown benchmark '" + c.evaluator.benchmark + "'");
    }

    const auto& bud = doc.at("budget");
    c.budget.max_generations = count_at(bud, "max_generations");
    if (!bud.at("max_evaluations").is_null()) c.budget.max_evaluations = count_at(bud, "max_evaluations");
    c.max_parallel = count_at(doc, "max_parallel");
    if (c.max_parallel == 0) throw ConfigError("max_parallel must be at least 1");
    c.max_failed_generations = count_at(doc, "max_failed_generations");
    if (c.max_failed_generations == 0) throw ConfigError("max_failed_generations must be at least 1");

    const auto& base = doc.at("baseline");
    const auto source = base.at("source").get<std::string>();
    if (source == "file") {
      c.baseline.from_file = true;
      if (base.at("path").is_null()) throw ConfigError("baseline.source=file needs baseline.path");
      c.baseline.path = base.at("path").get<std::string>();
    } else if (source != "synthetic") {
      throw ConfigError("baseline.source must be synthetic or file");
    }
    const auto& syn = base.at("synthetic");
    auto& sb = c.baseline.synthetic;
    sb.sections = count_at(syn, "sections");
    sb.points_per_section = count_at(syn, "points_per_section");
    sb.hub_radius = syn.at("hub_radius").get<double>();
    sb.tip_radius = syn.at("tip_radius").get<double>();
    sb.chord_hub = syn.at("chord_hub").get<double>();
    sb.chord_tip = syn.at("chord_tip").get<double>();
    sb.thickness_hub = syn.at("thickness_hub").get<double>();
    sb.thickness_tip = syn.at("thickness_tip").get<double>();
    sb.camber_hub = syn.at("camber_hub").get<double>();
    sb.camber_tip = syn.at("camber_tip").get<double>();
    sb.camber_position = syn.at("camber_position").get<double>();
    sb.stagger_hub_deg = syn.at("stagger_hub_deg").get<double>();
    sb.stagger_tip_deg = syn.at("stagger_tip_deg").get<double>();

    c.output_dir = doc.at("output_dir").get<std::string>();
    c.evaluator.external.work_root = x.at("work_dir").is_null() ? c.output_dir / "work"
                                                                : std::filesystem::path(x.at("work_dir").get<std::string>());
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("configuration: ") + e.what());
  }
}

}  // namespace bladeopt
