// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0
//
// Read-only transforms of run records: convergence tables, cross-run
// comparison and geometry difference fields.
//
// Tables are tab-separated with one header row:
//
//   scatter.tsv               run generation index evaluation fitness eta_avg
//                             eta_normalized penalty
//   incumbent_generation.tsv  run generation incumbent_fitness
//   incumbent_evaluation.tsv  run evaluation incumbent_fitness
//
// `evaluation` counts from 1 with the baseline as evaluation 1. Missing
// normalized efficiencies are written as "nan".

#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bladeopt/blade_io.hpp"
#include "bladeopt/errors.hpp"
#include "bladeopt/geometry.hpp"
#include "bladeopt/harness.hpp"

namespace bladeopt {

enum class ConvergenceAxis { generation, evaluation };

inline ConvergenceAxis convergence_axis_from_string(const std::string& s) {
  if (s == "generation") return ConvergenceAxis::generation;
  if (s == "evaluation") return ConvergenceAxis::evaluation;
  throw ConfigError("unknown convergence axis '" + s + "' (expected generation or evaluation)");
}

struct ConvergenceTables {
  std::filesystem::path scatter;
  std::filesystem::path incumbent;
  std::size_t scatter_rows = 0;
  std::size_t incumbent_rows = 0;
};

inline ConvergenceTables convergence_export(const std::vector<RunRecord>& records, ConvergenceAxis axis,
                                            const std::filesystem::path& out_dir) {
  if (records.empty()) throw DomainError("convergence_export: no records");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  ConvergenceTables t;
  t.scatter = out_dir / "scatter.tsv";
  t.incumbent = out_dir / (axis == ConvergenceAxis::generation ? "incumbent_generation.tsv"
                                                                : "incumbent_evaluation.tsv");
  std::ofstream sc(t.scatter);
  std::ofstream inc(t.incumbent);
  if (!sc || !inc) throw IoError("cannot write convergence tables in " + out_dir.string());
  sc << "run\tgeneration\tindex\tevaluation\tfitness\teta_avg\teta_normalized\tpenalty\n";
  inc << (axis == ConvergenceAxis::generation ? "run\tgeneration\tincumbent_fitness\n"
                                              : "run\tevaluation\tincumbent_fitness\n");
  for (const auto& rec : records) {
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
      const auto& r = rec.rows[i];
      const auto n = rec.normalized(r.eta_avg);
      sc << rec.name << '\t' << r.generation << '\t' << r.index << '\t' << i + 2 << '\t' << format_double(r.fitness)
         << '\t' << format_double(r.eta_avg) << '\t' << (n ? format_double(*n) : "nan") << '\t'
         << format_double(r.penalty) << '\n';
      ++t.scatter_rows;
    }
    const auto series = best_so_far(rec);
    const auto& values = axis == ConvergenceAxis::generation ? series.by_generation : series.by_evaluation;
    for (std::size_t i = 0; i < values.size(); ++i) {
      inc << rec.name << '\t' << i + 1 << '\t' << format_double(values[i]) << '\n';
      ++t.incumbent_rows;
    }
  }
  if (!sc.flush() || !inc.flush()) throw IoError("failed writing convergence tables in " + out_dir.string());
  return t;
}

struct CompareOptions {
  double epsilon_f = 0.01;             // relative fitness spread threshold
  std::optional<double> delta_g;       // absolute distance threshold; measured when empty
};

struct ComparisonSummary {
  std::vector<std::string> labels;
  std::vector<double> best_fitness;
  std::vector<double> best_eta;
  std::vector<std::vector<double>> distance;
  double fitness_spread = 0.0;
  double min_distance = 0.0;
  double max_distance = 0.0;
  double epsilon_f = 0.01;
  double delta_g = 0.0;
  double noise = 0.0;
  bool multimodal = false;

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"labels", labels},
            {"best_fitness", best_fitness},
            {"best_eta", best_eta},
            {"distance", distance},
            {"fitness_spread", fitness_spread},
            {"min_distance", min_distance},
            {"max_distance", max_distance},
            {"epsilon_f", epsilon_f},
            {"delta_g", delta_g},
            {"noise", noise},
            {"multimodal", multimodal}};
  }
};

/// Distance induced by numerical round trips of a blade: text serialization,
/// and a rotation about each leading edge there and back.
inline double round_trip_noise(const BladeGeometry& blade) {
  std::stringstream ss;
  write_blade(ss, blade);
  const auto reread = read_blade(ss);
  auto rotated = blade;
  for (auto& s : rotated.sections) {
    const Vec2 le = s.leading_edge_point();
    for (auto& p : s.points) p = rotate_about(rotate_about(p, le, 1.0), le, -1.0);
  }
  return std::max(geometry_distance(blade, reread), geometry_distance(blade, rotated));
}

/// (max - min) / min of the values; 0 when all are equal.
inline double relative_spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  if (*hi == *lo) return 0.0;
  if (!(*lo > 0.0)) return std::numeric_limits<double>::infinity();
  return (*hi - *lo) / *lo;
}

inline ComparisonSummary compare_runs(const std::vector<RunRecord>& records, const CompareOptions& options = {}) {
  if (records.size() < 2) throw DomainError("compare_runs: need at least two records");
  std::vector<const BladeGeometry*> blades;
  ComparisonSummary s;
  s.epsilon_f = options.epsilon_f;
  for (const auto& rec : records) {
    if (!rec.best_blade) throw DomainError("compare_runs: run '" + rec.name + "' has no final blade");
    blades.push_back(&*rec.best_blade);
    s.labels.push_back(rec.name);
    s.best_fitness.push_back(rec.best().fitness);
    s.best_eta.push_back(rec.best().eta_avg);
  }
  for (std::size_t i = 1; i < blades.size(); ++i) require_same_topology(*blades[0], *blades[i], "compare_runs");

  const std::size_t n = records.size();
  s.distance.assign(n, std::vector<double>(n, 0.0));
  s.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = geometry_distance(*blades[i], *blades[j]);
      s.distance[i][j] = s.distance[j][i] = d;
      s.min_distance = std::min(s.min_distance, d);
      s.max_distance = std::max(s.max_distance, d);
    }
  }
  s.fitness_spread = relative_spread(s.best_fitness);
  for (const auto* b : blades) {
    s.noise = std::max({s.noise, round_trip_noise(*b), DBL_EPSILON * coordinate_scale(*b)});
  }
  s.delta_g = options.delta_g ? *options.delta_g : 10.0 * s.noise;
  s.multimodal = s.fitness_spread < s.epsilon_f && s.min_distance > s.delta_g;
  return s;
}

/// Per-point normal displacement of `optimized` relative to `baseline`, in
/// loft vertex order.
inline std::vector<double> flattened_diff(const BladeGeometry& baseline, const BladeGeometry& optimized) {
  std::vector<double> out;
  for (const auto& section : geometry_diff(baseline, optimized)) out.insert(out.end(), section.begin(), section.end());
  return out;
}

/// Lofted baseline surface carrying the scalar "normal_displacement".
inline void diff_export(const BladeGeometry& baseline, const BladeGeometry& optimized,
                        const std::filesystem::path& path) {
  write_vtk_polydata(path, baseline, flattened_diff(baseline, optimized), "normal_displacement");
}

}  // namespace bladeopt
