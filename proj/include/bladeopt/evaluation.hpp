// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "bladeopt/errors.hpp"

namespace bladeopt {

struct FitnessConfig {
  double gamma = 1.4;
  std::size_t averaging_window = 1000;
  double penalty_nonconverged = 0.5;
  double penalty_infeasible = 1.0;

  void validate() const {
    if (!(gamma > 1.0)) throw ConfigError("fitness: gamma must exceed 1");
    if (averaging_window < 1) throw ConfigError("fitness: averaging window must be at least 1");
    if (!(penalty_nonconverged >= 0.0) || !(penalty_infeasible >= 0.0)) {
      throw ConfigError("fitness: penalties must be non-negative");
    }
  }
};

/// Mass-flow-averaged station quantities per solver iteration.
struct FlowStationData {
  std::vector<double> p_total_inlet, p_total_outlet;  // Pa
  std::vector<double> t_total_inlet, t_total_outlet;  // K

  [[nodiscard]] std::size_t size() const { return p_total_inlet.size(); }
};

struct PenaltyTerm {
  std::string label;
  double value = 0.0;

  bool operator==(const PenaltyTerm&) const = default;
};

struct FitnessReport {
  std::vector<double> efficiency_series;
  double eta_avg = 0.0;
  std::vector<PenaltyTerm> penalties;
  double penalty = 0.0;
  double fitness = 1.0;
  bool converged = false;
  bool feasible = true;
  std::string message;
};

/// Isentropic efficiency from total-pressure and total-temperature ratios:
/// ((p_out/p_in)^((gamma-1)/gamma) - 1) / (t_out/t_in - 1).
inline double isentropic_efficiency(double p_in, double p_out, double t_in, double t_out, double gamma = 1.4) {
  if (!(p_in > 0.0 && p_out > 0.0 && t_in > 0.0 && t_out > 0.0)) {
    throw DomainError("isentropic_efficiency: pressures and temperatures must be positive");
  }
  if (!(gamma > 1.0)) throw DomainError("isentropic_efficiency: gamma must exceed 1");
  if (t_out == t_in) throw DomainError("isentropic_efficiency: no temperature rise, efficiency undefined");
  return (std::pow(p_out / p_in, (gamma - 1.0) / gamma) - 1.0) / (t_out / t_in - 1.0);
}

inline std::vector<double> efficiency_series(const FlowStationData& d, double gamma) {
  const std::size_t n = d.size();
  if (d.p_total_outlet.size() != n || d.t_total_inlet.size() != n || d.t_total_outlet.size() != n) {
    throw DomainError("efficiency_series: station series have different lengths");
  }
  std::vector<double> eta(n);
  for (std::size_t i = 0; i < n; ++i) {
    eta[i] = isentropic_efficiency(d.p_total_inlet[i], d.p_total_outlet[i], d.t_total_inlet[i], d.t_total_outlet[i],
                                   gamma);
  }
  return eta;
}

/// Mean of the last min(window, size) entries.
inline double average_efficiency(std::span<const double> series, std::size_t window) {
  if (series.empty()) throw DomainError("average_efficiency: empty series");
  if (window == 0) throw DomainError("average_efficiency: window must be positive");
  const std::size_t n = std::min(window, series.size());
  const auto tail = series.last(n);
  return std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(n);
}

/// f = 1 - eta + sum of penalties; lower is better.
inline double fitness(double eta_avg, std::span<const PenaltyTerm> penalties) {
  if (!std::isfinite(eta_avg)) throw DomainError("fitness: efficiency must be finite");
  double p = 0.0;
  for (const auto& t : penalties) p += t.value;
  return 1.0 - eta_avg + p;
}

inline double normalized_efficiency(double eta, double eta_baseline) {
  if (!(eta_baseline > 0.0)) throw DomainError("normalized_efficiency: baseline efficiency must be positive");
  return eta / eta_baseline;
}

/// Report for a run that produced an efficiency series.
inline FitnessReport converged_report(std::vector<double> series, const FitnessConfig& cfg) {
  FitnessReport r;
  r.eta_avg = average_efficiency(series, cfg.averaging_window);
  r.efficiency_series = std::move(series);
  r.converged = true;
  r.feasible = true;
  r.fitness = fitness(r.eta_avg, r.penalties);
  return r;
}

/// Report for a candidate that produced no usable efficiency; eta counts as 0.
inline FitnessReport failed_report(bool feasible, const FitnessConfig& cfg, std::string message) {
  FitnessReport r;
  r.eta_avg = 0.0;
  r.converged = false;
  r.feasible = feasible;
  r.penalties.push_back(feasible ? PenaltyTerm{"nonconverged", cfg.penalty_nonconverged}
                                 : PenaltyTerm{"infeasible", cfg.penalty_infeasible});
  r.penalty = r.penalties.front().value;
  r.fitness = fitness(r.eta_avg, r.penalties);
  r.message = std::move(message);
  return r;
}

// Benchmark functions for optimizer validation. The unit cube is mapped
// affinely onto each function's conventional box.

inline double benchmark_function(const std::string& name, std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("benchmark_function: non-finite component");
  }
  if (name == "sphere") {
    double s = 0.0;
    for (double v : x) {
      const double z = -5.12 + 10.24 * v;
      s += z * z;
    }
    return s;
  }
  if (name == "rastrigin") {
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x) {
      const double z = -5.12 + 10.24 * v;
      s += z * z - 10.0 * std::cos(2.0 * std::numbers::pi * z);
    }
    return s;
  }
  if (name == "rosenbrock") {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double a = -2.048 + 4.096 * x[i];
      const double b = -2.048 + 4.096 * x[i + 1];
      s += 100.0 * (b - a * a) * (b - a * a) + (1.0 - a) * (1.0 - a);
    }
    return s;
  }
  throw DomainError("benchmark_function: unknown function '" + name + "'");
}

}  // namespace bladeopt
