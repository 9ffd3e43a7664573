// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "bladeopt/config.hpp"
#include "bladeopt/deformation.hpp"
#include "bladeopt/evaluation.hpp"
#include "bladeopt/external.hpp"
#include "bladeopt/feasibility.hpp"
#include "bladeopt/search_space.hpp"
#include "bladeopt/surrogate.hpp"

namespace bladeopt {

/// Candidate evaluation for one experiment. Immutable after construction;
/// evaluate() may be called from several threads at once.
class CandidateEvaluator {
 public:
  explicit CandidateEvaluator(const ExperimentConfig& cfg)
      : cfg_(cfg.evaluator),
        baseline_(cfg.baseline.load()),
        space_(SearchSpace::for_blade(baseline_, cfg.n_hh, cfg.bounds)) {
    if (cfg_.kind == EvaluatorKind::surrogate) surrogate_.emplace(cfg_.surrogate, space_.dimension());
  }

  [[nodiscard]] const BladeGeometry& baseline() const { return baseline_; }
  [[nodiscard]] const SearchSpace& space() const { return space_; }
  [[nodiscard]] const EvaluatorConfig& config() const { return cfg_; }
  [[nodiscard]] const std::optional<SurrogateLandscape>& surrogate() const { return surrogate_; }

  [[nodiscard]] BladeGeometry blade_for(std::span<const double> x) const {
    return build_blade(baseline_, space_.decode(x));
  }

  /// `label` names the work directory of external evaluations.
  [[nodiscard]] FitnessReport evaluate(std::span<const double> x, const std::string& label) const {
    if (cfg_.kind == EvaluatorKind::benchmark) {
      FitnessReport r;
      r.fitness = benchmark_function(cfg_.benchmark, x);
      r.eta_avg = 1.0 - r.fitness;
      r.efficiency_series = {r.eta_avg};
      r.converged = true;
      return r;
    }
    const auto params = space_.decode(x);
    std::optional<BladeGeometry> blade;
    if (cfg_.check_feasibility || cfg_.kind == EvaluatorKind::external) blade = build_blade(baseline_, params);
    if (cfg_.kind == EvaluatorKind::external) {
      return evaluate_external(*blade, params, x, cfg_.external, cfg_.fitness, label, cfg_.check_feasibility,
                               cfg_.feasibility);
    }
    if (cfg_.check_feasibility) {
      const auto violations = check_feasibility(*blade, cfg_.feasibility);
      if (!violations.empty()) return failed_report(false, cfg_.fitness, "infeasible geometry");
    }
    return surrogate_->evaluate(x, cfg_.fitness);
  }

 private:
  EvaluatorConfig cfg_;
  BladeGeometry baseline_;
  SearchSpace space_;
  std::optional<SurrogateLandscape> surrogate_;
};

/// Run fn(i) for i in [0, count) on at most max_parallel threads. Results are
/// returned in index order whatever the completion order; the first exception
/// by index is rethrown after all workers finish.
template <class Fn>
auto evaluate_in_order(std::size_t count, std::size_t max_parallel, Fn&& fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(std::max<std::size_t>(max_parallel, 1), count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace bladeopt
