// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0
//
// Global-best particle swarm with inertia weight on the unit cube:
//
//   v <- omega v + phi1 r1 (p_best - x) + phi2 r2 (g_best - x)
//   x <- x + v
//
// r1, r2 are drawn per component and update. Velocities are clamped to
// [-v_max, v_max]; a position leaving the cube is clamped and the velocity
// component that carried it out is zeroed.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bladeopt/cma_es.hpp"
#include "bladeopt/errors.hpp"
#include "bladeopt/rng.hpp"

namespace bladeopt {

struct PsoSettings {
  std::size_t particles = 12;
  double omega = 0.8;
  double phi1 = 1.7;
  double phi2 = 1.4;
  double v_max = 0.5;
};

class ParticleSwarm {
 public:
  ParticleSwarm(std::size_t dimension, const PsoSettings& settings, std::uint64_t seed)
      : n_(dimension), settings_(settings), rng_(seed) {
    if (n_ == 0) throw DomainError("ParticleSwarm: dimension must be positive");
    if (settings.particles < 2) throw DomainError("ParticleSwarm: need at least 2 particles");
    if (!(settings.v_max > 0.0)) throw DomainError("ParticleSwarm: v_max must be positive");
    positions_.assign(settings.particles, std::vector<double>(n_));
    velocities_.assign(settings.particles, std::vector<double>(n_));
    for (std::size_t i = 0; i < settings.particles; ++i) {
      for (auto& x : positions_[i]) x = rng_.uniform();
      for (auto& v : velocities_[i]) v = rng_.uniform(-settings.v_max, settings.v_max);
    }
    personal_best_ = positions_;
    personal_best_f_.assign(settings.particles, std::numeric_limits<double>::infinity());
  }

  [[nodiscard]] std::size_t dimension() const { return n_; }
  [[nodiscard]] std::size_t population_size() const { return settings_.particles; }
  [[nodiscard]] const PsoSettings& settings() const { return settings_; }
  [[nodiscard]] std::size_t generation() const { return generation_; }
  [[nodiscard]] const std::vector<std::vector<double>>& positions() const { return positions_; }
  [[nodiscard]] const std::vector<std::vector<double>>& velocities() const { return velocities_; }
  [[nodiscard]] double best_fitness() const { return global_best_f_; }
  [[nodiscard]] const std::vector<double>& best_vector() const { return global_best_; }
  [[nodiscard]] bool awaiting_tell() const { return awaiting_; }

  std::vector<std::vector<double>> ask() {
    if (awaiting_) throw Error("ParticleSwarm::ask: previous candidates have not been told");
    if (generation_ > 0) move();
    awaiting_ = true;
    return positions_;
  }

  void tell(std::span<const double> fitness) {
    if (!awaiting_) throw Error("ParticleSwarm::tell: no outstanding ask");
    detail::check_fitnesses(fitness, settings_.particles);
    awaiting_ = false;
    ++generation_;
    for (std::size_t i = 0; i < settings_.particles; ++i) {
      if (fitness[i] < personal_best_f_[i]) {
        personal_best_f_[i] = fitness[i];
        personal_best_[i] = positions_[i];
      }
      if (personal_best_f_[i] < global_best_f_) {
        global_best_f_ = personal_best_f_[i];
        global_best_ = personal_best_[i];
      }
    }
  }

  [[nodiscard]] nlohmann::json to_json() const {
    if (awaiting_) throw Error("ParticleSwarm: cannot snapshot while candidates are outstanding");
    std::vector<nlohmann::json> pbest_f;
    for (double f : personal_best_f_) pbest_f.push_back(detail::optional_fitness(f));
    return {{"positions", positions_},
            {"velocities", velocities_},
            {"personal_best", personal_best_},
            {"personal_best_fitness", pbest_f},
            {"global_best", global_best_},
            {"global_best_fitness", detail::optional_fitness(global_best_f_)},
            {"generation", generation_},
            {"rng", detail::rng_to_json(rng_)}};
  }

  static ParticleSwarm from_json(std::size_t dimension, const PsoSettings& settings, const nlohmann::json& j) {
    ParticleSwarm pso(dimension, settings, 0);
    pso.positions_ = j.at("positions").get<std::vector<std::vector<double>>>();
    pso.velocities_ = j.at("velocities").get<std::vector<std::vector<double>>>();
    pso.personal_best_ = j.at("personal_best").get<std::vector<std::vector<double>>>();
    pso.personal_best_f_.clear();
    for (const auto& f : j.at("personal_best_fitness")) pso.personal_best_f_.push_back(detail::fitness_or_inf(f));
    pso.global_best_ = j.at("global_best").get<std::vector<double>>();
    pso.global_best_f_ = detail::fitness_or_inf(j.at("global_best_fitness"));
    pso.generation_ = j.at("generation").get<std::size_t>();
    pso.rng_ = detail::rng_from_json(j.at("rng"));
    if (pso.positions_.size() != settings.particles || pso.personal_best_f_.size() != settings.particles ||
        (!pso.positions_.empty() && pso.positions_.front().size() != dimension)) {
      throw ConfigError("PSO snapshot shape differs from configuration");
    }
    return pso;
  }

 private:
  void move() {
    const auto& s = settings_;
    for (std::size_t i = 0; i < s.particles; ++i) {
      auto& x = positions_[i];
      auto& v = velocities_[i];
      for (std::size_t d = 0; d < n_; ++d) {
        const double r1 = rng_.uniform();
        const double r2 = rng_.uniform();
        double vd = s.omega * v[d] + s.phi1 * r1 * (personal_best_[i][d] - x[d]) +
                    s.phi2 * r2 * (global_best_[d] - x[d]);
        vd = std::clamp(vd, -s.v_max, s.v_max);
        const double moved = x[d] + vd;
        if (moved < 0.0 || moved > 1.0) {
          x[d] = std::clamp(moved, 0.0, 1.0);
          v[d] = 0.0;
        } else {
          x[d] = moved;
          v[d] = vd;
        }
      }
    }
  }

  std::size_t n_;
  PsoSettings settings_;
  Rng rng_;
  std::size_t generation_ = 0;
  bool awaiting_ = false;
  std::vector<std::vector<double>> positions_, velocities_, personal_best_;
  std::vector<double> personal_best_f_;
  std::vector<double> global_best_;
  double global_best_f_ = std::numeric_limits<double>::infinity();
};

}  // namespace bladeopt
