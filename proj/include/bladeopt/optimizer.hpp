// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bladeopt/cma_es.hpp"
#include "bladeopt/errors.hpp"
#include "bladeopt/particle_swarm.hpp"

namespace bladeopt {

enum class OptimizerKind { cma_es, pso };

inline std::string to_string(OptimizerKind k) { return k == OptimizerKind::cma_es ? "cma-es" : "pso"; }

inline OptimizerKind optimizer_kind_from_string(const std::string& s) {
  if (s == "cma-es" || s == "cmaes" || s == "cma") return OptimizerKind::cma_es;
  if (s == "pso") return OptimizerKind::pso;
  throw ConfigError("unknown optimizer kind '" + s + "' (expected cma-es or pso)");
}

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::cma_es;
  std::size_t dimension = 0;
  std::uint64_t seed = 1;
  CmaSettings cma;
  PsoSettings pso;
  std::optional<std::vector<double>> start;  // CMA mean; default 0.5 everywhere

  [[nodiscard]] std::size_t population_size() const {
    return kind == OptimizerKind::cma_es ? cma.lambda : pso.particles;
  }

  void validate() const {
    if (dimension == 0) throw ConfigError("optimizer: dimension must be positive");
    if (cma.mu < 1 || cma.mu > cma.lambda) throw ConfigError("optimizer: need 1 <= mu <= lambda");
    if (!(cma.sigma0 > 0.0)) throw ConfigError("optimizer: sigma0 must be positive");
    if (pso.particles < 2) throw ConfigError("optimizer: need at least 2 particles");
    if (!(pso.v_max > 0.0)) throw ConfigError("optimizer: v_max must be positive");
    if (start && start->size() != dimension) throw ConfigError("optimizer: start point dimension mismatch");
  }
};

/// Either optimizer behind one ask/tell surface, with versioned snapshots.
class Optimizer {
 public:
  static constexpr int kSnapshotVersion = 1;

  explicit Optimizer(const OptimizerConfig& config) : config_(config), impl_(make(config)) {}

  [[nodiscard]] const OptimizerConfig& config() const { return config_; }
  [[nodiscard]] std::size_t population_size() const { return config_.population_size(); }

  std::vector<std::vector<double>> ask() {
    return std::visit([](auto& o) { return o.ask(); }, impl_);
  }

  void tell(std::span<const double> fitness) {
    std::visit([&](auto& o) { o.tell(fitness); }, impl_);
  }

  [[nodiscard]] double best_fitness() const {
    return std::visit([](const auto& o) { return o.best_fitness(); }, impl_);
  }

  [[nodiscard]] std::vector<double> best_vector() const {
    return std::visit([](const auto& o) { return o.best_vector(); }, impl_);
  }

  [[nodiscard]] std::size_t generation() const {
    return std::visit([](const auto& o) { return o.generation(); }, impl_);
  }

  [[nodiscard]] const CmaEs* cma() const { return std::get_if<CmaEs>(&impl_); }
  [[nodiscard]] const ParticleSwarm* pso() const { return std::get_if<ParticleSwarm>(&impl_); }

  [[nodiscard]] nlohmann::json to_json() const {
    return {{"version", kSnapshotVersion},
            {"kind", to_string(config_.kind)},
            {"dimension", config_.dimension},
            {"state", std::visit([](const auto& o) { return o.to_json(); }, impl_)}};
  }

  static Optimizer from_json(const OptimizerConfig& config, const nlohmann::json& j) {
    if (j.at("version").get<int>() != kSnapshotVersion) throw ConfigError("unsupported optimizer snapshot version");
    if (optimizer_kind_from_string(j.at("kind").get<std::string>()) != config.kind ||
        j.at("dimension").get<std::size_t>() != config.dimension) {
      throw ConfigError("optimizer snapshot does not match the configuration");
    }
    Optimizer out(config);
    if (config.kind == OptimizerKind::cma_es) {
      out.impl_ = CmaEs::from_json(config.dimension, config.cma, j.at("state"));
    } else {
      out.impl_ = ParticleSwarm::from_json(config.dimension, config.pso, j.at("state"));
    }
    return out;
  }

 private:
  static std::variant<CmaEs, ParticleSwarm> make(const OptimizerConfig& c) {
    c.validate();
    if (c.kind == OptimizerKind::cma_es) return CmaEs(c.dimension, c.cma, c.seed, c.start);
    return ParticleSwarm(c.dimension, c.pso, c.seed);
  }

  OptimizerConfig config_;
  std::variant<CmaEs, ParticleSwarm> impl_;
};

}  // namespace bladeopt
