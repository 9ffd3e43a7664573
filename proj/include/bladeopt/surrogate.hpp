// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0
//
// Synthetic multi-modal efficiency landscape over the unit search cube:
//
//   eta(x) = base_level - curvature * r(x, anchor)^2
//          + sum_k height_k * exp(-r(x, c_k)^2 / (2 width_k^2))
//
// with r(a, b) = ||a - b|| / sqrt(d), the RMS per-coordinate distance, so the
// same widths and curvature describe the landscape for every dimension.
// Anchor and bumps are drawn from the surrogate seed unless given explicitly.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bladeopt/errors.hpp"
#include "bladeopt/evaluation.hpp"
#include "bladeopt/rng.hpp"

namespace bladeopt {

struct SurrogateBump {
  std::vector<double> center;
  double height = 0.0;
  double width = 0.1;
};

struct SurrogateConfig {
  std::uint64_t seed = 7;
  std::size_t bumps = 8;
  double base_level = 0.85;
  double curvature = 0.2;
  double height_min = 0.01;
  double height_max = 0.015;
  double width_min = 0.05;
  double width_max = 0.12;
  std::size_t series_length = 1000;
  std::optional<std::vector<double>> anchor;
  std::vector<SurrogateBump> explicit_bumps;  // replaces the seeded bumps when non-empty
};

class SurrogateLandscape {
 public:
  SurrogateLandscape(const SurrogateConfig& cfg, std::size_t dimension) : cfg_(cfg), n_(dimension) {
    if (n_ == 0) throw ConfigError("surrogate: dimension must be positive");
    if (cfg.series_length == 0) throw ConfigError("surrogate: series length must be positive");
    if (!(cfg.curvature >= 0.0)) throw ConfigError("surrogate: curvature must be non-negative");
    Rng rng(cfg.seed);
    if (cfg.anchor) {
      if (cfg.anchor->size() != n_) throw ConfigError("surrogate: anchor dimension mismatch");
      anchor_ = *cfg.anchor;
    } else {
      anchor_.resize(n_);
      for (auto& a : anchor_) a = rng.uniform(0.3, 0.7);
    }
    if (!cfg.explicit_bumps.empty()) {
      bumps_ = cfg.explicit_bumps;
      for (const auto& b : bumps_) {
        if (b.center.size() != n_) throw ConfigError("surrogate: bump center dimension mismatch");
      }
    } else {
      if (!(cfg.height_min <= cfg.height_max) || !(cfg.width_min > 0.0 && cfg.width_min <= cfg.width_max)) {
        throw ConfigError("surrogate: invalid height or width range");
      }
      for (std::size_t k = 0; k < cfg.bumps; ++k) {
        SurrogateBump b;
        b.center.resize(n_);
        for (auto& c : b.center) c = rng.uniform(0.2, 0.8);
        b.height = rng.uniform(cfg.height_min, cfg.height_max);
        b.width = rng.uniform(cfg.width_min, cfg.width_max);
        bumps_.push_back(std::move(b));
      }
    }
    double total_height = 0.0;
    for (const auto& b : bumps_) {
      if (!(b.height >= 0.0) || !(b.width > 0.0)) throw ConfigError("surrogate: bump heights >= 0, widths > 0");
      total_height += b.height;
    }
    // Every r^2 lies in [0, 1] on the cube, so these bounds keep eta in (0, 1).
    if (!(cfg.base_level - cfg.curvature > 0.0) || !(cfg.base_level + total_height < 1.0)) {
      throw ConfigError("surrogate: parameters allow efficiencies outside (0, 1)");
    }
  }

  [[nodiscard]] std::size_t dimension() const { return n_; }
  [[nodiscard]] const std::vector<double>& anchor() const { return anchor_; }
  [[nodiscard]] const std::vector<SurrogateBump>& bumps() const { return bumps_; }
  [[nodiscard]] const SurrogateConfig& config() const { return cfg_; }

  /// RMS per-coordinate squared distance.
  [[nodiscard]] double r2(std::span<const double> a, std::span<const double> b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s / static_cast<double>(n_);
  }

  [[nodiscard]] double base(std::span<const double> x) const {
    return cfg_.base_level - cfg_.curvature * r2(x, anchor_);
  }

  [[nodiscard]] double efficiency(std::span<const double> x) const {
    check(x);
    double eta = base(x);
    for (const auto& b : bumps_) eta += b.height * std::exp(-r2(x, b.center) / (2.0 * b.width * b.width));
    return eta;
  }

  [[nodiscard]] FitnessReport evaluate(std::span<const double> x, const FitnessConfig& fit = {}) const {
    return converged_report(std::vector<double>(cfg_.series_length, efficiency(x)), fit);
  }

 private:
  void check(std::span<const double> x) const {
    if (x.size() != n_) throw DomainError("surrogate: vector has wrong dimension");
    for (double v : x) {
      if (!(v >= 0.0 && v <= 1.0)) throw DomainError("surrogate: vector outside the unit cube");
    }
  }

  SurrogateConfig cfg_;
  std::size_t n_;
  std::vector<double> anchor_;
  std::vector<SurrogateBump> bumps_;
};

/// One-shot surrogate evaluation; a pure function of (x, cfg).
inline FitnessReport evaluate_surrogate(std::span<const double> x, const SurrogateConfig& cfg,
                                        const FitnessConfig& fit = {}) {
  return SurrogateLandscape(cfg, x.size()).evaluate(x, fit);
}

}  // namespace bladeopt
