// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0
//
// (mu/mu_w, lambda)-CMA-ES with ask/tell on the unit cube.
//
// Strategy constants follow Hansen's tutorial defaults:
//   w_i   = ln(mu + 1/2) - ln(i), normalized      mu_eff = 1 / sum w_i^2
//   c_s   = (mu_eff + 2) / (n + mu_eff + 5)
//   d_s   = 1 + 2 max(0, sqrt((mu_eff - 1)/(n + 1)) - 1) + c_s
//   c_c   = (4 + mu_eff/n) / (n + 4 + 2 mu_eff/n)
//   c_1   = 2 / ((n + 1.3)^2 + mu_eff)
//   c_mu  = min(1 - c_1, 2 (mu_eff - 2 + 1/mu_eff) / ((n + 2)^2 + mu_eff))
// Out-of-box samples are redrawn up to max_resamples times, then clamped; the
// update uses the clamped points.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "bladeopt/errors.hpp"
#include "bladeopt/rng.hpp"

namespace bladeopt {

struct CmaSettings {
  std::size_t lambda = 12;
  std::size_t mu = 4;
  double sigma0 = 0.05;
  std::size_t max_resamples = 10;
};

/// Component-wise clamp to [0, 1].
inline std::vector<double> bound_handle(std::vector<double> x) {
  for (auto& v : x) v = std::clamp(v, 0.0, 1.0);
  return x;
}

inline bool in_unit_cube(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

namespace detail {

inline nlohmann::json optional_fitness(double f) { return std::isfinite(f) ? nlohmann::json(f) : nlohmann::json(); }

inline double fitness_or_inf(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

inline nlohmann::json rng_to_json(const Rng& rng) {
  const auto& s = rng.state();
  return {{"algorithm", kRngAlgorithm},
          {"words", s.words},
          {"has_spare", s.has_spare},
          {"spare", s.spare}};
}

inline Rng rng_from_json(const nlohmann::json& j) {
  if (j.at("algorithm").get<std::string>() != kRngAlgorithm) {
    throw ConfigError("checkpoint uses an unknown RNG algorithm: " + j.at("algorithm").get<std::string>());
  }
  Rng::State s;
  s.words = j.at("words").get<std::array<std::uint64_t, 4>>();
  s.has_spare = j.at("has_spare").get<bool>();
  s.spare = j.at("spare").get<double>();
  return Rng::from_state(s);
}

inline std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline void check_fitnesses(std::span<const double> f, std::size_t expected) {
  if (f.size() != expected) {
    throw DomainError("tell: expected " + std::to_string(expected) + " fitness values, got " +
                      std::to_string(f.size()));
  }
  for (double v : f) {
    if (!std::isfinite(v)) throw DomainError("tell: fitness values must be finite");
  }
}

// Indices sorted by fitness; ties keep candidate order.
inline std::vector<std::size_t> ranking(std::span<const double> f) {
  std::vector<std::size_t> idx(f.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
  return idx;
}

}  // namespace detail

class CmaEs {
 public:
  CmaEs(std::size_t dimension, const CmaSettings& settings, std::uint64_t seed,
        const std::optional<std::vector<double>>& start = std::nullopt)
      : n_(dimension), settings_(settings), rng_(seed) {
    if (n_ == 0) throw DomainError("CmaEs: dimension must be positive");
    if (settings.mu < 1 || settings.mu > settings.lambda) throw DomainError("CmaEs: need 1 <= mu <= lambda");
    if (!(settings.sigma0 > 0.0)) throw DomainError("CmaEs: sigma0 must be positive");
    if (start && start->size() != n_) {
      throw DomainError("CmaEs: start point has " + std::to_string(start->size()) + " components, expected " +
                        std::to_string(n_));
    }
    init_constants();
    mean_ = start ? detail::to_eigen(*start) : Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n_), 0.5);
    sigma_ = settings.sigma0;
    C_ = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    ps_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
    pc_ = ps_;
  }

  [[nodiscard]] std::size_t dimension() const { return n_; }
  [[nodiscard]] std::size_t population_size() const { return settings_.lambda; }
  [[nodiscard]] const CmaSettings& settings() const { return settings_; }
  [[nodiscard]] std::size_t generation() const { return generation_; }
  [[nodiscard]] double sigma() const { return sigma_; }
  [[nodiscard]] const Eigen::VectorXd& mean() const { return mean_; }
  [[nodiscard]] const Eigen::MatrixXd& covariance() const { return C_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] double mu_eff() const { return mueff_; }
  [[nodiscard]] double best_fitness() const { return best_f_; }
  [[nodiscard]] const std::vector<double>& best_vector() const { return best_x_; }
  /// Candidate indices chosen as parents by the last tell, best first.
  [[nodiscard]] const std::vector<std::size_t>& last_selection() const { return last_selection_; }
  [[nodiscard]] bool awaiting_tell() const { return awaiting_; }

  std::vector<std::vector<double>> ask() {
    if (awaiting_) throw Error("CmaEs::ask: previous candidates have not been told");
    decompose();
    const auto n = static_cast<Eigen::Index>(n_);
    asked_.clear();
    std::vector<std::vector<double>> out;
    out.reserve(settings_.lambda);
    Eigen::VectorXd z(n);
    for (std::size_t k = 0; k < settings_.lambda; ++k) {
      Eigen::VectorXd x;
      for (std::size_t attempt = 0;; ++attempt) {
        for (Eigen::Index i = 0; i < n; ++i) z[i] = rng_.normal();
        x = mean_ + sigma_ * (B_ * D_.cwiseProduct(z));
        if ((x.array() >= 0.0).all() && (x.array() <= 1.0).all()) break;
        if (attempt >= settings_.max_resamples) {
          x = x.cwiseMax(0.0).cwiseMin(1.0);
          break;
        }
      }
      asked_.push_back(x);
      out.push_back(detail::to_std(x));
    }
    awaiting_ = true;
    return out;
  }

  void tell(std::span<const double> fitness) {
    if (!awaiting_) throw Error("CmaEs::tell: no outstanding ask");
    detail::check_fitnesses(fitness, settings_.lambda);
    const auto order = detail::ranking(fitness);
    awaiting_ = false;
    ++generation_;
    if (fitness[order.front()] < best_f_) {
      best_f_ = fitness[order.front()];
      best_x_ = detail::to_std(asked_[order.front()]);
    }
    last_selection_.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(settings_.mu));

    if (fitness[order.front()] == fitness[order.back()]) {
      // Flat fitness: no ranking information, widen the search instead.
      sigma_ *= std::exp(0.2 + cs_ / ds_);
      return;
    }

    const auto n = static_cast<Eigen::Index>(n_);
    const Eigen::VectorXd old_mean = mean_;
    Eigen::VectorXd new_mean = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < settings_.mu; ++i) new_mean += weights_[i] * asked_[order[i]];
    const Eigen::VectorXd y_w = (new_mean - old_mean) / sigma_;
    mean_ = new_mean;

    ps_ = (1.0 - cs_) * ps_ + std::sqrt(cs_ * (2.0 - cs_) * mueff_) * (inv_sqrt_C_ * y_w);
    const double ps_norm = ps_.norm();
    const double gen = static_cast<double>(generation_);
    const bool hsig = ps_norm / std::sqrt(1.0 - std::pow(1.0 - cs_, 2.0 * gen)) <
                      (1.4 + 2.0 / (static_cast<double>(n_) + 1.0)) * chi_n_;
    pc_ = (1.0 - cc_) * pc_ + (hsig ? std::sqrt(cc_ * (2.0 - cc_) * mueff_) : 0.0) * y_w;

    Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < settings_.mu; ++i) {
      const Eigen::VectorXd y = (asked_[order[i]] - old_mean) / sigma_;
      rank_mu.noalias() += weights_[i] * (y * y.transpose());
    }
    const double delta_h = hsig ? 0.0 : cc_ * (2.0 - cc_);
    C_ = (1.0 - c1_ - cmu_ + c1_ * delta_h) * C_ + c1_ * (pc_ * pc_.transpose()) + cmu_ * rank_mu;
    C_ = 0.5 * (C_ + C_.transpose()).eval();

    sigma_ *= std::exp((cs_ / ds_) * (ps_norm / chi_n_ - 1.0));
  }

  [[nodiscard]] nlohmann::json to_json() const {
    if (awaiting_) throw Error("CmaEs: cannot snapshot while candidates are outstanding");
    std::vector<std::vector<double>> cov(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) cov[i][j] = C_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    return {{"mean", detail::to_std(mean_)},
            {"sigma", sigma_},
            {"covariance", cov},
            {"path_sigma", detail::to_std(ps_)},
            {"path_c", detail::to_std(pc_)},
            {"generation", generation_},
            {"best_fitness", detail::optional_fitness(best_f_)},
            {"best_vector", best_x_},
            {"last_selection", last_selection_},
            {"rng", detail::rng_to_json(rng_)}};
  }

  static CmaEs from_json(std::size_t dimension, const CmaSettings& settings, const nlohmann::json& j) {
    CmaEs es(dimension, settings, 0);
    es.mean_ = detail::to_eigen(j.at("mean").get<std::vector<double>>());
    es.sigma_ = j.at("sigma").get<double>();
    const auto cov = j.at("covariance").get<std::vector<std::vector<double>>>();
    if (es.mean_.size() != static_cast<Eigen::Index>(dimension) || cov.size() != dimension) {
      throw ConfigError("CMA-ES snapshot dimension differs from configuration");
    }
    for (std::size_t i = 0; i < dimension; ++i) {
      for (std::size_t k = 0; k < dimension; ++k) {
        es.C_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = cov.at(i).at(k);
      }
    }
    es.ps_ = detail::to_eigen(j.at("path_sigma").get<std::vector<double>>());
    es.pc_ = detail::to_eigen(j.at("path_c").get<std::vector<double>>());
    es.generation_ = j.at("generation").get<std::size_t>();
    es.best_f_ = detail::fitness_or_inf(j.at("best_fitness"));
    es.best_x_ = j.at("best_vector").get<std::vector<double>>();
    es.last_selection_ = j.at("last_selection").get<std::vector<std::size_t>>();
    es.rng_ = detail::rng_from_json(j.at("rng"));
    return es;
  }

 private:
  void init_constants() {
    const double n = static_cast<double>(n_);
    const std::size_t mu = settings_.mu;
    weights_.resize(mu);
    for (std::size_t i = 0; i < mu; ++i) {
      weights_[i] = std::log(static_cast<double>(mu) + 0.5) - std::log(static_cast<double>(i + 1));
    }
    const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    double sum_sq = 0.0;
    for (auto& w : weights_) {
      w /= sum;
      sum_sq += w * w;
    }
    mueff_ = 1.0 / sum_sq;
    cs_ = (mueff_ + 2.0) / (n + mueff_ + 5.0);
    ds_ = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff_ - 1.0) / (n + 1.0)) - 1.0) + cs_;
    cc_ = (4.0 + mueff_ / n) / (n + 4.0 + 2.0 * mueff_ / n);
    c1_ = 2.0 / ((n + 1.3) * (n + 1.3) + mueff_);
    cmu_ = std::min(1.0 - c1_, 2.0 * (mueff_ - 2.0 + 1.0 / mueff_) / ((n + 2.0) * (n + 2.0) + mueff_));
    chi_n_ = std::sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));
  }

  void decompose() {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(C_);
    const double floor = 1e-300;
    Eigen::VectorXd ev = solver.eigenvalues().cwiseMax(floor);
    B_ = solver.eigenvectors();
    D_ = ev.cwiseSqrt();
    inv_sqrt_C_ = B_ * D_.cwiseInverse().asDiagonal() * B_.transpose();
  }

  std::size_t n_;
  CmaSettings settings_;
  std::vector<double> weights_;
  double mueff_ = 0, cs_ = 0, ds_ = 0, cc_ = 0, c1_ = 0, cmu_ = 0, chi_n_ = 0;

  Eigen::VectorXd mean_, ps_, pc_;
  Eigen::MatrixXd C_;
  double sigma_ = 0.0;
  std::size_t generation_ = 0;
  Rng rng_;

  Eigen::MatrixXd B_, inv_sqrt_C_;
  Eigen::VectorXd D_;
  bool awaiting_ = false;
  std::vector<Eigen::VectorXd> asked_;

  double best_f_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_x_;
  std::vector<std::size_t> last_selection_;
};

}  // namespace bladeopt
