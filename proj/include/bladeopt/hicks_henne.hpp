// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "bladeopt/errors.hpp"

namespace bladeopt {

/// Hicks-Henne bump b(x, x0) = sin^2(pi * x^(log 0.5 / log x0)).
///
/// Zero at both chord ends, unit maximum at x = x0. The endpoints are returned
/// exactly so leading and trailing edges never move under shape deformation.
inline double hicks_henne(double x, double x0) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("hicks_henne: chord position x must lie in [0, 1], got " + std::to_string(x));
  }
  if (!(x0 > 0.0 && x0 < 1.0)) {
    throw DomainError("hicks_henne: maximum location x0 must lie in (0, 1), got " + std::to_string(x0));
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  const double exponent = std::log(0.5) / std::log(x0);
  const double s = std::sin(std::numbers::pi * std::pow(x, exponent));
  return s * s;
}

/// Equally spaced maxima i / (n + 1), i = 1..n.
inline std::vector<double> basis_maxima(std::size_t n) {
  if (n == 0) throw DomainError("basis_maxima: need at least one shape function");
  std::vector<double> maxima(n);
  for (std::size_t i = 0; i < n; ++i) {
    maxima[i] = static_cast<double>(i + 1) / static_cast<double>(n + 1);
  }
  return maxima;
}

/// Number of search variables for three deformable sections, each with
/// n_hh amplitudes plus rotation and two shifts: 3 (n_hh + 3).
inline std::size_t search_dimension(std::size_t n_hh) {
  if (n_hh == 0) throw DomainError("search_dimension: n_hh must be positive");
  return 3 * (n_hh + 3);
}

/// The shape functions used on every deformable section.
struct HicksHenneBasis {
  std::vector<double> maxima;

  HicksHenneBasis() = default;
  explicit HicksHenneBasis(std::size_t n) : maxima(basis_maxima(n)) {}

  [[nodiscard]] std::size_t count() const { return maxima.size(); }

  /// Sum of amplitude_i * b(x, x0_i).
  [[nodiscard]] double displacement(double x, const std::vector<double>& amplitudes) const {
    if (amplitudes.size() != maxima.size()) {
      throw DomainError("HicksHenneBasis: expected " + std::to_string(maxima.size()) + " amplitudes, got " +
                        std::to_string(amplitudes.size()));
    }
    double h = 0.0;
    for (std::size_t i = 0; i < maxima.size(); ++i) {
      if (amplitudes[i] != 0.0) h += amplitudes[i] * hicks_henne(x, maxima[i]);
    }
    return h;
  }

  bool operator==(const HicksHenneBasis&) const = default;
};

}  // namespace bladeopt
