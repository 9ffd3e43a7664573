// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "bladeopt/errors.hpp"
#include "bladeopt/geometry.hpp"

namespace bladeopt {

/// Parameters of the generated reference blade. Spanwise quantities vary
/// linearly from hub to tip.
struct SyntheticBaselineConfig {
  std::size_t sections = 11;
  std::size_t points_per_section = 61;
  double hub_radius = 0.08;  // meters
  double tip_radius = 0.27;
  double chord_hub = 0.07;
  double chord_tip = 0.09;
  double thickness_hub = 0.10;  // max thickness / chord
  double thickness_tip = 0.06;
  double camber_hub = 0.06;  // max camber / chord
  double camber_tip = 0.02;
  double camber_position = 0.4;  // chordwise location of max camber
  double stagger_hub_deg = 25.0;
  double stagger_tip_deg = 60.0;

  bool operator==(const SyntheticBaselineConfig&) const = default;
};

namespace detail {

// 4-digit-series half thickness with the open trailing edge coefficient.
inline double naca_half_thickness(double x, double t) {
  return 5.0 * t * (0.2969 * std::sqrt(x) - 0.1260 * x - 0.3516 * x * x + 0.2843 * x * x * x - 0.1015 * x * x * x * x);
}

inline void naca_camber(double x, double m, double p, double& yc, double& slope) {
  if (m == 0.0) {
    yc = 0.0;
    slope = 0.0;
  } else if (x < p) {
    yc = m / (p * p) * (2.0 * p * x - x * x);
    slope = 2.0 * m / (p * p) * (p - x);
  } else {
    yc = m / ((1.0 - p) * (1.0 - p)) * ((1.0 - 2.0 * p) + 2.0 * p * x - x * x);
    slope = 2.0 * m / ((1.0 - p) * (1.0 - p)) * (p - x);
  }
}

}  // namespace detail

/// One cambered section; the loop starts at the trailing edge of the suction
/// side, reaches the leading edge at the origin and returns along the pressure
/// side. Cosine spacing clusters points at both edges.
inline AirfoilSection make_cambered_section(std::size_t points, double radius, double chord, double thickness,
                                            double camber, double camber_position, double stagger) {
  const std::size_t le = (points - 1) / 2;
  const std::size_t lower_segments = points - 1 - le;
  AirfoilSection s;
  s.radius = radius;
  s.leading_edge = le;
  s.points.resize(points);
  s.chord_params.resize(points);

  auto place = [&](std::size_t k, double x, bool upper) {
    double yc = 0.0, slope = 0.0;
    detail::naca_camber(x, camber, camber_position, yc, slope);
    const double yt = detail::naca_half_thickness(x, thickness);
    const double theta = std::atan(slope);
    const double sign = upper ? 1.0 : -1.0;
    const Vec2 local{x - sign * yt * std::sin(theta), yc + sign * yt * std::cos(theta)};
    s.points[k] = rotate_about(chord * local, Vec2{}, -stagger);
    s.chord_params[k] = x;
  };

  for (std::size_t i = 0; i <= le; ++i) {
    const double x = 0.5 * (1.0 + std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(le)));
    place(i, x, true);
  }
  for (std::size_t j = 1; j <= lower_segments; ++j) {
    const double x =
        0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(lower_segments)));
    place(le + j, x, false);
  }
  // Pin the anchors exactly; cos() does not hit 0 and 1 exactly.
  s.chord_params.front() = 1.0;
  s.chord_params.back() = 1.0;
  s.chord_params[le] = 0.0;
  s.points[le] = Vec2{};
  return s;
}

/// Deterministic stand-in for a real fan blade: cambered sections stacked
/// radially at the leading edge with linear twist.
inline BladeGeometry synthetic_baseline(const SyntheticBaselineConfig& cfg = {}) {
  if (cfg.sections < 3) throw DomainError("synthetic_baseline: need at least 3 sections");
  if (cfg.points_per_section < 20) throw DomainError("synthetic_baseline: need at least 20 points per section");
  if (!(cfg.hub_radius > 0.0) || !(cfg.tip_radius > cfg.hub_radius)) {
    throw DomainError("synthetic_baseline: need 0 < hub radius < tip radius");
  }
  if (!(cfg.chord_hub > 0.0) || !(cfg.chord_tip > 0.0)) throw DomainError("synthetic_baseline: chord must be positive");
  if (!(cfg.thickness_hub > 0.0) || !(cfg.thickness_tip > 0.0)) {
    throw DomainError("synthetic_baseline: thickness must be positive");
  }
  if (!(cfg.camber_position > 0.0 && cfg.camber_position < 1.0)) {
    throw DomainError("synthetic_baseline: camber position must lie in (0, 1)");
  }

  const std::size_t n = cfg.sections;
  BladeGeometry blade;
  blade.sections.reserve(n);
  blade.span_fractions.resize(n);
  auto lerp = [](double a, double b, double w) { return a + w * (b - a); };
  constexpr double deg = std::numbers::pi / 180.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(n - 1);
    blade.span_fractions[i] = w;
    blade.sections.push_back(make_cambered_section(
        cfg.points_per_section, lerp(cfg.hub_radius, cfg.tip_radius, w), lerp(cfg.chord_hub, cfg.chord_tip, w),
        lerp(cfg.thickness_hub, cfg.thickness_tip, w), lerp(cfg.camber_hub, cfg.camber_tip, w), cfg.camber_position,
        lerp(cfg.stagger_hub_deg, cfg.stagger_tip_deg, w) * deg));
  }
  blade.span_fractions.back() = 1.0;
  if (n >= 5) {
    blade.control_indices = {1, n / 2, n - 2};
  } else {
    blade.control_indices = {0, n / 2, n - 1};
  }
  blade.validate();
  return blade;
}

}  // namespace bladeopt
