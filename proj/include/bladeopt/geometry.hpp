// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0
//
// Blade geometry as a stack of cylindrical sections.
//
// Each section is a closed 2D loop in section-local coordinates (u: axial /
// chordwise, v: tangential arc length at the section radius, both meters).
// The loop starts at the trailing edge, runs along one surface to the leading
// edge and returns along the other surface; the closing segment joins the last
// point back to the first. Every point carries its normalized chord position,
// 0 at the leading edge and 1 at both trailing-edge end points.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "bladeopt/errors.hpp"

namespace bladeopt {

struct Vec2 {
  double u = 0.0;
  double v = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.u + b.u, a.v + b.v}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.u - b.u, a.v - b.v}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.u, s * a.v}; }
  bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.u * b.u + a.v * b.v; }
inline double cross(Vec2 a, Vec2 b) { return a.u * b.v - a.v * b.u; }
inline double norm(Vec2 a) { return std::hypot(a.u, a.v); }

inline Vec2 normalized(Vec2 a) {
  const double n = norm(a);
  return n > 0.0 ? Vec2{a.u / n, a.v / n} : Vec2{};
}

/// Rotate p by angle (radians, counter-clockwise) around center.
inline Vec2 rotate_about(Vec2 p, Vec2 center, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Vec2 d = p - center;
  return {center.u + c * d.u - s * d.v, center.v + s * d.u + c * d.v};
}

struct AirfoilSection {
  std::vector<Vec2> points;
  double radius = 0.0;
  std::size_t leading_edge = 0;
  std::vector<double> chord_params;

  [[nodiscard]] std::size_t size() const { return points.size(); }

  [[nodiscard]] Vec2 leading_edge_point() const { return points.at(leading_edge); }

  [[nodiscard]] Vec2 trailing_edge_point() const { return 0.5 * (points.front() + points.back()); }

  [[nodiscard]] double chord_length() const { return norm(trailing_edge_point() - leading_edge_point()); }

  /// Twice the signed enclosed area; positive for counter-clockwise loops.
  [[nodiscard]] double signed_area2() const {
    double a = 0.0;
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) a += cross(points[i], points[(i + 1) % n]);
    return a;
  }

  /// Structural checks: sizes agree, chord parameters anchored and monotone
  /// along each surface.
  void validate() const {
    const std::size_t n = points.size();
    if (n < 5) throw DomainError("AirfoilSection: need at least 5 points, got " + std::to_string(n));
    if (chord_params.size() != n) throw DomainError("AirfoilSection: chord_params size differs from point count");
    if (leading_edge == 0 || leading_edge >= n - 1) {
      throw DomainError("AirfoilSection: leading edge must be an interior loop index");
    }
    if (!(radius > 0.0)) throw DomainError("AirfoilSection: radius must be positive");
    if (chord_params[leading_edge] != 0.0) throw DomainError("AirfoilSection: chord param at leading edge must be 0");
    if (chord_params.front() != 1.0 || chord_params.back() != 1.0) {
      throw DomainError("AirfoilSection: chord param at trailing edge must be 1");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!(chord_params[i] >= 0.0 && chord_params[i] <= 1.0)) {
        throw DomainError("AirfoilSection: chord params must lie in [0, 1]");
      }
      if (!std::isfinite(points[i].u) || !std::isfinite(points[i].v)) {
        throw DomainError("AirfoilSection: non-finite point coordinate");
      }
    }
    for (std::size_t i = 1; i <= leading_edge; ++i) {
      if (chord_params[i] > chord_params[i - 1]) throw DomainError("AirfoilSection: chord params not monotone");
    }
    for (std::size_t i = leading_edge + 1; i < n; ++i) {
      if (chord_params[i] < chord_params[i - 1]) throw DomainError("AirfoilSection: chord params not monotone");
    }
  }

  bool operator==(const AirfoilSection&) const = default;
};

struct BladeGeometry {
  std::vector<AirfoilSection> sections;
  std::array<std::size_t, 3> control_indices{};
  std::vector<double> span_fractions;

  [[nodiscard]] std::size_t point_count() const {
    std::size_t n = 0;
    for (const auto& s : sections) n += s.size();
    return n;
  }

  void validate() const {
    if (sections.size() < 3) throw DomainError("BladeGeometry: need at least 3 sections");
    if (span_fractions.size() != sections.size()) {
      throw DomainError("BladeGeometry: span_fractions size differs from section count");
    }
    if (span_fractions.front() != 0.0 || span_fractions.back() != 1.0) {
      throw DomainError("BladeGeometry: span fractions must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < span_fractions.size(); ++i) {
      if (!(span_fractions[i] > span_fractions[i - 1])) {
        throw DomainError("BladeGeometry: span fractions must be strictly increasing");
      }
    }
    const auto& c = control_indices;
    if (!(c[0] < c[1] && c[1] < c[2] && c[2] < sections.size())) {
      throw DomainError("BladeGeometry: control indices must be strictly increasing and in range");
    }
    const std::size_t n = sections.front().size();
    for (const auto& s : sections) {
      if (s.size() != n) throw DomainError("BladeGeometry: sections have different point counts");
      s.validate();
    }
  }

  bool operator==(const BladeGeometry&) const = default;
};

/// Per-point outward unit normals. The tangent at a point is the sum of the
/// unit directions of its two adjacent loop segments; the outward side follows
/// from the loop winding.
inline std::vector<Vec2> outward_normals(const AirfoilSection& section) {
  const auto& p = section.points;
  const std::size_t n = p.size();
  const double orientation = section.signed_area2() >= 0.0 ? 1.0 : -1.0;
  std::vector<Vec2> normals(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 prev = p[(i + n - 1) % n];
    const Vec2 next = p[(i + 1) % n];
    Vec2 t = normalized(p[i] - prev) + normalized(next - p[i]);
    if (norm(t) == 0.0) t = next - prev;
    t = normalized(t);
    // Right-hand side of the travel direction is outside for a CCW loop.
    normals[i] = orientation * Vec2{t.v, -t.u};
  }
  return normals;
}

inline void require_same_topology(const BladeGeometry& a, const BladeGeometry& b, const char* what) {
  if (a.sections.size() != b.sections.size()) {
    throw DomainError(std::string(what) + ": blades have different section counts");
  }
  for (std::size_t s = 0; s < a.sections.size(); ++s) {
    if (a.sections[s].size() != b.sections[s].size()) {
      throw DomainError(std::string(what) + ": section " + std::to_string(s) + " has different point counts");
    }
  }
}

/// Displacement of b relative to a, projected on a's outward normal, per
/// section and point. Positive means b lies outside a.
inline std::vector<std::vector<double>> geometry_diff(const BladeGeometry& a, const BladeGeometry& b) {
  require_same_topology(a, b, "geometry_diff");
  std::vector<std::vector<double>> field(a.sections.size());
  for (std::size_t s = 0; s < a.sections.size(); ++s) {
    const auto normals = outward_normals(a.sections[s]);
    const auto& pa = a.sections[s].points;
    const auto& pb = b.sections[s].points;
    field[s].resize(pa.size());
    for (std::size_t k = 0; k < pa.size(); ++k) field[s][k] = dot(pb[k] - pa[k], normals[k]);
  }
  return field;
}

/// Root-mean-square point displacement between two blades (meters).
inline double geometry_distance(const BladeGeometry& a, const BladeGeometry& b) {
  require_same_topology(a, b, "geometry_distance");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t s = 0; s < a.sections.size(); ++s) {
    const auto& pa = a.sections[s].points;
    const auto& pb = b.sections[s].points;
    for (std::size_t k = 0; k < pa.size(); ++k) {
      const Vec2 d = pb[k] - pa[k];
      sum += d.u * d.u + d.v * d.v;
    }
    count += pa.size();
  }
  return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
}

/// RMS magnitude of all section coordinates; a length scale for noise floors.
inline double coordinate_scale(const BladeGeometry& blade) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& s : blade.sections) {
    for (const auto& p : s.points) sum += p.u * p.u + p.v * p.v;
    count += s.size();
  }
  return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
}

}  // namespace bladeopt
