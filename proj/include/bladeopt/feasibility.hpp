// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bladeopt/geometry.hpp"

namespace bladeopt {

struct Violation {
  enum class Kind { self_intersection, thickness_underflow };

  std::size_t section = 0;
  Kind kind = Kind::self_intersection;
  std::string detail;
};

inline const char* to_string(Violation::Kind kind) {
  return kind == Violation::Kind::self_intersection ? "self_intersection" : "thickness_underflow";
}

struct FeasibilityOptions {
  double min_thickness_fraction = 1e-3;  // of the section chord
};

namespace detail {

inline int orientation_sign(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

inline bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.u, b.u) <= p.u && p.u <= std::max(a.u, b.u) && std::min(a.v, b.v) <= p.v &&
         p.v <= std::max(a.v, b.v);
}

}  // namespace detail

/// Closed-segment intersection test, including touching and collinear overlap.
inline bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  using detail::on_segment;
  using detail::orientation_sign;
  const int o1 = orientation_sign(p1, p2, q1);
  const int o2 = orientation_sign(p1, p2, q2);
  const int o3 = orientation_sign(q1, q2, p1);
  const int o4 = orientation_sign(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

/// First pair of non-adjacent loop segments that intersect, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> find_self_intersection(const AirfoilSection& section) {
  const auto& p = section.points;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing segment
      if (segments_intersect(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n])) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

namespace detail {

// Position on the surface running through `idx` at chord parameter x,
// linear in the chord parameter between samples.
inline Vec2 surface_at(const AirfoilSection& s, const std::vector<std::size_t>& idx, double x) {
  // idx is ordered by increasing chord parameter
  const auto& cp = s.chord_params;
  if (x <= cp[idx.front()]) return s.points[idx.front()];
  if (x >= cp[idx.back()]) return s.points[idx.back()];
  auto it = std::upper_bound(idx.begin(), idx.end(), x, [&](double v, std::size_t i) { return v < cp[i]; });
  const std::size_t hi = *it;
  const std::size_t lo = *(it - 1);
  const double span = cp[hi] - cp[lo];
  const double w = span > 0.0 ? (x - cp[lo]) / span : 0.0;
  return s.points[lo] + w * (s.points[hi] - s.points[lo]);
}

}  // namespace detail

/// Smallest signed thickness between the two surfaces, measured normal to the
/// leading-edge-to-trailing-edge chord at equal chord parameter. Negative when
/// the surfaces have crossed.
inline double min_signed_thickness(const AirfoilSection& s) {
  const std::size_t n = s.size();
  const std::size_t le = s.leading_edge;
  std::vector<std::size_t> first, second;  // both ordered from LE to TE
  for (std::size_t i = le + 1; i-- > 0;) first.push_back(i);
  for (std::size_t i = le; i < n; ++i) second.push_back(i);

  const Vec2 chord = normalized(s.trailing_edge_point() - s.leading_edge_point());
  const Vec2 chord_normal{-chord.v, chord.u};
  const double sign = s.signed_area2() >= 0.0 ? 1.0 : -1.0;

  double min_t = std::numeric_limits<double>::infinity();
  auto probe = [&](const std::vector<std::size_t>& own, const std::vector<std::size_t>& other, double own_sign) {
    for (std::size_t i : own) {
      const double x = s.chord_params[i];
      if (x <= 0.0 || x >= 1.0) continue;
      const Vec2 opposite = detail::surface_at(s, other, x);
      min_t = std::min(min_t, own_sign * sign * dot(s.points[i] - opposite, chord_normal));
    }
  };
  probe(first, second, 1.0);
  probe(second, first, -1.0);
  return min_t;
}

/// Self-intersections and thickness underflow per section; empty when feasible.
inline std::vector<Violation> check_feasibility(const BladeGeometry& blade, const FeasibilityOptions& opts = {}) {
  std::vector<Violation> out;
  for (std::size_t s = 0; s < blade.sections.size(); ++s) {
    const auto& section = blade.sections[s];
    if (auto hit = find_self_intersection(section)) {
      out.push_back({s, Violation::Kind::self_intersection,
                     "segments " + std::to_string(hit->first) + " and " + std::to_string(hit->second) + " cross"});
    }
    const double limit = opts.min_thickness_fraction * section.chord_length();
    const double t = min_signed_thickness(section);
    if (t < limit) {
      out.push_back({s, Violation::Kind::thickness_underflow,
                     "minimum thickness " + std::to_string(t) + " m below " + std::to_string(limit) + " m"});
    }
  }
  return out;
}

}  // namespace bladeopt
