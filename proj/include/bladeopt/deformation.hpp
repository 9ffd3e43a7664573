// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "bladeopt/errors.hpp"
#include "bladeopt/geometry.hpp"
#include "bladeopt/hicks_henne.hpp"

namespace bladeopt {

/// Degrees of freedom of one deformable section.
struct SectionDeformation {
  std::vector<double> amplitudes;  // meters, one per basis function
  double rotation = 0.0;           // radians, about the leading edge
  double shift_axial = 0.0;        // meters
  double shift_tangential = 0.0;   // meters

  static SectionDeformation identity(std::size_t n_hh) { return {std::vector<double>(n_hh, 0.0), 0.0, 0.0, 0.0}; }

  bool operator==(const SectionDeformation&) const = default;
};

enum ControlSection : std::size_t { kHub = 0, kMid = 1, kShroud = 2 };

struct DeformationParams {
  std::array<SectionDeformation, 3> per_section;  // hub, mid, shroud
  HicksHenneBasis basis;

  static DeformationParams identity(std::size_t n_hh) {
    DeformationParams p;
    p.basis = HicksHenneBasis(n_hh);
    for (auto& s : p.per_section) s = SectionDeformation::identity(n_hh);
    return p;
  }

  [[nodiscard]] std::size_t flattened_size() const { return 3 * (basis.count() + 3); }

  void validate() const {
    for (const auto& s : per_section) {
      if (s.amplitudes.size() != basis.count()) {
        throw DomainError("DeformationParams: amplitude count " + std::to_string(s.amplitudes.size()) +
                          " differs from basis count " + std::to_string(basis.count()));
      }
    }
  }

  bool operator==(const DeformationParams&) const = default;
};

/// Displace every point along its outward normal by the summed shape functions,
/// rotate the result about the leading edge, then translate it.
inline AirfoilSection deform_section(const AirfoilSection& section, const SectionDeformation& d,
                                     const HicksHenneBasis& basis) {
  if (d.amplitudes.size() != basis.count()) {
    throw DomainError("deform_section: amplitude count differs from basis count");
  }
  AirfoilSection out = section;
  const auto normals = outward_normals(section);
  for (std::size_t k = 0; k < out.points.size(); ++k) {
    const double h = basis.displacement(section.chord_params[k], d.amplitudes);
    if (h != 0.0) out.points[k] = out.points[k] + h * normals[k];
  }
  if (d.rotation != 0.0) {
    const Vec2 le = out.leading_edge_point();
    for (auto& p : out.points) p = rotate_about(p, le, d.rotation);
  }
  if (d.shift_axial != 0.0 || d.shift_tangential != 0.0) {
    const Vec2 shift{d.shift_axial, d.shift_tangential};
    for (auto& p : out.points) p = p + shift;
  }
  return out;
}

/// a + w (b - a) per field; equal endpoints give back a exactly.
inline SectionDeformation interpolate(const SectionDeformation& a, const SectionDeformation& b, double w) {
  auto lerp = [w](double x, double y) { return x + w * (y - x); };
  SectionDeformation out;
  out.amplitudes.resize(a.amplitudes.size());
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) out.amplitudes[i] = lerp(a.amplitudes[i], b.amplitudes[i]);
  out.rotation = lerp(a.rotation, b.rotation);
  out.shift_axial = lerp(a.shift_axial, b.shift_axial);
  out.shift_tangential = lerp(a.shift_tangential, b.shift_tangential);
  return out;
}

/// Deformation applied to section `index` of `blade`: the control deformations
/// at the control sections, linear interpolation in span fraction between
/// them, constant extrapolation outside the hub..shroud control span.
inline SectionDeformation section_deformation(const BladeGeometry& blade, const DeformationParams& params,
                                              std::size_t index) {
  const auto& ctrl = blade.control_indices;
  const auto& span = blade.span_fractions;
  if (index <= ctrl[kHub]) return params.per_section[kHub];
  if (index >= ctrl[kShroud]) return params.per_section[kShroud];
  if (index == ctrl[kMid]) return params.per_section[kMid];
  const std::size_t lo = index < ctrl[kMid] ? kHub : kMid;
  const std::size_t hi = lo + 1;
  const double w = (span[index] - span[ctrl[lo]]) / (span[ctrl[hi]] - span[ctrl[lo]]);
  return interpolate(params.per_section[lo], params.per_section[hi], w);
}

inline BladeGeometry build_blade(const BladeGeometry& baseline, const DeformationParams& params) {
  baseline.validate();
  params.validate();
  BladeGeometry out = baseline;
  for (std::size_t i = 0; i < baseline.sections.size(); ++i) {
    out.sections[i] = deform_section(baseline.sections[i], section_deformation(baseline, params, i), params.basis);
  }
  return out;
}

}  // namespace bladeopt
