// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bladeopt/deformation.hpp"
#include "bladeopt/errors.hpp"
#include "bladeopt/geometry.hpp"

namespace bladeopt {

/// Bounds relative to each control section's chord.
struct SearchBounds {
  double amplitude_fraction = 0.02;
  double rotation = 5.0 * std::numbers::pi / 180.0;  // radians
  double shift_fraction = 0.05;
};

/// Affine map between deformation parameters and the unit search cube.
///
/// Component layout: hub block, mid block, shroud block; each block holds the
/// n_hh amplitudes in basis order, then rotation, axial shift, tangential
/// shift. 0.5 maps to zero deformation, 0 and 1 to minus/plus the bound.
class SearchSpace {
 public:
  SearchSpace(std::size_t n_hh, std::array<double, 3> amplitude_bound, double rotation_bound,
              std::array<double, 3> shift_bound)
      : n_hh_(n_hh), amplitude_bound_(amplitude_bound), rotation_bound_(rotation_bound), shift_bound_(shift_bound) {
    if (n_hh == 0) throw DomainError("SearchSpace: n_hh must be positive");
    for (int i = 0; i < 3; ++i) {
      if (!(amplitude_bound[i] > 0.0) || !(shift_bound[i] > 0.0)) {
        throw DomainError("SearchSpace: bounds must be positive");
      }
    }
    if (!(rotation_bound > 0.0)) throw DomainError("SearchSpace: rotation bound must be positive");
  }

  static SearchSpace uniform(std::size_t n_hh, double amplitude_bound, double rotation_bound, double shift_bound) {
    return {n_hh, {amplitude_bound, amplitude_bound, amplitude_bound}, rotation_bound,
            {shift_bound, shift_bound, shift_bound}};
  }

  /// Bounds scaled by the chord of each control section of `blade`.
  static SearchSpace for_blade(const BladeGeometry& blade, std::size_t n_hh, const SearchBounds& bounds = {}) {
    std::array<double, 3> amp{}, shift{};
    for (std::size_t c = 0; c < 3; ++c) {
      const double chord = blade.sections.at(blade.control_indices[c]).chord_length();
      amp[c] = bounds.amplitude_fraction * chord;
      shift[c] = bounds.shift_fraction * chord;
    }
    return {n_hh, amp, bounds.rotation, shift};
  }

  [[nodiscard]] std::size_t n_hh() const { return n_hh_; }
  [[nodiscard]] std::size_t dimension() const { return 3 * (n_hh_ + 3); }
  [[nodiscard]] const std::array<double, 3>& amplitude_bound() const { return amplitude_bound_; }
  [[nodiscard]] double rotation_bound() const { return rotation_bound_; }
  [[nodiscard]] const std::array<double, 3>& shift_bound() const { return shift_bound_; }

  [[nodiscard]] std::vector<double> encode(const DeformationParams& params) const {
    params.validate();
    if (params.basis.count() != n_hh_) throw DomainError("SearchSpace::encode: basis count differs from n_hh");
    std::vector<double> x;
    x.reserve(dimension());
    for (std::size_t c = 0; c < 3; ++c) {
      const auto& s = params.per_section[c];
      for (double a : s.amplitudes) x.push_back(to_unit(a, amplitude_bound_[c]));
      x.push_back(to_unit(s.rotation, rotation_bound_));
      x.push_back(to_unit(s.shift_axial, shift_bound_[c]));
      x.push_back(to_unit(s.shift_tangential, shift_bound_[c]));
    }
    return x;
  }

  [[nodiscard]] DeformationParams decode(std::span<const double> x) const {
    if (x.size() != dimension()) {
      throw DomainError("SearchSpace::decode: expected " + std::to_string(dimension()) + " components, got " +
                        std::to_string(x.size()));
    }
    DeformationParams p = DeformationParams::identity(n_hh_);
    std::size_t k = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      auto& s = p.per_section[c];
      for (auto& a : s.amplitudes) a = from_unit(x[k++], amplitude_bound_[c]);
      s.rotation = from_unit(x[k++], rotation_bound_);
      s.shift_axial = from_unit(x[k++], shift_bound_[c]);
      s.shift_tangential = from_unit(x[k++], shift_bound_[c]);
    }
    return p;
  }

  /// The unit-cube point of the undeformed blade.
  [[nodiscard]] std::vector<double> identity_point() const { return std::vector<double>(dimension(), 0.5); }

 private:
  static double to_unit(double value, double bound) {
    const double x = 0.5 + value / (2.0 * bound);
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("SearchSpace::encode: parameter outside its bound");
    return x;
  }

  static double from_unit(double x, double bound) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("SearchSpace::decode: component outside [0, 1]");
    return (2.0 * x - 1.0) * bound;
  }

  std::size_t n_hh_;
  std::array<double, 3> amplitude_bound_;
  double rotation_bound_;
  std::array<double, 3> shift_bound_;
};

}  // namespace bladeopt
