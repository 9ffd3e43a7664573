// Copyright (c) 2026, bladeopt authors
// SPDX-License-Identifier: Apache-2.0
//
// Blade text format (version 1). Lines starting with '#' are comments.
//
//   bladeopt-blade 1
//   sections <S> points <N>
//   control <hub> <mid> <shroud>
//   section <i> radius <r> span <s> leading_edge <le>
//   <u> <v> <chord_param>            (N rows)
//   ... repeated for every section, hub first
//
// Numbers are written with 17 significant digits so a write/read cycle is
// exact. The lofted surface maps section-local (u, v) at radius r to Cartesian
// (r cos(v/r), r sin(v/r), u), with quads between neighbouring sections.

#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bladeopt/errors.hpp"
#include "bladeopt/geometry.hpp"

namespace bladeopt {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_blade(std::ostream& os, const BladeGeometry& blade) {
  const std::size_t n = blade.sections.empty() ? 0 : blade.sections.front().size();
  os << "bladeopt-blade 1\n";
  os << "sections " << blade.sections.size() << " points " << n << "\n";
  os << "control " << blade.control_indices[0] << ' ' << blade.control_indices[1] << ' ' << blade.control_indices[2]
     << "\n";
  for (std::size_t i = 0; i < blade.sections.size(); ++i) {
    const auto& s = blade.sections[i];
    os << "section " << i << " radius " << format_double(s.radius) << " span " << format_double(blade.span_fractions[i])
       << " leading_edge " << s.leading_edge << "\n";
    for (std::size_t k = 0; k < s.size(); ++k) {
      os << format_double(s.points[k].u) << ' ' << format_double(s.points[k].v) << ' '
         << format_double(s.chord_params[k]) << "\n";
    }
  }
}

inline void write_blade(const std::filesystem::path& path, const BladeGeometry& blade) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_blade(os, blade);
  if (!os) throw IoError("failed writing " + path.string());
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  // Next non-empty, non-comment line, split into a stream.
  std::istringstream next(const char* expecting) {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_no_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return std::istringstream(line);
    }
    throw IoError("blade file: unexpected end of input, expecting " + std::string(expecting));
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw IoError("blade file line " + std::to_string(line_no_) + ": " + what);
  }

 private:
  std::istream& is_;
  std::size_t line_no_ = 0;
};

inline void expect_word(std::istringstream& ls, const char* word, const LineReader& r) {
  std::string w;
  if (!(ls >> w) || w != word) r.fail(std::string("expected '") + word + "'");
}

}  // namespace detail

inline BladeGeometry read_blade(std::istream& is) {
  detail::LineReader r(is);
  BladeGeometry blade;
  std::size_t n_sections = 0, n_points = 0;
  {
    auto ls = r.next("header");
    int version = 0;
    detail::expect_word(ls, "bladeopt-blade", r);
    if (!(ls >> version) || version != 1) r.fail("unsupported blade format version");
  }
  {
    auto ls = r.next("sections line");
    detail::expect_word(ls, "sections", r);
    if (!(ls >> n_sections)) r.fail("bad section count");
    detail::expect_word(ls, "points", r);
    if (!(ls >> n_points)) r.fail("bad point count");
  }
  {
    auto ls = r.next("control line");
    detail::expect_word(ls, "control", r);
    for (auto& c : blade.control_indices) {
      if (!(ls >> c)) r.fail("bad control index");
    }
  }
  blade.sections.resize(n_sections);
  blade.span_fractions.resize(n_sections);
  for (std::size_t i = 0; i < n_sections; ++i) {
    auto ls = r.next("section header");
    std::size_t index = 0;
    auto& s = blade.sections[i];
    detail::expect_word(ls, "section", r);
    if (!(ls >> index) || index != i) r.fail("sections out of order");
    detail::expect_word(ls, "radius", r);
    if (!(ls >> s.radius)) r.fail("bad radius");
    detail::expect_word(ls, "span", r);
    if (!(ls >> blade.span_fractions[i])) r.fail("bad span fraction");
    detail::expect_word(ls, "leading_edge", r);
    if (!(ls >> s.leading_edge)) r.fail("bad leading edge index");
    s.points.resize(n_points);
    s.chord_params.resize(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
      auto row = r.next("point row");
      if (!(row >> s.points[k].u >> s.points[k].v >> s.chord_params[k])) r.fail("bad point row");
    }
  }
  try {
    blade.validate();
  } catch (const DomainError& e) {
    throw IoError(std::string("blade file describes an invalid blade: ") + e.what());
  }
  return blade;
}

inline BladeGeometry read_blade(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  return read_blade(is);
}

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

/// Lofted surface: one vertex per section point (section-major order) and
/// quads joining point k and k+1 of neighbouring sections around the loop.
struct LoftedSurface {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::size_t, 4>> quads;  // zero-based vertex indices
};

inline Vec3 to_cartesian(Vec2 p, double radius) {
  const double phi = p.v / radius;
  return {radius * std::cos(phi), radius * std::sin(phi), p.u};
}

inline LoftedSurface loft(const BladeGeometry& blade) {
  LoftedSurface surf;
  const std::size_t n = blade.sections.empty() ? 0 : blade.sections.front().size();
  for (const auto& s : blade.sections) {
    for (const auto& p : s.points) surf.vertices.push_back(to_cartesian(p, s.radius));
  }
  for (std::size_t i = 0; i + 1 < blade.sections.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t k1 = (k + 1) % n;
      surf.quads.push_back({i * n + k, i * n + k1, (i + 1) * n + k1, (i + 1) * n + k});
    }
  }
  return surf;
}

inline void write_obj(const std::filesystem::path& path, const BladeGeometry& blade) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  const auto surf = loft(blade);
  os << "# bladeopt lofted blade surface\n";
  for (const auto& v : surf.vertices) {
    os << "v " << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.z) << "\n";
  }
  for (const auto& q : surf.quads) {
    os << "f " << q[0] + 1 << ' ' << q[1] + 1 << ' ' << q[2] + 1 << ' ' << q[3] + 1 << "\n";
  }
  if (!os) throw IoError("failed writing " + path.string());
}

/// Legacy ASCII VTK polydata of the lofted blade with one named point scalar.
inline void write_vtk_polydata(const std::filesystem::path& path, const BladeGeometry& blade,
                               const std::vector<double>& point_scalars, const std::string& scalar_name) {
  const auto surf = loft(blade);
  if (point_scalars.size() != surf.vertices.size()) {
    throw DomainError("write_vtk_polydata: scalar count differs from point count");
  }
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << "# vtk DataFile Version 3.0\n";
  os << "bladeopt " << scalar_name << "\n";
  os << "ASCII\n";
  os << "DATASET POLYDATA\n";
  os << "POINTS " << surf.vertices.size() << " double\n";
  for (const auto& v : surf.vertices) {
    os << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.z) << "\n";
  }
  os << "POLYGONS " << surf.quads.size() << ' ' << surf.quads.size() * 5 << "\n";
  for (const auto& q : surf.quads) os << "4 " << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << "\n";
  os << "POINT_DATA " << surf.vertices.size() << "\n";
  os << "SCALARS " << scalar_name << " double 1\n";
  os << "LOOKUP_TABLE default\n";
  for (double s : point_scalars) os << format_double(s) << "\n";
  if (!os) throw IoError("failed writing " + path.string());
}

/// Point coordinates and the named scalar read back from a file written by
/// write_vtk_polydata. Only the subset of the format written here is parsed.
struct VtkPolydata {
  std::vector<Vec3> points;
  std::size_t polygons = 0;
  std::vector<double> scalars;
};

inline VtkPolydata read_vtk_polydata(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  VtkPolydata out;
  std::string word;
  while (is >> word) {
    if (word == "POINTS") {
      std::size_t n = 0;
      std::string type;
      is >> n >> type;
      out.points.resize(n);
      for (auto& p : out.points) is >> p.x >> p.y >> p.z;
    } else if (word == "POLYGONS") {
      std::size_t total = 0;
      is >> out.polygons >> total;
      for (std::size_t i = 0; i < total; ++i) is >> word;
    } else if (word == "LOOKUP_TABLE") {
      is >> word;
      out.scalars.resize(out.points.size());
      for (auto& s : out.scalars) is >> s;
    }
    if (!is) throw IoError("malformed VTK file " + path.string());
  }
  return out;
}

}  // namespace bladeopt
