#pragma once

/**
 * @file io.hpp
 * @brief File formats: OFF meshes, quadrature and field CSV, trace CSV.
 *
 * Column orders are fixed:
 *   quadrature CSV  x,y,z,w
 *   field CSV       x,y,z,q0_re,q0_im,q1_re,q1_im,q2_re,q2_im,q3_re,q3_im
 *   trace CSV       triangle,e1_re,e1_im,e2_re,e2_im,e3_re,e3_im,
 *                   h1_re,h1_im,h2_re,h2_im,h3_re,h3_im
 * Trace rows follow the surface node order; with the centroid rule there is
 * exactly one row per triangle.
 */

#include <cctype>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quatem/chiral_maxwell.hpp"
#include "quatem/complex_quaternion.hpp"
#include "quatem/errors.hpp"
#include "quatem/geometry.hpp"

namespace quatem::io {

inline constexpr char const* quadrature_csv_header = "x,y,z,w";
inline constexpr char const* field_csv_header =
    "x,y,z,q0_re,q0_im,q1_re,q1_im,q2_re,q2_im,q3_re,q3_im";
inline constexpr char const* trace_csv_header =
    "triangle,e1_re,e1_im,e2_re,e2_im,e3_re,e3_im,"
    "h1_re,h1_im,h2_re,h2_im,h3_re,h3_im";

/// Round-trip precision for doubles.
inline void set_precision(std::ostream& os) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
}

namespace detail {

inline std::vector<std::string> split_csv(std::string const& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

inline double parse_double(std::string const& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (std::exception const&) {
    throw config_error("line " + std::to_string(line_no) + ": '" + s +
                       "' is not a number");
  }
}

inline std::string strip(std::string s) {
  auto const hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  auto const b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto const e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// OFF

inline void write_off(std::ostream& os, SurfaceMesh const& mesh) {
  set_precision(os);
  os << "OFF\n"
     << mesh.vertices().size() << ' ' << mesh.size() << " 0\n";
  for (auto const& v : mesh.vertices()) os << v.x << ' ' << v.y << ' ' << v.z << '\n';
  for (auto const& t : mesh.triangles())
    os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

/// Reads an ASCII OFF file made of triangles. Throws config_error on syntax
/// errors and topology_error if the surface is not closed.
inline SurfaceMesh read_off(std::istream& is,
                            SurfaceRule rule = SurfaceRule::centroid) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(detail::strip(line));
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  std::size_t pos = 0;
  auto next = [&]() -> std::string const& {
    if (pos >= tokens.size()) throw config_error("OFF: unexpected end of file");
    return tokens[pos++];
  };
  auto next_count = [&]() {
    auto const& t = next();
    try {
      long long v = std::stoll(t);
      if (v < 0) throw std::out_of_range(t);
      return static_cast<std::size_t>(v);
    } catch (std::exception const&) {
      throw config_error("OFF: bad count '" + t + "'");
    }
  };
  if (next() != "OFF") throw config_error("OFF: missing header");
  std::size_t const nv = next_count();
  std::size_t const nf = next_count();
  next_count();  // edges, unused
  std::vector<Vec3> vertices(nv);
  for (auto& v : vertices) {
    v.x = detail::parse_double(next(), 0);
    v.y = detail::parse_double(next(), 0);
    v.z = detail::parse_double(next(), 0);
  }
  std::vector<Triangle> triangles(nf);
  for (auto& t : triangles) {
    if (next_count() != 3) throw config_error("OFF: only triangles are supported");
    for (auto& idx : t) {
      idx = next_count();
      if (idx >= nv) throw config_error("OFF: vertex index out of range");
    }
  }
  return SurfaceMesh(std::move(vertices), std::move(triangles), rule);
}

// ---------------------------------------------------------------------------
// CSV

inline void write_quadrature_csv(std::ostream& os, VolumeQuadrature const& q) {
  set_precision(os);
  os << quadrature_csv_header << '\n';
  for (std::size_t j = 0; j < q.size(); ++j) {
    auto const& p = q.nodes()[j];
    os << p.x << ',' << p.y << ',' << p.z << ',' << q.weights()[j] << '\n';
  }
}

inline void write_field_row(std::ostream& os, Vec3 const& p,
                            ComplexQuaternion const& v) {
  os << p.x << ',' << p.y << ',' << p.z;
  for (std::size_t k = 0; k < 4; ++k) os << ',' << v[k].real() << ',' << v[k].imag();
  os << '\n';
}

inline void write_traces_csv(std::ostream& os, BoundaryTraces const& traces) {
  set_precision(os);
  os << trace_csv_header << '\n';
  auto const nodes = traces.mesh->nodes();
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    os << nodes[j].triangle;
    for (auto const* v : {&traces.e[j], &traces.h[j]})
      for (std::size_t k = 0; k < 3; ++k)
        os << ',' << (*v)[k].real() << ',' << (*v)[k].imag();
    os << '\n';
  }
}

/// Reads traces for `mesh`; rows must follow the mesh's node order.
inline BoundaryTraces read_traces_csv(std::istream& is, SurfaceMesh const& mesh) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<ComplexVector3> e, h;
  auto const nodes = mesh.nodes();
  while (std::getline(is, line)) {
    ++line_no;
    line = detail::strip(line);
    if (line.empty()) continue;
    if (line.rfind("triangle", 0) == 0) continue;  // header
    auto const cells = detail::split_csv(line);
    if (cells.size() != 13)
      throw config_error("trace CSV line " + std::to_string(line_no) +
                         ": expected 13 columns, got " + std::to_string(cells.size()));
    std::size_t const row = e.size();
    if (row >= nodes.size())
      throw config_error("trace CSV has more rows than the mesh has nodes (" +
                         std::to_string(nodes.size()) + ")");
    auto const tri = static_cast<std::size_t>(detail::parse_double(cells[0], line_no));
    if (tri != nodes[row].triangle)
      throw config_error("trace CSV line " + std::to_string(line_no) +
                         ": triangle " + std::to_string(tri) + " but node " +
                         std::to_string(row) + " belongs to triangle " +
                         std::to_string(nodes[row].triangle));
    ComplexVector3 ev, hv;
    for (std::size_t k = 0; k < 3; ++k) {
      ev[k] = {detail::parse_double(cells[1 + 2 * k], line_no),
               detail::parse_double(cells[2 + 2 * k], line_no)};
      hv[k] = {detail::parse_double(cells[7 + 2 * k], line_no),
               detail::parse_double(cells[8 + 2 * k], line_no)};
    }
    e.push_back(ev);
    h.push_back(hv);
  }
  if (e.size() != nodes.size())
    throw config_error("trace CSV has " + std::to_string(e.size()) +
                       " rows; the mesh has " + std::to_string(nodes.size()) +
                       " nodes");
  return BoundaryTraces(mesh, std::move(e), std::move(h));
}

// ---------------------------------------------------------------------------
// File helpers

inline std::ifstream open_input(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_output(std::string const& path) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace quatem::io
