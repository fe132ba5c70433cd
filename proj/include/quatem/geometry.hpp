#pragma once

/**
 * @file geometry.hpp
 * @brief Discretizations of a bounded domain and its closed boundary.
 *
 * SurfaceMesh holds a closed triangulated surface with per-triangle outward
 * normals and a per-triangle quadrature rule (centroid or symmetric 3-point).
 * VolumeQuadrature holds a product rule for the ball: Gauss-Legendre in the
 * radius times spherical-triangle cells taken from an icosphere.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/legendre.hpp>

#include "quatem/complex_quaternion.hpp"
#include "quatem/errors.hpp"

namespace quatem {

/// Point or direction in R^3.
struct Vec3 {
  double x = 0, y = 0, z = 0;

  constexpr double operator[](std::size_t k) const {
    return k == 0 ? x : (k == 1 ? y : z);
  }
  constexpr double& operator[](std::size_t k) {
    return k == 0 ? x : (k == 1 ? y : z);
  }
  constexpr bool operator==(Vec3 const&) const = default;

  constexpr Vec3& operator+=(Vec3 const& o) {
    x += o.x, y += o.y, z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(Vec3 const& o) {
    x -= o.x, y -= o.y, z -= o.z;
    return *this;
  }
};

constexpr Vec3 operator+(Vec3 a, Vec3 const& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, Vec3 const& b) { return a -= b; }
constexpr Vec3 operator-(Vec3 const& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 const& a) {
  return {s * a.x, s * a.y, s * a.z};
}
constexpr Vec3 operator/(Vec3 const& a, double s) {
  return {a.x / s, a.y / s, a.z / s};
}
constexpr double dot(Vec3 const& a, Vec3 const& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Vec3 cross(Vec3 const& a, Vec3 const& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 const& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 const& a) { return a / norm(a); }

/// Real direction as a purely vectorial quaternion.
inline ComplexQuaternion to_quaternion(Vec3 const& a) {
  return {0.0, a.x, a.y, a.z};
}

inline ComplexVector3 to_cvector(Vec3 const& a) { return {a.x, a.y, a.z}; }

// ---------------------------------------------------------------------------
// Surface mesh

enum class SurfaceRule { centroid, three_point };

/// One surface quadrature point.
struct SurfaceNode {
  Vec3 position;
  Vec3 normal;
  double weight = 0;
  std::size_t triangle = 0;
};

using Triangle = std::array<std::size_t, 3>;

class SurfaceMesh {
 public:
  /// Builds a mesh and its quadrature. Normals follow the right-hand rule of
  /// each triangle's vertex order. Throws topology_error unless every
  /// undirected edge is shared by exactly two triangles.
  SurfaceMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles,
              SurfaceRule rule = SurfaceRule::centroid)
      : vertices_(std::move(vertices)),
        triangles_(std::move(triangles)),
        rule_(rule) {
    if (triangles_.empty()) throw topology_error("mesh has no triangles");
    std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
    for (auto const& t : triangles_) {
      for (std::size_t e = 0; e < 3; ++e) {
        auto a = t[e], b = t[(e + 1) % 3];
        if (a >= vertices_.size() || b >= vertices_.size())
          throw topology_error("triangle references a missing vertex");
        if (a == b) throw topology_error("degenerate triangle");
        ++edge_count[std::minmax(a, b)];
      }
    }
    for (auto const& [edge, count] : edge_count)
      if (count != 2)
        throw topology_error("mesh is not closed: edge (" +
                             std::to_string(edge.first) + ", " +
                             std::to_string(edge.second) + ") is shared by " +
                             std::to_string(count) + " triangle(s)");

    normals_.reserve(triangles_.size());
    areas_.reserve(triangles_.size());
    centroids_.reserve(triangles_.size());
    for (std::size_t i = 0; i < triangles_.size(); ++i) {
      auto const [a, b, c] = corners(i);
      Vec3 const n = cross(b - a, c - a);
      double const twice_area = norm(n);
      if (!(twice_area > 0)) throw topology_error("zero-area triangle");
      normals_.push_back(n / twice_area);
      areas_.push_back(0.5 * twice_area);
      centroids_.push_back((a + b + c) / 3.0);
    }
    build_nodes();
  }

  std::span<Vec3 const> vertices() const { return vertices_; }
  std::span<Triangle const> triangles() const { return triangles_; }
  std::span<Vec3 const> normals() const { return normals_; }
  std::span<double const> areas() const { return areas_; }
  std::span<Vec3 const> centroids() const { return centroids_; }
  std::span<SurfaceNode const> nodes() const { return nodes_; }
  SurfaceRule rule() const { return rule_; }
  std::size_t size() const { return triangles_.size(); }

  std::array<Vec3, 3> corners(std::size_t i) const {
    auto const& t = triangles_[i];
    return {vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]};
  }

  double total_area() const {
    double s = 0;
    for (double a : areas_) s += a;
    return s;
  }

  /// Mesh spacing h = sqrt(mean triangle area).
  double spacing() const {
    return std::sqrt(total_area() / static_cast<double>(size()));
  }

  /// Same connectivity and positions, different quadrature rule.
  SurfaceMesh with_rule(SurfaceRule rule) const {
    return SurfaceMesh(vertices_, triangles_, rule);
  }

 private:
  void build_nodes() {
    nodes_.clear();
    for (std::size_t i = 0; i < triangles_.size(); ++i) {
      if (rule_ == SurfaceRule::centroid) {
        nodes_.push_back({centroids_[i], normals_[i], areas_[i], i});
        continue;
      }
      // Degree-2 exact rule: barycentric (2/3, 1/6, 1/6) and permutations.
      auto const [a, b, c] = corners(i);
      for (int k = 0; k < 3; ++k) {
        std::array<double, 3> bary{1.0 / 6, 1.0 / 6, 1.0 / 6};
        bary[static_cast<std::size_t>(k)] = 2.0 / 3;
        Vec3 const p = bary[0] * a + bary[1] * b + bary[2] * c;
        nodes_.push_back({p, normals_[i], areas_[i] / 3.0, i});
      }
    }
  }

  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
  SurfaceRule rule_;
  std::vector<Vec3> normals_;
  std::vector<double> areas_;
  std::vector<Vec3> centroids_;
  std::vector<SurfaceNode> nodes_;
};

inline constexpr int max_sphere_level = 8;

namespace detail {

inline std::pair<std::vector<Vec3>, std::vector<Triangle>> icosahedron() {
  double const t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v{{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                      {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                      {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p = normalized(p);
  std::vector<Triangle> f{{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10},
                          {0, 10, 11}, {1, 5, 9}, {5, 11, 4},  {11, 10, 2},
                          {10, 7, 6}, {7, 1, 8},  {3, 9, 4},   {3, 4, 2},
                          {3, 2, 6},  {3, 6, 8},  {3, 8, 9},   {4, 9, 5},
                          {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  return {std::move(v), std::move(f)};
}

/// Unit icosphere: vertices on the unit sphere, counter-clockwise from
/// outside.
inline std::pair<std::vector<Vec3>, std::vector<Triangle>> unit_icosphere(
    int level) {
  auto [v, f] = icosahedron();
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoints;
    auto midpoint = [&](std::size_t a, std::size_t b) {
      auto key = std::minmax(a, b);
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      v.push_back(normalized(v[a] + v[b]));
      midpoints.emplace(key, v.size() - 1);
      return v.size() - 1;
    };
    std::vector<Triangle> refined;
    refined.reserve(4 * f.size());
    for (auto const& [a, b, c] : f) {
      auto ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
      refined.push_back({a, ab, ca});
      refined.push_back({b, bc, ab});
      refined.push_back({c, ca, bc});
      refined.push_back({ab, bc, ca});
    }
    f = std::move(refined);
  }
  return {std::move(v), std::move(f)};
}

inline void check_level(int level) {
  if (level < 0) throw precondition_error("subdivision level must be >= 0");
  if (level > max_sphere_level)
    throw capacity_error("icosphere level " + std::to_string(level) +
                         " exceeds the supported maximum of " +
                         std::to_string(max_sphere_level));
}

}  // namespace detail

/// Icosphere with 20 * 4^level triangles and vertices on the sphere.
inline SurfaceMesh build_sphere_mesh(double radius, int level,
                                     SurfaceRule rule = SurfaceRule::centroid) {
  if (!(radius > 0)) throw precondition_error("radius must be positive");
  detail::check_level(level);
  auto [v, f] = detail::unit_icosphere(level);
  for (auto& p : v) p = radius * p;
  return SurfaceMesh(std::move(v), std::move(f), rule);
}

/// Anisotropic scaling (turns the icosphere into an ellipsoid).
inline SurfaceMesh scale_mesh(SurfaceMesh const& mesh, Vec3 const& factors) {
  if (!(factors.x > 0 && factors.y > 0 && factors.z > 0))
    throw precondition_error("scale factors must be positive");
  std::vector<Vec3> v(mesh.vertices().begin(), mesh.vertices().end());
  for (auto& p : v) p = {p.x * factors.x, p.y * factors.y, p.z * factors.z};
  return SurfaceMesh(std::move(v),
                     {mesh.triangles().begin(), mesh.triangles().end()},
                     mesh.rule());
}

/// Closest distance from p to triangle (a, b, c).
inline double point_triangle_distance(Vec3 const& p, Vec3 const& a,
                                      Vec3 const& b, Vec3 const& c) {
  // Region classification by barycentric tests.
  Vec3 const ab = b - a, ac = c - a, ap = p - a;
  double const d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0 && d2 <= 0) return norm(p - a);
  Vec3 const bp = p - b;
  double const d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0 && d4 <= d3) return norm(p - b);
  double const vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0)
    return norm(p - (a + (d1 / (d1 - d3)) * ab));
  Vec3 const cp = p - c;
  double const d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0 && d5 <= d6) return norm(p - c);
  double const vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0)
    return norm(p - (a + (d2 / (d2 - d6)) * ac));
  double const va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    double const w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return norm(p - (b + w * (c - b)));
  }
  double const denom = 1.0 / (va + vb + vc);
  double const v = vb * denom, w = vc * denom;
  return norm(p - (a + v * ab + w * ac));
}

inline double distance_to_surface(SurfaceMesh const& mesh, Vec3 const& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    auto const [a, b, c] = mesh.corners(i);
    best = std::min(best, point_triangle_distance(p, a, b, c));
  }
  return best;
}

/// Divergence-theorem diagnostics of the mesh normals.
struct NormalReport {
  Vec3 normal_flux;           ///< sum of a_i n_i, ideally 0
  double normal_flux_norm = 0;
  double position_flux = 0;   ///< sum of a_i x_i . n_i, ideally 3 Vol
  double enclosed_volume = 0; ///< position_flux / 3
  std::size_t inconsistent_edges = 0;
  bool orientation_consistent = true;
  bool outward = true;
};

/// Computes the two flux residuals and checks orientation consistency (each
/// directed edge must occur exactly once, paired with its reverse).
inline NormalReport checked_normals(SurfaceMesh const& mesh) {
  NormalReport r;
  for (auto const& node : mesh.nodes()) {
    r.normal_flux += node.weight * node.normal;
    r.position_flux += node.weight * dot(node.position, node.normal);
  }
  r.normal_flux_norm = norm(r.normal_flux);
  r.enclosed_volume = r.position_flux / 3.0;

  std::map<std::pair<std::size_t, std::size_t>, int> directed;
  for (auto const& t : mesh.triangles())
    for (std::size_t e = 0; e < 3; ++e) ++directed[{t[e], t[(e + 1) % 3]}];
  for (auto const& [edge, count] : directed) {
    auto rev = directed.find({edge.second, edge.first});
    if (count != 1 || rev == directed.end() || rev->second != 1)
      ++r.inconsistent_edges;
  }
  r.orientation_consistent = r.inconsistent_edges == 0;
  r.outward = r.orientation_consistent && r.position_flux > 0;
  return r;
}

/// Smallest distance from the vertex centroid to a facet plane.
inline double inradius_estimate(SurfaceMesh const& mesh) {
  Vec3 center;
  for (auto const& v : mesh.vertices()) center += v;
  center = center / static_cast<double>(mesh.vertices().size());
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mesh.size(); ++i)
    r = std::min(r, dot(mesh.centroids()[i] - center, mesh.normals()[i]));
  return r;
}

struct OffsetPoint {
  Vec3 point;
  std::size_t triangle = 0;
  /// Set when the inward displacement brought the point closer than `depth`
  /// to some other part of the surface.
  bool too_deep = false;
};

/// One point per triangle, displaced from the centroid by `depth` along -n.
inline std::vector<OffsetPoint> interior_offset_points(SurfaceMesh const& mesh,
                                                       double depth) {
  if (!(depth > 0))
    throw precondition_error("offset depth must be positive");
  double const inradius = inradius_estimate(mesh);
  if (!(depth < inradius))
    throw precondition_error("offset depth " + std::to_string(depth) +
                             " is not below the inradius estimate " +
                             std::to_string(inradius));
  std::vector<OffsetPoint> out;
  out.reserve(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    Vec3 const p = mesh.centroids()[i] - depth * mesh.normals()[i];
    bool const too_deep = distance_to_surface(mesh, p) < (1.0 - 1e-3) * depth;
    out.push_back({p, i, too_deep});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Volume quadrature

struct Ball {
  Vec3 center;
  double radius = 1;

  bool contains(Vec3 const& p) const { return norm(p - center) < radius; }
  double volume() const {
    return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
  }
};

class VolumeQuadrature {
 public:
  VolumeQuadrature(std::vector<Vec3> nodes, std::vector<double> weights,
                   Ball domain)
      : nodes_(std::move(nodes)), weights_(std::move(weights)), domain_(domain) {
    if (nodes_.size() != weights_.size())
      throw precondition_error("node and weight counts differ");
    spacing_.reserve(weights_.size());
    for (double w : weights_) {
      if (!(w > 0)) throw precondition_error("quadrature weights must be positive");
      spacing_.push_back(std::cbrt(w));
    }
  }

  std::span<Vec3 const> nodes() const { return nodes_; }
  std::span<double const> weights() const { return weights_; }
  /// Local node spacing, the cube root of the node's weight.
  std::span<double const> spacing() const { return spacing_; }
  Ball const& domain() const { return domain_; }
  std::size_t size() const { return nodes_.size(); }

  double total_weight() const {
    double s = 0;
    for (double w : weights_) s += w;
    return s;
  }

  template <typename F>
  auto integrate(F&& f) const {
    using R = std::decay_t<decltype(f(nodes_.front()))>;
    R sum{};
    for (std::size_t j = 0; j < nodes_.size(); ++j) sum += weights_[j] * f(nodes_[j]);
    return sum;
  }

 private:
  std::vector<Vec3> nodes_;
  std::vector<double> weights_;
  std::vector<double> spacing_;
  Ball domain_;
};

/// Gauss-Legendre nodes and weights on [0, 1].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_unit(
    int order) {
  if (order < 1) throw precondition_error("Gauss-Legendre order must be >= 1");
  auto const zeros = boost::math::legendre_p_zeros<double>(order);
  std::vector<double> x, w;
  for (double z : zeros) {
    double const dp = boost::math::legendre_p_prime(order, z);
    double const wz = 2.0 / ((1.0 - z * z) * dp * dp);
    if (z == 0.0) {
      x.push_back(0.5);
      w.push_back(0.5 * wz);
      continue;
    }
    x.push_back(0.5 * (1.0 - z));
    w.push_back(0.5 * wz);
    x.push_back(0.5 * (1.0 + z));
    w.push_back(0.5 * wz);
  }
  std::vector<std::size_t> idx(x.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  std::vector<double> xs, ws;
  for (auto i : idx) xs.push_back(x[i]), ws.push_back(w[i]);
  return {xs, ws};
}

/// Solid angle of the spherical triangle spanned by three unit vectors.
inline double solid_angle(Vec3 const& a, Vec3 const& b, Vec3 const& c) {
  double const num = std::abs(dot(a, cross(b, c)));
  double const den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(num, den);
}

/// Radial order used when none is given: grows with the angular level so
/// that radial and angular spacings shrink together.
inline int default_radial_order(int level) {
  return std::max(8, 4 * (1 << std::max(level, 0)));
}

inline constexpr std::size_t max_volume_nodes = 50'000'000;

/// Product rule for the ball: radial Gauss-Legendre of `radial_order` points
/// times the spherical triangles of a level-`level` icosphere. Node direction
/// is the normalized facet centroid, angular weight the exact solid angle.
/// radial_order <= 0 selects default_radial_order(level).
inline VolumeQuadrature build_ball_quadrature(double radius, int level,
                                              int radial_order = 0,
                                              Vec3 center = {}) {
  if (!(radius > 0)) throw precondition_error("radius must be positive");
  detail::check_level(level);
  if (radial_order <= 0) radial_order = default_radial_order(level);
  std::size_t const count =
      20 * (std::size_t{1} << (2 * level)) * static_cast<std::size_t>(radial_order);
  if (count > max_volume_nodes)
    throw capacity_error("ball quadrature would need " + std::to_string(count) +
                         " nodes");

  auto const [v, f] = detail::unit_icosphere(level);
  auto const [s, sw] = gauss_legendre_unit(radial_order);
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  nodes.reserve(count);
  weights.reserve(count);
  double const r3 = radius * radius * radius;
  for (auto const& [a, b, c] : f) {
    Vec3 const dir = normalized(v[a] + v[b] + v[c]);
    double const omega = solid_angle(v[a], v[b], v[c]);
    for (std::size_t i = 0; i < s.size(); ++i) {
      nodes.push_back(center + (radius * s[i]) * dir);
      weights.push_back(r3 * s[i] * s[i] * sw[i] * omega);
    }
  }
  return VolumeQuadrature(std::move(nodes), std::move(weights),
                          Ball{center, radius});
}

}  // namespace quatem
