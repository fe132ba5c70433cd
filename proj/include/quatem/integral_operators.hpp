#pragma once

/**
 * @file integral_operators.hpp
 * @brief Discrete Teodorescu (volume) and Cauchy-type (boundary) operators.
 *
 *   T f(x) =  sum_j w_j Upsilon(x - y_j) f(y_j)              y_j in the ball
 *   K f(x) = -sum_j a_j Upsilon(x - y_j) n(y_j) f(y_j)       y_j on the mesh
 *
 * Products are taken in the written order; H(C) is not commutative.
 *
 * The volume kernel is weakly singular (|Upsilon| ~ |x - y|^-2). Nodes closer
 * to x than exclusion_factor times their local spacing are skipped. The
 * boundary operator is only evaluated at points at least
 * min_distance_factor * mesh spacing away from the surface.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quatem/analytic_fields.hpp"
#include "quatem/complex_quaternion.hpp"
#include "quatem/errors.hpp"
#include "quatem/geometry.hpp"
#include "quatem/kernels.hpp"

namespace quatem {

struct TeodorescuOptions {
  bool exclusion = true;
  double exclusion_factor = 0.5;
};

struct CauchyOptions {
  double min_distance_factor = 2.0;
};

/// Quaternion values attached to the quadrature nodes of a surface mesh.
struct BoundaryDensity {
  SurfaceMesh const* mesh = nullptr;
  std::vector<ComplexQuaternion> values;

  BoundaryDensity(SurfaceMesh const& m, std::vector<ComplexQuaternion> v)
      : mesh(&m), values(std::move(v)) {
    if (values.size() != m.nodes().size())
      throw precondition_error("boundary density needs one value per node (" +
                               std::to_string(m.nodes().size()) + "), got " +
                               std::to_string(values.size()));
    for (auto const& q : values)
      if (!is_finite(q)) throw precondition_error("non-finite boundary density");
  }

  /// Samples f at every surface node.
  template <typename Field>
  static BoundaryDensity sample(SurfaceMesh const& m, Field&& f) {
    std::vector<ComplexQuaternion> v;
    v.reserve(m.nodes().size());
    for (auto const& node : m.nodes()) v.push_back(ComplexQuaternion(f(node.position)));
    return BoundaryDensity(m, std::move(v));
  }
};

/// Quaternion values attached to the nodes of a volume quadrature.
struct VolumeDensity {
  VolumeQuadrature const* quadrature = nullptr;
  std::vector<ComplexQuaternion> values;

  VolumeDensity(VolumeQuadrature const& q, std::vector<ComplexQuaternion> v)
      : quadrature(&q), values(std::move(v)) {
    if (values.size() != q.size())
      throw precondition_error("volume density needs one value per node");
    for (auto const& x : values)
      if (!is_finite(x)) throw precondition_error("non-finite volume density");
  }

  template <typename Field>
  static VolumeDensity sample(VolumeQuadrature const& q, Field&& f) {
    std::vector<ComplexQuaternion> v;
    v.reserve(q.size());
    for (auto const& y : q.nodes()) v.push_back(ComplexQuaternion(f(y)));
    return VolumeDensity(q, std::move(v));
  }
};

/// Volume operator with an arbitrary kernel z -> Upsilon(z).
template <typename Kernel>
ComplexQuaternion teodorescu_with_kernel(Kernel&& kernel,
                                         VolumeDensity const& density,
                                         Vec3 const& x,
                                         TeodorescuOptions const& opt = {}) {
  auto const& q = *density.quadrature;
  auto const nodes = q.nodes();
  auto const weights = q.weights();
  auto const spacing = q.spacing();
  ComplexQuaternion sum;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Vec3 const z = x - nodes[j];
    double const r = norm(z);
    if (opt.exclusion && r < opt.exclusion_factor * spacing[j]) continue;
    if (!(r > 0))
      throw singularity_error("evaluation point coincides with a volume node");
    sum += weights[j] * (kernel(z) * density.values[j]);
  }
  return sum;
}

/// T_{+-alpha} f(x).
inline ComplexQuaternion teodorescu(ComplexScalar alpha, Sign sign,
                                    VolumeDensity const& density,
                                    Vec3 const& x,
                                    TeodorescuOptions const& opt = {}) {
  auto const& q = *density.quadrature;
  auto const nodes = q.nodes();
  auto const weights = q.weights();
  auto const spacing = q.spacing();
  ComplexScalar const i{0, 1};
  ComplexScalar const scalar_coef = to_double(sign) * alpha;
  double const inv4pi = 1.0 / (4 * std::numbers::pi);
  ComplexQuaternion sum;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Vec3 const z = x - nodes[j];
    double const r = norm(z);
    if (opt.exclusion && r < opt.exclusion_factor * spacing[j]) continue;
    if (!(r > 0))
      throw singularity_error("evaluation point coincides with a volume node");
    ComplexScalar const th = -std::exp(i * alpha * r) * (inv4pi / r);
    ComplexScalar const radial = -th * (i * alpha - 1.0 / r) / r;
    ComplexQuaternion const kernel{scalar_coef * th, radial * z.x, radial * z.y,
                                   radial * z.z};
    sum += weights[j] * (kernel * density.values[j]);
  }
  return sum;
}

/// Throws near_singularity_error if x is closer to the surface than the
/// exclusion rule allows.
inline void check_boundary_distance(SurfaceMesh const& mesh, Vec3 const& x,
                                    CauchyOptions const& opt = {}) {
  if (opt.min_distance_factor <= 0) return;
  double const d_min = opt.min_distance_factor * mesh.spacing();
  double const dist = distance_to_surface(mesh, x);
  if (dist < d_min) throw near_singularity_error(dist, d_min);
}

/// Boundary operator sum without the distance check.
template <typename Kernel>
ComplexQuaternion cauchy_boundary_unchecked(Kernel&& kernel,
                                            BoundaryDensity const& density,
                                            Vec3 const& x) {
  auto const nodes = density.mesh->nodes();
  ComplexQuaternion sum;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    auto const& node = nodes[j];
    sum += node.weight *
           (kernel(x - node.position) * to_quaternion(node.normal) * density.values[j]);
  }
  return -sum;
}

/// K_{+-alpha} f(x) for x inside the domain, away from the surface.
inline ComplexQuaternion cauchy_boundary(ComplexScalar alpha, Sign sign,
                                         BoundaryDensity const& density,
                                         Vec3 const& x,
                                         CauchyOptions const& opt = {}) {
  check_boundary_distance(*density.mesh, x, opt);
  return cauchy_boundary_unchecked(
      [&](Vec3 const& z) { return upsilon(alpha, sign, z); }, density, x);
}

// ---------------------------------------------------------------------------
// Borel-Pompeiu identity (K + T D) f = f

struct BorelPompeiuOptions {
  TeodorescuOptions teodorescu{};
  CauchyOptions cauchy{};
  /// Lower bound of the normalization; the residual is
  /// |K f + T D f - f| / max(|f(x)|, reference_scale, floor).
  double floor = 1e-12;
  /// Field magnitude used to normalize; negative selects the maximum of |f|
  /// over the surface nodes.
  double reference_scale = -1;
};

struct BorelPompeiuTerms {
  ComplexQuaternion cauchy;
  ComplexQuaternion teodorescu;
  ComplexQuaternion value;
  double residual = 0;
};

/// Precomputes the surface trace of f and the volume samples of D_{+-alpha} f
/// so that the identity can be checked at many points.
class BorelPompeiuCheck {
 public:
  BorelPompeiuCheck(AnalyticField field, ComplexScalar alpha, Sign sign,
                    SurfaceMesh const& mesh, VolumeQuadrature const& quadrature,
                    BorelPompeiuOptions opt = {})
      : field_(std::move(field)),
        alpha_(alpha),
        sign_(sign),
        opt_(opt),
        trace_(BoundaryDensity::sample(mesh, field_)),
        source_(VolumeDensity::sample(quadrature, [&](Vec3 const& y) {
          return field_.d_alpha(alpha_, sign_, y);
        })) {
    scale_ = opt_.reference_scale;
    if (scale_ < 0) {
      scale_ = 0;
      for (auto const& v : trace_.values) scale_ = std::max(scale_, norm(v));
    }
  }

  BorelPompeiuTerms evaluate(Vec3 const& x) const {
    BorelPompeiuTerms t;
    t.cauchy = cauchy_boundary(alpha_, sign_, trace_, x, opt_.cauchy);
    t.teodorescu = teodorescu(alpha_, sign_, source_, x, opt_.teodorescu);
    t.value = field_(x);
    double const denom = std::max({norm(t.value), scale_, opt_.floor});
    t.residual = norm(t.cauchy + t.teodorescu - t.value) / denom;
    return t;
  }

  double residual(Vec3 const& x) const { return evaluate(x).residual; }

 private:
  AnalyticField field_;
  ComplexScalar alpha_;
  Sign sign_;
  BorelPompeiuOptions opt_;
  BoundaryDensity trace_;
  VolumeDensity source_;
  double scale_ = 0;
};

inline double borel_pompeiu_residual(AnalyticField const& field,
                                     ComplexScalar alpha, Sign sign,
                                     SurfaceMesh const& mesh,
                                     VolumeQuadrature const& quadrature,
                                     Vec3 const& x,
                                     BorelPompeiuOptions const& opt = {}) {
  return BorelPompeiuCheck(field, alpha, sign, mesh, quadrature, opt).residual(x);
}

}  // namespace quatem
