#pragma once

/**
 * @file chiral_maxwell.hpp
 * @brief Time-harmonic Maxwell fields in a chiral medium.
 *
 * With normalized fields E, H, j the curl equations read
 *   rot E = -ik (H + beta rot H)
 *   rot H =  ik (E + beta rot E) + j.
 * Phi = E + iH and Psi = E - iH decouple them:
 *   (D + alpha1) Phi =  (i/k) [alpha1 j - div j]
 *   (D - alpha2) Psi = -(i/k) [alpha2 j + div j],
 * and the Borel-Pompeiu identity turns these into integral representations
 * of Phi, Psi and hence of E and H.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "quatem/analytic_fields.hpp"
#include "quatem/complex_quaternion.hpp"
#include "quatem/errors.hpp"
#include "quatem/geometry.hpp"
#include "quatem/integral_operators.hpp"
#include "quatem/kernels.hpp"
#include "quatem/medium.hpp"

namespace quatem {

inline constexpr ComplexScalar imag_unit{0.0, 1.0};

// ---------------------------------------------------------------------------
// Pointwise algebra

struct EMValue {
  ComplexVector3 e, h;
};

struct SplitValue {
  ComplexVector3 phi, psi;
};

inline SplitValue split(EMValue const& f) {
  return {f.e + imag_unit * f.h, f.e - imag_unit * f.h};
}

inline EMValue merge(SplitValue const& s) {
  return {0.5 * (s.phi + s.psi), (s.phi - s.psi) / ComplexScalar(0, 2)};
}

/// Physical fields (tilde quantities) and their normalized counterparts.
struct FieldSample {
  ComplexVector3 e, h, j;
};

/// E = E~ / sqrt(mu), H = H~ / sqrt(eps), j = j~ / sqrt(eps).
inline FieldSample normalize_fields(FieldSample const& tilde,
                                    ChiralMedium const& medium) {
  return {tilde.e / medium.sqrt_mu(), tilde.h / medium.sqrt_epsilon(),
          tilde.j / medium.sqrt_epsilon()};
}

inline FieldSample denormalize_fields(FieldSample const& f,
                                      ChiralMedium const& medium) {
  return {medium.sqrt_mu() * f.e, medium.sqrt_epsilon() * f.h,
          medium.sqrt_epsilon() * f.j};
}

// ---------------------------------------------------------------------------
// Sources

/// Normalized current density with its exact divergence.
struct SourceData {
  std::function<ComplexVector3(Vec3 const&)> j;
  std::function<ComplexScalar(Vec3 const&)> div_j;

  static SourceData none() {
    return {[](Vec3 const&) { return ComplexVector3{}; },
            [](Vec3 const&) { return ComplexScalar{}; }};
  }

  /// Vector part of an analytic field and its exact divergence.
  static SourceData from_field(AnalyticField const& f) {
    return {[f](Vec3 const& x) { return f.vector(x); },
            [f](Vec3 const& x) { return f.divergence(x); }};
  }
};

/// rho/eps = -(1/(ik)) div j, from the continuity equation.
inline std::function<ComplexScalar(Vec3 const&)> continuity_rho(
    SourceData const& source, ChiralMedium const& medium) {
  ComplexScalar const factor = -1.0 / (imag_unit * medium.k());
  return [div = source.div_j, factor](Vec3 const& x) { return factor * div(x); };
}

struct SplitRhs {
  std::function<ComplexQuaternion(Vec3 const&)> phi;
  std::function<ComplexQuaternion(Vec3 const&)> psi;
};

/// Right-hand sides of the decoupled equations as full quaternions:
///   phi:  (i/k) [alpha1 j - div j]
///   psi: -(i/k) [alpha2 j + div j]
inline SplitRhs phi_psi_rhs(SourceData const& source, ChiralMedium const& medium) {
  ComplexScalar const c = imag_unit / medium.k();
  ComplexScalar const a1 = medium.alpha1(), a2 = medium.alpha2();
  auto j = source.j;
  auto div = source.div_j;
  return {[=](Vec3 const& x) {
            return c * (ComplexQuaternion(-div(x)) + ComplexQuaternion(a1 * j(x)));
          },
          [=](Vec3 const& x) {
            return -c * (ComplexQuaternion(div(x)) + ComplexQuaternion(a2 * j(x)));
          }};
}

// ---------------------------------------------------------------------------
// Boundary traces

/// Values of E and H at the surface quadrature nodes.
struct BoundaryTraces {
  SurfaceMesh const* mesh = nullptr;
  std::vector<ComplexVector3> e, h;

  BoundaryTraces(SurfaceMesh const& m, std::vector<ComplexVector3> e_,
                 std::vector<ComplexVector3> h_)
      : mesh(&m), e(std::move(e_)), h(std::move(h_)) {
    if (e.size() != m.nodes().size() || h.size() != m.nodes().size())
      throw precondition_error("traces need one value per surface node");
  }

  template <typename EField, typename HField>
  static BoundaryTraces sample(SurfaceMesh const& m, EField&& ef, HField&& hf) {
    std::vector<ComplexVector3> e, h;
    for (auto const& node : m.nodes()) {
      e.push_back(ef(node.position));
      h.push_back(hf(node.position));
    }
    return BoundaryTraces(m, std::move(e), std::move(h));
  }

  static BoundaryTraces sample(SurfaceMesh const& m, ChiralSolution const& s) {
    return sample(
        m, [&](Vec3 const& x) { return s.E.vector(x); },
        [&](Vec3 const& x) { return s.H.vector(x); });
  }

  /// Traces averaged over the nodes of each triangle.
  std::pair<ComplexVector3, ComplexVector3> at_triangle(std::size_t t) const;
};

inline std::pair<ComplexVector3, ComplexVector3> BoundaryTraces::at_triangle(
    std::size_t t) const {
  ComplexVector3 es, hs;
  double count = 0;
  auto const nodes = mesh->nodes();
  // Nodes of a triangle are stored contiguously.
  std::size_t const per = nodes.size() / mesh->size();
  for (std::size_t j = t * per; j < (t + 1) * per; ++j) {
    es = es + e[j];
    hs = hs + h[j];
    count += 1;
  }
  return {es / ComplexScalar(count), hs / ComplexScalar(count)};
}

/// Adds tangential noise of relative size `amplitude` to every trace value.
/// Each noise vector is a complex Gaussian vector with its normal component
/// removed, scaled to amplitude * |value|.
inline BoundaryTraces perturb_tangential(BoundaryTraces const& traces,
                                         double amplitude, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto const nodes = traces.mesh->nodes();
  auto perturb = [&](ComplexVector3 const& v, Vec3 const& n) {
    ComplexVector3 r;
    for (std::size_t k = 0; k < 3; ++k) r[k] = {gauss(rng), gauss(rng)};
    ComplexVector3 const nn = to_cvector(n);
    r = r - dot(r, nn) * nn;
    double const rn = norm(r);
    double const vn = norm(v);
    if (rn == 0 || vn == 0) return v;
    return v + ComplexScalar(amplitude * vn / rn) * r;
  };
  std::vector<ComplexVector3> e, h;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    e.push_back(perturb(traces.e[j], nodes[j].normal));
    h.push_back(perturb(traces.h[j], nodes[j].normal));
  }
  return BoundaryTraces(*traces.mesh, std::move(e), std::move(h));
}

// ---------------------------------------------------------------------------
// Integral representations

struct RepresentationOptions {
  TeodorescuOptions teodorescu{};
  CauchyOptions cauchy{};
};

/// Source term of a representation: current density plus the volume rule
/// used to integrate it.
struct VolumeSource {
  SourceData source;
  VolumeQuadrature const* quadrature = nullptr;
};

struct SplitQuaternions {
  ComplexQuaternion phi, psi;
};

struct EHQuaternions {
  ComplexQuaternion e, h;
};

/// Phi(x) =  T_{alpha1}[(i/k)(alpha1 j - div j)] + K_{alpha1} Phi
/// Psi(x) =  T_{-alpha2}[-(i/k)(alpha2 j + div j)] + K_{-alpha2} Psi
/// Results are full quaternions; their scalar parts vanish for genuine data.
inline SplitQuaternions phi_psi_representation(
    BoundaryTraces const& traces, std::optional<VolumeSource> const& source,
    ChiralMedium const& medium, Vec3 const& x,
    RepresentationOptions const& opt = {}) {
  SurfaceMesh const& mesh = *traces.mesh;
  std::vector<ComplexQuaternion> phi, psi;
  phi.reserve(traces.e.size());
  psi.reserve(traces.e.size());
  for (std::size_t j = 0; j < traces.e.size(); ++j) {
    SplitValue const s = split({traces.e[j], traces.h[j]});
    phi.emplace_back(s.phi);
    psi.emplace_back(s.psi);
  }
  ComplexScalar const a1 = medium.alpha1(), a2 = medium.alpha2();
  SplitQuaternions out{
      cauchy_boundary(a1, Sign::plus, BoundaryDensity(mesh, std::move(phi)), x,
                      opt.cauchy),
      cauchy_boundary(a2, Sign::minus, BoundaryDensity(mesh, std::move(psi)), x,
                      opt.cauchy)};
  if (source) {
    if (!source->quadrature)
      throw precondition_error("a volume source needs a volume quadrature");
    auto const rhs = phi_psi_rhs(source->source, medium);
    auto const& q = *source->quadrature;
    out.phi += teodorescu(a1, Sign::plus, VolumeDensity::sample(q, rhs.phi), x,
                          opt.teodorescu);
    out.psi += teodorescu(a2, Sign::minus, VolumeDensity::sample(q, rhs.psi), x,
                          opt.teodorescu);
  }
  return out;
}

/// E and H assembled from merge of the Phi/Psi representation.
inline EHQuaternions reconstruct_via_split(
    BoundaryTraces const& traces, std::optional<VolumeSource> const& source,
    ChiralMedium const& medium, Vec3 const& x,
    RepresentationOptions const& opt = {}) {
  auto const s = phi_psi_representation(traces, source, medium, x, opt);
  return {0.5 * (s.phi + s.psi), (1.0 / ComplexScalar(0, 2)) * (s.phi - s.psi)};
}

/// E and H from the explicit two-kernel formulas:
///
///   E(x) = (i/2) int_Omega { U1 [j/(1+kb) - div j/k] - U2 [j/(1-kb) + div j/k] }
///          - (1/2) int_Gamma { U1 n (e + ih) + U2 n (e - ih) }
///   H(x) = (1/2) int_Omega { U1 [j/(1+kb) - div j/k] + U2 [j/(1-kb) + div j/k] }
///          + (1/2i) int_Gamma { -U1 n (e + ih) + U2 n (e - ih) }
///
/// with U1 = Upsilon_{alpha1}(x - y) and U2 = Upsilon_{-alpha2}(x - y).
inline EHQuaternions reconstruct_EH(BoundaryTraces const& traces,
                                    std::optional<VolumeSource> const& source,
                                    ChiralMedium const& medium, Vec3 const& x,
                                    RepresentationOptions const& opt = {}) {
  SurfaceMesh const& mesh = *traces.mesh;
  check_boundary_distance(mesh, x, opt.cauchy);
  ComplexScalar const a1 = medium.alpha1(), a2 = medium.alpha2();
  ComplexScalar const i = imag_unit;

  ComplexQuaternion surf1, surf2;  // int U1 n (e+ih), int U2 n (e-ih)
  auto const nodes = mesh.nodes();
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Vec3 const z = x - nodes[j].position;
    ComplexQuaternion const n = to_quaternion(nodes[j].normal);
    ComplexQuaternion const plus(traces.e[j] + i * traces.h[j]);
    ComplexQuaternion const minus(traces.e[j] - i * traces.h[j]);
    surf1 += nodes[j].weight * (upsilon(a1, Sign::plus, z) * n * plus);
    surf2 += nodes[j].weight * (upsilon(a2, Sign::minus, z) * n * minus);
  }
  EHQuaternions out{-0.5 * (surf1 + surf2),
                    (1.0 / ComplexScalar(0, 2)) * (surf2 - surf1)};

  if (source) {
    if (!source->quadrature)
      throw precondition_error("a volume source needs a volume quadrature");
    ComplexScalar const k = medium.k();
    ComplexScalar const kb = k * medium.beta();
    auto const& q = *source->quadrature;
    auto const vnodes = q.nodes();
    auto const weights = q.weights();
    auto const spacing = q.spacing();
    ComplexQuaternion vol1, vol2;
    for (std::size_t j = 0; j < vnodes.size(); ++j) {
      Vec3 const z = x - vnodes[j];
      double const r = norm(z);
      if (opt.teodorescu.exclusion &&
          r < opt.teodorescu.exclusion_factor * spacing[j])
        continue;
      if (!(r > 0))
        throw singularity_error("evaluation point coincides with a volume node");
      ComplexVector3 const jv = source->source.j(vnodes[j]);
      ComplexScalar const div = source->source.div_j(vnodes[j]);
      ComplexQuaternion const d1 =
          ComplexQuaternion(-div / k) + ComplexQuaternion(jv / (1.0 + kb));
      ComplexQuaternion const d2 =
          ComplexQuaternion(div / k) + ComplexQuaternion(jv / (1.0 - kb));
      vol1 += weights[j] * (upsilon(a1, Sign::plus, z) * d1);
      vol2 += weights[j] * (upsilon(a2, Sign::minus, z) * d2);
    }
    out.e += (0.5 * i) * (vol1 - vol2);
    out.h += 0.5 * (vol1 + vol2);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Extendibility criterion

struct ExtendibilityOptions {
  /// Offset depth as a multiple of the mesh spacing (used when depth <= 0).
  double depth_factor = 2.0;
  /// Polynomial order of the extrapolation in depth towards the surface:
  /// 0 uses the offset point alone, p > 0 combines depths d, 2d, ..., (p+1)d.
  int extrapolation_order = 2;
  CauchyOptions cauchy{};
};

struct ExtendibilityPoint {
  std::size_t triangle = 0;
  Vec3 offset_point;
  double residual_e = 0;
  double residual_h = 0;
  double residual = 0;  ///< sqrt((residual_e^2 + residual_h^2) / 2)
  double scalar_part = 0;  ///< |Sc| of the reconstructed e and h, relative
  bool too_deep = false;
};

struct ExtendibilityAggregate {
  double max = 0;
  double rms = 0;
};

struct ExtendibilityReport {
  double depth = 0;
  double spacing = 0;
  int extrapolation_order = 0;
  double trace_scale = 0;
  std::vector<ExtendibilityPoint> points;
  ExtendibilityAggregate e, h, combined;
};

namespace detail {

inline ExtendibilityAggregate aggregate(std::vector<double> const& r) {
  ExtendibilityAggregate a;
  double sq = 0;
  for (double v : r) {
    a.max = std::max(a.max, v);
    sq += v * v;
  }
  a.rms = r.empty() ? 0 : std::sqrt(sq / static_cast<double>(r.size()));
  return a;
}

/// Weights of the extrapolation to depth 0 from samples at d, 2d, ..., (p+1)d.
inline std::vector<double> depth_extrapolation_weights(int order) {
  std::vector<double> w(static_cast<std::size_t>(order) + 1);
  for (int m = 1; m <= order + 1; ++m) {
    // Lagrange basis at t = 0 through nodes t_l = l.
    double c = 1;
    for (int l = 1; l <= order + 1; ++l)
      if (l != m) c *= (0.0 - l) / static_cast<double>(m - l);
    w[static_cast<std::size_t>(m - 1)] = c;
  }
  return w;
}

}  // namespace detail

/// Evaluates the boundary-only representation of E and H at interior offset
/// points tau - d n(tau), extrapolates in d towards the surface and compares
/// with the given traces at tau. Residuals are relative to the RMS trace
/// magnitude sqrt(mean(|e|^2 + |h|^2)). The full quaternion is compared, so
/// nonzero reconstructed scalar parts count against the traces.
inline ExtendibilityReport extendibility_residual(
    BoundaryTraces const& traces, ChiralMedium const& medium, double depth = 0,
    ExtendibilityOptions const& opt = {}) {
  SurfaceMesh const& mesh = *traces.mesh;
  if (opt.extrapolation_order < 0)
    throw config_error("extrapolation order must be >= 0");
  double const h = mesh.spacing();
  if (depth <= 0) depth = opt.depth_factor * h;
  double const d_min = opt.cauchy.min_distance_factor * h;
  if (depth < d_min * (1 - 1e-12))
    throw precondition_error("offset depth " + std::to_string(depth) +
                             " violates the boundary exclusion distance " +
                             std::to_string(d_min));
  double const deepest = depth * (opt.extrapolation_order + 1);
  if (!(deepest < inradius_estimate(mesh)))
    throw precondition_error("deepest offset " + std::to_string(deepest) +
                             " is not below the inradius estimate");

  ExtendibilityReport report;
  report.depth = depth;
  report.spacing = h;
  report.extrapolation_order = opt.extrapolation_order;

  double scale_sq = 0;
  for (std::size_t j = 0; j < traces.e.size(); ++j)
    scale_sq += std::pow(norm(traces.e[j]), 2) + std::pow(norm(traces.h[j]), 2);
  double scale = std::sqrt(scale_sq / static_cast<double>(traces.e.size()));
  report.trace_scale = scale;
  if (scale == 0) scale = 1;

  auto const weights = detail::depth_extrapolation_weights(opt.extrapolation_order);
  auto const offsets = interior_offset_points(mesh, depth);
  // The nearest offset was checked above; skip the per-point distance scan.
  RepresentationOptions rep;
  rep.cauchy.min_distance_factor = 0;

  std::vector<double> re, rh, rc;
  for (auto const& off : offsets) {
    Vec3 const n = mesh.normals()[off.triangle];
    Vec3 const tau = mesh.centroids()[off.triangle];
    EHQuaternions limit;
    for (std::size_t m = 0; m < weights.size(); ++m) {
      Vec3 const x = tau - (depth * static_cast<double>(m + 1)) * n;
      auto const v = reconstruct_EH(traces, std::nullopt, medium, x, rep);
      limit.e += weights[m] * v.e;
      limit.h += weights[m] * v.h;
    }
    auto const [e_tau, h_tau] = traces.at_triangle(off.triangle);
    ExtendibilityPoint p;
    p.triangle = off.triangle;
    p.offset_point = off.point;
    p.too_deep = off.too_deep;
    p.residual_e = norm(limit.e - ComplexQuaternion(e_tau)) / scale;
    p.residual_h = norm(limit.h - ComplexQuaternion(h_tau)) / scale;
    p.residual = std::sqrt(0.5 * (p.residual_e * p.residual_e +
                                  p.residual_h * p.residual_h));
    p.scalar_part =
        std::hypot(std::abs(limit.e.sc()), std::abs(limit.h.sc())) / scale;
    re.push_back(p.residual_e);
    rh.push_back(p.residual_h);
    rc.push_back(p.residual);
    report.points.push_back(p);
  }
  report.e = detail::aggregate(re);
  report.h = detail::aggregate(rh);
  report.combined = detail::aggregate(rc);
  return report;
}

// ---------------------------------------------------------------------------
// Curl-equation residuals

struct MaxwellResidual {
  double faraday = 0;  ///< rot E + ik(H + beta rot H), relative
  double ampere = 0;   ///< rot H - ik(E + beta rot E), relative
};

/// Finite-difference residuals of the source-free curl equations at x, each
/// normalized by the sum of the magnitudes of its terms.
template <typename EField, typename HField>
MaxwellResidual maxwell_residual(EField&& e, HField&& h,
                                 ChiralMedium const& medium, Vec3 const& x,
                                 double step = default_fd_step) {
  ComplexScalar const ik = imag_unit * medium.k();
  ComplexScalar const beta = medium.beta();
  ComplexVector3 const rot_e = fd_rot(e, x, step);
  ComplexVector3 const rot_h = fd_rot(h, x, step);
  ComplexVector3 const ev = e(x), hv = h(x);
  double const ak = std::abs(medium.k()), ab = std::abs(beta);

  auto relative = [](double num, double den) { return den > 0 ? num / den : num; };
  MaxwellResidual r;
  r.faraday = relative(norm(rot_e + ik * (hv + beta * rot_h)),
                       norm(rot_e) + ak * (norm(hv) + ab * norm(rot_h)));
  r.ampere = relative(norm(rot_h - ik * (ev + beta * rot_e)),
                      norm(rot_h) + ak * (norm(ev) + ab * norm(rot_e)));
  return r;
}

}  // namespace quatem
