#pragma once

/**
 * @file analytic_fields.hpp
 * @brief Closed-form test fields with exact derivatives.
 *
 * Every AnalyticField carries its exact partial derivatives; D f, div, rot
 * and grad are assembled from them, never from finite differences, so the
 * fields can serve as oracles for the integral identities and for the
 * difference operators alike.
 */

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "quatem/complex_quaternion.hpp"
#include "quatem/geometry.hpp"
#include "quatem/kernels.hpp"
#include "quatem/medium.hpp"

namespace quatem {

using QuaternionPartials = std::array<ComplexQuaternion, 3>;

/// D f = sum_k i_k df/dx_k, written as -div + grad + rot.
inline ComplexQuaternion moisil_theodoresco_from_partials(
    QuaternionPartials const& d) {
  ComplexScalar const div = d[0][1] + d[1][2] + d[2][3];
  ComplexVector3 const grad{d[0][0], d[1][0], d[2][0]};
  ComplexVector3 const rot{d[1][3] - d[2][2], d[2][1] - d[0][3],
                           d[0][2] - d[1][1]};
  return ComplexQuaternion(-div) + ComplexQuaternion(grad + rot);
}

class AnalyticField {
 public:
  using Evaluator = std::function<ComplexQuaternion(Vec3 const&)>;
  using PartialsEvaluator = std::function<QuaternionPartials(Vec3 const&)>;

  AnalyticField(std::string family, Evaluator value, PartialsEvaluator partials,
                Evaluator laplacian = {},
                std::map<std::string, ComplexScalar> parameters = {})
      : family_(std::move(family)),
        value_(std::move(value)),
        partials_(std::move(partials)),
        laplacian_(std::move(laplacian)),
        parameters_(std::move(parameters)) {}

  ComplexQuaternion operator()(Vec3 const& x) const { return value_(x); }
  ComplexQuaternion value(Vec3 const& x) const { return value_(x); }
  ComplexVector3 vector(Vec3 const& x) const { return value_(x).vec(); }
  QuaternionPartials partials(Vec3 const& x) const { return partials_(x); }

  /// Exact D f.
  ComplexQuaternion derivative(Vec3 const& x) const {
    return moisil_theodoresco_from_partials(partials_(x));
  }

  /// Exact (D +- alpha) f.
  ComplexQuaternion d_alpha(ComplexScalar alpha, Sign sign,
                            Vec3 const& x) const {
    return derivative(x) + (to_double(sign) * alpha) * value_(x);
  }

  ComplexScalar divergence(Vec3 const& x) const {
    auto const d = partials_(x);
    return d[0][1] + d[1][2] + d[2][3];
  }

  ComplexVector3 rot(Vec3 const& x) const {
    auto const d = partials_(x);
    return {d[1][3] - d[2][2], d[2][1] - d[0][3], d[0][2] - d[1][1]};
  }

  ComplexVector3 grad_scalar(Vec3 const& x) const {
    auto const d = partials_(x);
    return {d[0][0], d[1][0], d[2][0]};
  }

  bool has_laplacian() const { return static_cast<bool>(laplacian_); }
  ComplexQuaternion laplacian(Vec3 const& x) const { return laplacian_(x); }

  std::string const& family() const { return family_; }
  std::map<std::string, ComplexScalar> const& parameters() const {
    return parameters_;
  }

 private:
  std::string family_;
  Evaluator value_;
  PartialsEvaluator partials_;
  Evaluator laplacian_;
  std::map<std::string, ComplexScalar> parameters_;
};

/// a F + b G, with derivatives combined accordingly.
inline AnalyticField linear_combination(ComplexScalar a, AnalyticField const& f,
                                        ComplexScalar b, AnalyticField const& g,
                                        std::string family = "combination") {
  auto value = [=](Vec3 const& x) { return a * f(x) + b * g(x); };
  auto partials = [=](Vec3 const& x) {
    auto const df = f.partials(x);
    auto const dg = g.partials(x);
    return QuaternionPartials{a * df[0] + b * dg[0], a * df[1] + b * dg[1],
                              a * df[2] + b * dg[2]};
  };
  AnalyticField::Evaluator lap;
  if (f.has_laplacian() && g.has_laplacian())
    lap = [=](Vec3 const& x) { return a * f.laplacian(x) + b * g.laplacian(x); };
  return AnalyticField(std::move(family), value, partials, lap);
}

// ---------------------------------------------------------------------------
// Arnold-Beltrami-Childress fields

struct AbcAmplitudes {
  ComplexScalar a{1.0}, b{0.7}, c{0.3};
};

/// F(x) = (A sin(l x3) + C cos(l x2), B sin(l x1) + A cos(l x3),
///         C sin(l x2) + B cos(l x1)),  with rot F = l F and div F = 0.
inline AnalyticField abc_beltrami(ComplexScalar lambda, AbcAmplitudes amp = {}) {
  auto value = [=](Vec3 const& x) {
    auto const [A, B, C] = std::array{amp.a, amp.b, amp.c};
    return ComplexQuaternion(
        0.0, A * std::sin(lambda * x.z) + C * std::cos(lambda * x.y),
        B * std::sin(lambda * x.x) + A * std::cos(lambda * x.z),
        C * std::sin(lambda * x.y) + B * std::cos(lambda * x.x));
  };
  auto partials = [=](Vec3 const& x) {
    auto const [A, B, C] = std::array{amp.a, amp.b, amp.c};
    ComplexScalar const zero{};
    return QuaternionPartials{
        ComplexQuaternion(zero, zero, B * lambda * std::cos(lambda * x.x),
                          -B * lambda * std::sin(lambda * x.x)),
        ComplexQuaternion(zero, -C * lambda * std::sin(lambda * x.y), zero,
                          C * lambda * std::cos(lambda * x.y)),
        ComplexQuaternion(zero, A * lambda * std::cos(lambda * x.z),
                          -A * lambda * std::sin(lambda * x.z), zero)};
  };
  // Each component solves the Helmholtz equation with wavenumber lambda.
  auto lap = [=](Vec3 const& x) { return -(lambda * lambda) * value(x); };
  return AnalyticField("abc", value, partials, lap,
                       {{"lambda", lambda}, {"A", amp.a}, {"B", amp.b}, {"C", amp.c}});
}

// ---------------------------------------------------------------------------
// Quaternion-valued polynomials of degree <= 2

/// f_k(x) = constant[k] + sum_i linear[k][i] x_i + sum_ij quadratic[k][i][j] x_i x_j
/// for each quaternion component k = 0..3.
struct PolynomialCoefficients {
  std::array<ComplexScalar, 4> constant{};
  std::array<std::array<ComplexScalar, 3>, 4> linear{};
  std::array<std::array<std::array<ComplexScalar, 3>, 3>, 4> quadratic{};
};

inline AnalyticField polynomial_field(PolynomialCoefficients const& p) {
  auto value = [=](Vec3 const& x) {
    ComplexQuaternion q;
    for (std::size_t k = 0; k < 4; ++k) {
      ComplexScalar s = p.constant[k];
      for (std::size_t i = 0; i < 3; ++i) {
        s += p.linear[k][i] * x[i];
        for (std::size_t j = 0; j < 3; ++j) s += p.quadratic[k][i][j] * x[i] * x[j];
      }
      q[k] = s;
    }
    return q;
  };
  auto partials = [=](Vec3 const& x) {
    QuaternionPartials d;
    for (std::size_t m = 0; m < 3; ++m)
      for (std::size_t k = 0; k < 4; ++k) {
        ComplexScalar s = p.linear[k][m];
        for (std::size_t j = 0; j < 3; ++j)
          s += (p.quadratic[k][m][j] + p.quadratic[k][j][m]) * x[j];
        d[m][k] = s;
      }
    return d;
  };
  auto lap = [=](Vec3 const&) {
    ComplexQuaternion q;
    for (std::size_t k = 0; k < 4; ++k)
      q[k] = 2.0 * (p.quadratic[k][0][0] + p.quadratic[k][1][1] + p.quadratic[k][2][2]);
    return q;
  };
  return AnalyticField("polynomial", value, partials, lap);
}

/// Scalar field f = x_axis.
inline AnalyticField coordinate_field(std::size_t axis) {
  PolynomialCoefficients p;
  p.linear[0][axis] = 1.0;
  return polynomial_field(p);
}

/// Purely vectorial identity field f(x) = x.
inline AnalyticField identity_vector_field() {
  PolynomialCoefficients p;
  for (std::size_t k = 0; k < 3; ++k) p.linear[k + 1][k] = 1.0;
  return polynomial_field(p);
}

/// Purely vectorial quadratic field (x2 x3, x1^2, x1 + x2); divergence-free,
/// rot = (1, x2 - 1, 2 x1 - x3).
inline AnalyticField sample_vector_polynomial() {
  PolynomialCoefficients p;
  p.quadratic[1][1][2] = 1.0;
  p.quadratic[2][0][0] = 1.0;
  p.linear[3][0] = 1.0;
  p.linear[3][1] = 1.0;
  return polynomial_field(p);
}

// ---------------------------------------------------------------------------
// Manufactured source-free chiral solution

/// E and H fields plus the split fields they were built from.
struct ChiralSolution {
  AnalyticField E, H, Phi, Psi;
};

struct ChiralAmplitudes {
  AbcAmplitudes phi{};
  AbcAmplitudes psi{};
};

/// Phi = ABC(-alpha1) solves (D + alpha1) Phi = 0 and Psi = ABC(alpha2)
/// solves (D - alpha2) Psi = 0; E = (Phi + Psi)/2 and H = (Phi - Psi)/(2i)
/// then satisfy both curl equations of the medium with j = 0.
inline ChiralSolution exact_chiral_solution(ChiralMedium const& medium,
                                            ChiralAmplitudes amp = {}) {
  AnalyticField phi = abc_beltrami(-medium.alpha1(), amp.phi);
  AnalyticField psi = abc_beltrami(medium.alpha2(), amp.psi);
  ComplexScalar const half{0.5};
  ComplexScalar const half_over_i = 1.0 / ComplexScalar(0, 2);
  AnalyticField e = linear_combination(half, phi, half, psi, "chiral-E");
  AnalyticField h = linear_combination(half_over_i, phi, -half_over_i, psi, "chiral-H");
  return {std::move(e), std::move(h), std::move(phi), std::move(psi)};
}

}  // namespace quatem
