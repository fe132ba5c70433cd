#pragma once

/**
 * @file kernels.hpp
 * @brief Fundamental solutions of the Helmholtz operator and of D +- alpha,
 * plus central-difference versions of the Moisil-Theodoresco operator used
 * to verify them.
 *
 *   theta(alpha, x)         = -exp(i alpha |x|) / (4 pi |x|)
 *   upsilon(alpha, +-1, x)  = -grad theta(alpha, x) +- alpha theta(alpha, x)
 *
 * The Moisil-Theodoresco operator acts from the left:
 *   D f = i1 df/dx1 + i2 df/dx2 + i3 df/dx3
 *       = -div vec(f) + grad sc(f) + rot vec(f),
 * and D^2 = -Laplacian.
 */

#include <cmath>
#include <complex>
#include <numbers>

#include "quatem/complex_quaternion.hpp"
#include "quatem/errors.hpp"
#include "quatem/geometry.hpp"

namespace quatem {

/// Sign selector of D +- alpha.
enum class Sign : int { plus = 1, minus = -1 };

constexpr double to_double(Sign s) { return static_cast<int>(s); }
constexpr Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

/// Default relative finite-difference step.
inline constexpr double default_fd_step = 1e-4;

inline ComplexScalar theta(ComplexScalar alpha, Vec3 const& x) {
  double const r = norm(x);
  if (!(r > 0)) throw singularity_error("theta evaluated at the origin");
  ComplexScalar const i{0, 1};
  return -std::exp(i * alpha * r) / (4 * std::numbers::pi * r);
}

/// Closed-form gradient of theta: theta(x) (i alpha - 1/|x|) x/|x|.
inline ComplexVector3 grad_theta(ComplexScalar alpha, Vec3 const& x) {
  double const r = norm(x);
  if (!(r > 0)) throw singularity_error("grad theta evaluated at the origin");
  ComplexScalar const i{0, 1};
  ComplexScalar const radial = theta(alpha, x) * (i * alpha - 1.0 / r) / r;
  return {radial * x.x, radial * x.y, radial * x.z};
}

/// Upsilon_{+-alpha}(x) = -grad Theta_alpha(x) +- alpha Theta_alpha(x).
inline ComplexQuaternion upsilon(ComplexScalar alpha, Sign sign, Vec3 const& x) {
  double const r = norm(x);
  if (!(r > 0)) throw singularity_error("upsilon evaluated at the origin");
  ComplexScalar const i{0, 1};
  ComplexScalar const th = -std::exp(i * alpha * r) / (4 * std::numbers::pi * r);
  ComplexScalar const radial = -th * (i * alpha - 1.0 / r) / r;
  return {to_double(sign) * alpha * th, radial * x.x, radial * x.y,
          radial * x.z};
}

// ---------------------------------------------------------------------------
// Finite differences

/// Central-difference D f at x with step h.
template <typename Field>
ComplexQuaternion fd_moisil_theodoresco(Field&& field, Vec3 const& x,
                                        double h = default_fd_step) {
  ComplexQuaternion out;
  for (int k = 0; k < 3; ++k) {
    Vec3 e;
    e[static_cast<std::size_t>(k)] = h;
    ComplexQuaternion const df =
        (1.0 / (2 * h)) * (field(x + e) - field(x - e));
    out += ComplexQuaternion::unit(k + 1) * df;
  }
  return out;
}

/// Central-difference (D +- alpha) f at x.
template <typename Field>
ComplexQuaternion fd_d_alpha(Field&& field, ComplexScalar alpha, Sign sign,
                             Vec3 const& x, double h = default_fd_step) {
  return fd_moisil_theodoresco(field, x, h) +
         (to_double(sign) * alpha) * ComplexQuaternion(field(x));
}

/// Central-difference partial derivative d/dx_k.
template <typename Field>
auto fd_partial(Field&& field, int k, Vec3 const& x,
                double h = default_fd_step) {
  Vec3 e;
  e[static_cast<std::size_t>(k)] = h;
  return (1.0 / (2 * h)) * (field(x + e) - field(x - e));
}

/// Seven-point Laplacian of a scalar or quaternion field.
template <typename Field>
auto fd_laplacian(Field&& field, Vec3 const& x, double h = default_fd_step) {
  auto const center = field(x);
  auto sum = -6.0 * center;
  for (int k = 0; k < 3; ++k) {
    Vec3 e;
    e[static_cast<std::size_t>(k)] = h;
    sum = sum + field(x + e) + field(x - e);
  }
  return (1.0 / (h * h)) * sum;
}

/// Central-difference curl of a C^3-valued field.
template <typename Field>
ComplexVector3 fd_rot(Field&& field, Vec3 const& x,
                      double h = default_fd_step) {
  ComplexVector3 const d1 = fd_partial(field, 0, x, h);
  ComplexVector3 const d2 = fd_partial(field, 1, x, h);
  ComplexVector3 const d3 = fd_partial(field, 2, x, h);
  return {d2[2] - d3[1], d3[0] - d1[2], d1[1] - d2[0]};
}

/// Central-difference divergence of a C^3-valued field.
template <typename Field>
ComplexScalar fd_div(Field&& field, Vec3 const& x, double h = default_fd_step) {
  return fd_partial(field, 0, x, h)[0] + fd_partial(field, 1, x, h)[1] +
         fd_partial(field, 2, x, h)[2];
}

}  // namespace quatem
