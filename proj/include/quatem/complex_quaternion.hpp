#pragma once

/**
 * @file complex_quaternion.hpp
 * @brief Complex quaternions H(C).
 *
 * q = q0 + q1 i1 + q2 i2 + q3 i3 with complex coefficients q_k. The
 * quaternionic units satisfy i_k^2 = -1, i1 i2 = -i2 i1 = i3 (cyclic), and
 * the complex unit i commutes with every i_k. The algebra has zero divisors,
 * e.g. (1 + i i1)(1 - i i1) = 0, so no inverse is offered.
 */

#include <array>
#include <cmath>
#include <complex>
#include <istream>
#include <ostream>
#include <type_traits>

namespace quatem {

template <typename T>
struct basic_cvector3;

template <typename T>
class basic_quaternion {
  static_assert(std::is_floating_point_v<T>,
                "basic_quaternion needs a floating point component type");

 public:
  using real_type = T;
  using scalar_type = std::complex<T>;

  constexpr basic_quaternion() = default;
  constexpr basic_quaternion(scalar_type q0) : c_{q0, {}, {}, {}} {}
  constexpr basic_quaternion(T q0) : c_{scalar_type(q0), {}, {}, {}} {}
  constexpr basic_quaternion(scalar_type q0, scalar_type q1, scalar_type q2,
                             scalar_type q3)
      : c_{q0, q1, q2, q3} {}

  /// Embeds a purely vectorial quaternion.
  constexpr basic_quaternion(basic_cvector3<T> const& v);

  /// The quaternionic unit i_k (k = 0 gives 1).
  static constexpr basic_quaternion unit(int k) {
    basic_quaternion q;
    q.c_[static_cast<std::size_t>(k)] = scalar_type(1);
    return q;
  }

  constexpr scalar_type const& operator[](std::size_t k) const { return c_[k]; }
  constexpr scalar_type& operator[](std::size_t k) { return c_[k]; }

  constexpr scalar_type sc() const { return c_[0]; }
  constexpr basic_cvector3<T> vec() const;

  constexpr bool operator==(basic_quaternion const&) const = default;

  constexpr basic_quaternion& operator+=(basic_quaternion const& o) {
    for (std::size_t k = 0; k < 4; ++k) c_[k] += o.c_[k];
    return *this;
  }
  constexpr basic_quaternion& operator-=(basic_quaternion const& o) {
    for (std::size_t k = 0; k < 4; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  constexpr basic_quaternion& operator*=(scalar_type s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

 private:
  std::array<scalar_type, 4> c_{};
};

/// Purely vectorial complex quaternion, identified with a vector in C^3.
template <typename T>
struct basic_cvector3 {
  using scalar_type = std::complex<T>;
  std::array<scalar_type, 3> v{};

  constexpr basic_cvector3() = default;
  constexpr basic_cvector3(scalar_type a, scalar_type b, scalar_type c)
      : v{a, b, c} {}

  constexpr scalar_type const& operator[](std::size_t k) const { return v[k]; }
  constexpr scalar_type& operator[](std::size_t k) { return v[k]; }
  constexpr bool operator==(basic_cvector3 const&) const = default;
};

template <typename T>
constexpr basic_quaternion<T>::basic_quaternion(basic_cvector3<T> const& v)
    : c_{scalar_type{}, v[0], v[1], v[2]} {}

template <typename T>
constexpr basic_cvector3<T> basic_quaternion<T>::vec() const {
  return {c_[1], c_[2], c_[3]};
}

using ComplexScalar = std::complex<double>;
using ComplexQuaternion = basic_quaternion<double>;
using ComplexVector3 = basic_cvector3<double>;

// ---------------------------------------------------------------------------
// Quaternion arithmetic

template <typename T>
constexpr basic_quaternion<T> operator+(basic_quaternion<T> a,
                                        basic_quaternion<T> const& b) {
  return a += b;
}

template <typename T>
constexpr basic_quaternion<T> operator-(basic_quaternion<T> a,
                                        basic_quaternion<T> const& b) {
  return a -= b;
}

template <typename T>
constexpr basic_quaternion<T> operator-(basic_quaternion<T> const& a) {
  return {-a[0], -a[1], -a[2], -a[3]};
}

template <typename T>
constexpr basic_quaternion<T> operator*(std::complex<T> s,
                                        basic_quaternion<T> q) {
  return q *= s;
}

template <typename T>
constexpr basic_quaternion<T> operator*(basic_quaternion<T> q,
                                        std::complex<T> s) {
  return q *= s;
}

template <typename T>
constexpr basic_quaternion<T> operator*(T s, basic_quaternion<T> q) {
  return q *= std::complex<T>(s);
}

// Hamilton product with complex coefficients.
template <typename T>
constexpr basic_quaternion<T> operator*(basic_quaternion<T> const& a,
                                        basic_quaternion<T> const& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

template <typename T>
constexpr basic_quaternion<T> multiply(basic_quaternion<T> const& a,
                                       basic_quaternion<T> const& b) {
  return a * b;
}

template <typename T>
constexpr basic_quaternion<T> add(basic_quaternion<T> const& a,
                                  basic_quaternion<T> const& b) {
  return a + b;
}

template <typename T>
constexpr basic_quaternion<T> scale(std::complex<T> c,
                                    basic_quaternion<T> const& q) {
  return c * q;
}

template <typename T>
constexpr basic_quaternion<T> negate(basic_quaternion<T> const& q) {
  return -q;
}

/// Quaternionic conjugate Sc(q) - Vec(q). The complex coefficients are left
/// untouched.
template <typename T>
constexpr basic_quaternion<T> conjugate(basic_quaternion<T> const& q) {
  return {q[0], -q[1], -q[2], -q[3]};
}

/// Componentwise complex conjugation, the other involution of H(C).
template <typename T>
basic_quaternion<T> complex_conjugate(basic_quaternion<T> const& q) {
  return {std::conj(q[0]), std::conj(q[1]), std::conj(q[2]), std::conj(q[3])};
}

template <typename T>
constexpr std::complex<T> sc(basic_quaternion<T> const& q) {
  return q.sc();
}

template <typename T>
constexpr basic_cvector3<T> vec(basic_quaternion<T> const& q) {
  return q.vec();
}

/// Euclidean norm of the 8 real components.
template <typename T>
T norm(basic_quaternion<T> const& q) {
  T s{};
  for (std::size_t k = 0; k < 4; ++k) s += std::norm(q[k]);
  return std::sqrt(s);
}

template <typename T>
bool is_finite(basic_quaternion<T> const& q) {
  for (std::size_t k = 0; k < 4; ++k)
    if (!std::isfinite(q[k].real()) || !std::isfinite(q[k].imag()))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// C^3 vectors (bilinear, non-Hermitian operations)

template <typename T>
constexpr basic_cvector3<T> operator+(basic_cvector3<T> const& a,
                                      basic_cvector3<T> const& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <typename T>
constexpr basic_cvector3<T> operator-(basic_cvector3<T> const& a,
                                      basic_cvector3<T> const& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <typename T>
constexpr basic_cvector3<T> operator-(basic_cvector3<T> const& a) {
  return {-a[0], -a[1], -a[2]};
}

template <typename T>
constexpr basic_cvector3<T> operator*(std::complex<T> s,
                                      basic_cvector3<T> const& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

template <typename T>
constexpr basic_cvector3<T> operator*(T s, basic_cvector3<T> const& a) {
  return std::complex<T>(s) * a;
}

template <typename T>
constexpr basic_cvector3<T> operator/(basic_cvector3<T> const& a,
                                      std::complex<T> s) {
  return {a[0] / s, a[1] / s, a[2] / s};
}

template <typename T>
constexpr std::complex<T> dot(basic_cvector3<T> const& a,
                              basic_cvector3<T> const& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <typename T>
constexpr basic_cvector3<T> cross(basic_cvector3<T> const& a,
                                  basic_cvector3<T> const& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

template <typename T>
T norm(basic_cvector3<T> const& a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

// ---------------------------------------------------------------------------
// Text form: 8 numbers, re/im of q0..q3, whitespace separated.

template <typename T>
std::ostream& write_text(std::ostream& os, basic_quaternion<T> const& q) {
  for (std::size_t k = 0; k < 4; ++k) {
    if (k) os << ' ';
    os << q[k].real() << ' ' << q[k].imag();
  }
  return os;
}

template <typename T>
std::istream& read_text(std::istream& is, basic_quaternion<T>& q) {
  for (std::size_t k = 0; k < 4; ++k) {
    T re{}, im{};
    is >> re >> im;
    q[k] = {re, im};
  }
  return is;
}

template <typename T>
std::ostream& operator<<(std::ostream& os, basic_quaternion<T> const& q) {
  return write_text(os, q);
}

}  // namespace quatem
