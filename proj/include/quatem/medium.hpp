#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "quatem/complex_quaternion.hpp"
#include "quatem/errors.hpp"

namespace quatem {

/// Which square root of a complex number to take.
enum class RootBranch {
  upper,  ///< Im >= 0 (decaying convention); principal root when Im = 0
  lower,  ///< the negative of `upper`
};

inline ComplexScalar branch_sqrt(ComplexScalar z, RootBranch branch) {
  ComplexScalar r = std::sqrt(z);
  if (r.imag() < 0) r = -r;
  return branch == RootBranch::upper ? r : -r;
}

/// Chiral (Drude-Born-Fedorov) medium with derived wavenumbers.
///
///   k      = omega sqrt(mu eps)
///   alpha1 = k / (1 + k beta)
///   alpha2 = k / (1 - k beta)
///
/// alpha1 and alpha2 are the parameters of the decoupled equations
/// (D + alpha1) Phi = ... and (D - alpha2) Psi = ... .
class ChiralMedium {
 public:
  ChiralMedium(double omega, ComplexScalar epsilon, ComplexScalar mu,
               ComplexScalar beta, RootBranch branch = RootBranch::upper,
               double singular_tolerance = 1e-9)
      : omega_(omega), epsilon_(epsilon), mu_(mu), beta_(beta), branch_(branch) {
    if (!std::isfinite(omega) || !std::isfinite(std::abs(epsilon)) ||
        !std::isfinite(std::abs(mu)) || !std::isfinite(std::abs(beta)))
      throw config_error("medium parameters must be finite");
    if (epsilon == ComplexScalar{} || mu == ComplexScalar{})
      throw config_error("epsilon and mu must be nonzero");
    k_ = omega * branch_sqrt(mu * epsilon, branch);
    sqrt_mu_ = branch_sqrt(mu, branch);
    sqrt_eps_ = branch_sqrt(epsilon, branch);
    // Keep omega sqrt(mu) sqrt(eps) equal to k.
    if (std::abs(omega * sqrt_mu_ * sqrt_eps_ - k_) > 1e-12 * (std::abs(k_) + 1))
      sqrt_eps_ = -sqrt_eps_;

    ComplexScalar const kb = k_ * beta;
    double const tol = singular_tolerance * std::max(1.0, std::abs(kb));
    ComplexScalar const den1 = 1.0 + kb;
    ComplexScalar const den2 = 1.0 - kb;
    if (std::abs(den1) <= tol || std::abs(den2) <= tol)
      throw resonance_error("k*beta = +-1: alpha1 or alpha2 is singular");
    alpha1_ = k_ / den1;
    alpha2_ = k_ / den2;
  }

  double omega() const { return omega_; }
  ComplexScalar epsilon() const { return epsilon_; }
  ComplexScalar mu() const { return mu_; }
  ComplexScalar beta() const { return beta_; }
  ComplexScalar k() const { return k_; }
  ComplexScalar alpha1() const { return alpha1_; }
  ComplexScalar alpha2() const { return alpha2_; }
  ComplexScalar sqrt_mu() const { return sqrt_mu_; }
  ComplexScalar sqrt_epsilon() const { return sqrt_eps_; }
  RootBranch branch() const { return branch_; }

 private:
  double omega_;
  ComplexScalar epsilon_, mu_, beta_;
  RootBranch branch_;
  ComplexScalar k_, sqrt_mu_, sqrt_eps_, alpha1_, alpha2_;
};

inline ChiralMedium make_medium(double omega, ComplexScalar epsilon,
                                ComplexScalar mu, ComplexScalar beta,
                                RootBranch branch = RootBranch::upper) {
  return ChiralMedium(omega, epsilon, mu, beta, branch);
}

}  // namespace quatem
