#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "quatem/analytic_fields.hpp"
#include "quatem/kernels.hpp"
#include "support/oracles.hpp"

namespace quatem {
namespace {

constexpr double pi = std::numbers::pi;
ComplexScalar const I{0, 1};

TEST(Theta, LaplaceLimit) {
  EXPECT_NEAR(std::abs(theta(0.0, {1, 0, 0}) - (-1 / (4 * pi))), 0, 1e-16);
  EXPECT_NEAR(theta(0.0, {0, 0, 1}).real(), -0.0795775, 1e-7);
}

TEST(Theta, PhasePeriodicity) {
  double const alpha = 1.7;
  Vec3 const x = (2 * pi / alpha) * normalized(Vec3{1, 2, -1});
  ComplexScalar const expected = -alpha / (8 * pi * pi);
  EXPECT_LT(std::abs(theta(alpha, x) - expected), 1e-15);
}

TEST(Theta, SingularAtOrigin) {
  EXPECT_THROW(theta(1.0, {0, 0, 0}), singularity_error);
  EXPECT_THROW(upsilon(1.0, Sign::plus, {0, 0, 0}), singularity_error);
}

TEST(Theta, SolvesHelmholtzAwayFromOrigin) {
  testing::Random rng(11);
  for (ComplexScalar alpha : {ComplexScalar(0), ComplexScalar(1), ComplexScalar(1, 0.3),
                              ComplexScalar(0, 2)}) {
    for (int n = 0; n < 10; ++n) {
      Vec3 const x = rng.on_sphere(1.0);
      auto f = [&](Vec3 const& p) { return theta(alpha, p); };
      ComplexScalar const th = theta(alpha, x);
      ComplexScalar const lap = fd_laplacian(f, x, 1e-4);
      double const scale = std::abs(th) * (1 + std::norm(alpha));
      EXPECT_LT(std::abs(lap + alpha * alpha * th) / scale, 1e-5) << alpha;
    }
  }
}

TEST(Theta, RadialSymmetry) {
  testing::Random rng(12);
  ComplexScalar const alpha{1.2, 0.4};
  for (int n = 0; n < 20; ++n) {
    Vec3 const x = rng.in_ball(2.0) + Vec3{0.1, 0, 0};
    auto const r = testing::rotation({rng.uniform(), rng.uniform(), rng.uniform() + 2},
                                     rng.uniform(-pi, pi));
    EXPECT_LT(std::abs(theta(alpha, testing::apply(r, x)) - theta(alpha, x)),
              1e-14 * std::abs(theta(alpha, x)));
  }
}

TEST(Theta, ClosedFormGradientConvergesAtSecondOrder) {
  ComplexScalar const alpha{1, 0.3};
  Vec3 const x{0.6, -0.5, 0.62};
  auto f = [&](Vec3 const& p) { return theta(alpha, p); };
  auto const exact = grad_theta(alpha, x);
  auto error = [&](double h) {
    ComplexVector3 fd{fd_partial(f, 0, x, h), fd_partial(f, 1, x, h),
                      fd_partial(f, 2, x, h)};
    return norm(fd - exact);
  };
  double const e1 = error(2e-2), e2 = error(1e-2);
  EXPECT_GE(std::log2(e1 / e2), 1.9);
  EXPECT_LT(error(1e-4), 1e-8);
}

TEST(Upsilon, LaplaceLimitIsCauchyKernel) {
  auto const u = upsilon(0.0, Sign::plus, {1, 0, 0});
  EXPECT_EQ(u.sc(), ComplexScalar(0));
  EXPECT_NEAR(u[1].real(), -1 / (4 * pi), 1e-16);
  EXPECT_EQ(u[2], ComplexScalar(0));
  EXPECT_EQ(u[3], ComplexScalar(0));
  // Against finite differences of theta.
  auto f = [](Vec3 const& p) { return theta(0.0, p); };
  EXPECT_NEAR(u[1].real(), -fd_partial(f, 0, {1, 0, 0}).real(), 1e-9);
}

TEST(Upsilon, SignsDifferOnlyInScalarPart) {
  testing::Random rng(13);
  for (int n = 0; n < 20; ++n) {
    ComplexScalar const alpha = rng.complex(2);
    Vec3 const x = rng.on_sphere(0.8);
    auto const plus = upsilon(alpha, Sign::plus, x);
    auto const minus = upsilon(alpha, Sign::minus, x);
    EXPECT_EQ(plus.vec(), minus.vec());
    EXPECT_EQ(plus.sc(), -minus.sc());
    EXPECT_LT(norm(plus - minus - ComplexQuaternion(2.0 * alpha * theta(alpha, x))),
              1e-15);
  }
}

TEST(Upsilon, AnnihilatedByDAlpha) {
  testing::Random rng(14);
  for (ComplexScalar alpha : {ComplexScalar(1), ComplexScalar(1, 0.3), ComplexScalar(0, 2)}) {
    for (Sign sign : {Sign::plus, Sign::minus}) {
      for (int n = 0; n < 5; ++n) {
        Vec3 const x = rng.on_sphere(1.0);
        auto u = [&](Vec3 const& p) { return upsilon(alpha, sign, p); };
        auto const residual = fd_d_alpha(u, alpha, sign, x, 1e-4);
        double const scale = norm(fd_moisil_theodoresco(u, x, 1e-4)) +
                             std::abs(alpha) * norm(u(x));
        EXPECT_LT(norm(residual) / scale, 1e-5);
      }
    }
  }
}

TEST(Upsilon, FlippedPhaseTermIsNotAFundamentalSolution) {
  // Theta (alpha + x/|x|^2 + i alpha x/|x|): sign of the last term flipped.
  ComplexScalar const alpha{1, 0.3};
  auto flipped = [&](Vec3 const& p) {
    double const r = norm(p);
    ComplexScalar const th = theta(alpha, p);
    ComplexScalar const c = th * (1.0 / (r * r) + I * alpha / r);
    return ComplexQuaternion(alpha * th, c * p.x, c * p.y, c * p.z);
  };
  Vec3 const x{0.3, 0.8, -0.52};
  auto const residual = fd_d_alpha(flipped, alpha, Sign::plus, x, 1e-4);
  EXPECT_GT(norm(residual) / norm(flipped(x)), 1e-2);
}

TEST(FiniteDifference, MoisilTheodorescoOnLinearFields) {
  Vec3 const x{0.3, -0.2, 0.7};
  auto const d1 = fd_moisil_theodoresco(coordinate_field(0), x);
  EXPECT_LT(norm(d1 - ComplexQuaternion::unit(1)), 1e-10);
  auto const did = fd_moisil_theodoresco(identity_vector_field(), x);
  EXPECT_LT(norm(did - ComplexQuaternion(-3.0)), 1e-10);
}

TEST(FiniteDifference, SquareOfDIsMinusLaplacian) {
  PolynomialCoefficients p;
  p.quadratic[0][0][0] = 1.0;  // f = x1^2
  auto const f = polynomial_field(p);
  auto df = [&](Vec3 const& y) { return fd_moisil_theodoresco(f, y); };
  Vec3 const x{0.1, 0.4, -0.3};
  auto const ddf = fd_moisil_theodoresco(df, x);
  EXPECT_LT(norm(ddf - ComplexQuaternion(-2.0)) / 2.0, 1e-6);
}

TEST(FiniteDifference, DAlphaReducesToDAtZero) {
  auto const f = abc_beltrami(0.7);
  Vec3 const x{0.2, 0.1, -0.4};
  EXPECT_EQ(fd_d_alpha(f, 0.0, Sign::plus, x), fd_moisil_theodoresco(f, x));
}

TEST(FiniteDifference, BeltramiIsMonogenic) {
  ComplexScalar const alpha{0.9, 0.2};
  auto const f = abc_beltrami(-alpha);
  testing::Random rng(15);
  for (int n = 0; n < 10; ++n) {
    Vec3 const x = rng.in_ball(1.0);
    auto const r = fd_d_alpha(f, alpha, Sign::plus, x);
    EXPECT_LT(norm(r) / (std::abs(alpha) * norm(f(x))), 1e-7);
  }
}

}  // namespace
}  // namespace quatem
