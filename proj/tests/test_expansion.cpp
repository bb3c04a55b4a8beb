#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "loopforce/curve.hpp"
#include "loopforce/error.hpp"
#include "loopforce/expansion.hpp"
#include "loopforce/reference.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace loopforce;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2 = std::numbers::ln2;

// Cut-off force of the tangent circle at the origin with outward normal
// (cos phi, sin phi), integrated over the explicitly parametrized arc outside
// the ball of radius eps.
double tangent_circle_force(double kappa, double phi, double eps, double nu) {
  const double r = 1.0 / std::abs(kappa);
  const double sg = kappa > 0.0 ? 1.0 : -1.0;
  const double n1 = std::cos(phi), n2 = std::sin(phi);
  const double t1 = -n2, t2 = n1;
  const double alpha = 2.0 * std::asin(0.5 * eps * std::abs(kappa));
  auto f = [&](double th) {
    const double c = std::cos(th), s = std::sin(th);
    const double h = 2.0 * sg * r * std::sin(0.5 * th) * std::sin(0.5 * th);
    const double y1 = h * n1 + r * s * t1;
    const double y2 = h * n2 + r * s * t2;
    const double d1 = sg * s * n1 + c * t1;
    const double d2 = sg * s * n2 + c * t2;
    double g1, g2;
    oracle::kernel_G(y1, y2, nu, g1, g2);
    return (g1 * d1 + g2 * d2) * r;
  };
  return oracle::composite(f, oracle::graded(alpha, 2.0 * kPi - alpha, 0.25 * alpha, 60), 4);
}

}  // namespace

TEST(Constants, A) {
  EXPECT_NEAR(const_A(kPi / 2, 0.3), 1.3, 1e-15);
  EXPECT_NEAR(const_A(0.0, 0.3), 0.4, 1e-15);
  for (double phi : {0.0, 0.4, 2.0, 5.5}) EXPECT_DOUBLE_EQ(const_A(phi, 0.0), 1.0);
}

TEST(Constants, B) {
  for (double phi : {0.0, 0.4, 2.0}) EXPECT_NEAR(const_B(phi, 0.0), 2.0 * kLog2, 1e-15);
  EXPECT_NEAR(const_B(kPi / 2, 0.3), 1.202182, 1e-6);
  EXPECT_NEAR(const_B(0.0, 0.3), 1.154517, 1e-6);
}

// Reference values of the non-singular minus cut-off shift divided by kappa,
// obtained from high-precision quadrature on a circle at eps -> 0.
TEST(Constants, C) {
  EXPECT_NEAR(const_C(0.0, 0.3), 0.5772588, 1e-6);
  EXPECT_NEAR(const_C(kPi / 2, 0.3), -0.748909, 1e-5);
  for (double nu : {-0.5, 0.0, 0.2, 0.45}) {
    EXPECT_NEAR(const_C(0.0, nu), kLog2 + (1.0 - 2.0 * kLog2) * nu, 1e-15);
  }
}

TEST(Constants, PeriodicInPhi) {
  for (double phi : {0.0, 0.3, 1.9}) {
    for (double nu : {0.0, 0.3}) {
      EXPECT_NEAR(const_A(phi + kPi, nu), const_A(phi, nu), 1e-14);
      EXPECT_NEAR(const_B(phi + kPi, nu), const_B(phi, nu), 1e-14);
      EXPECT_NEAR(const_C(phi + kPi, nu), const_C(phi, nu), 1e-14);
      EXPECT_NEAR(const_C(-phi, nu), const_C(phi, nu), 1e-14);
    }
  }
}

TEST(ArcIntegral, Examples) {
  EXPECT_EQ(circle_arc_integral(0.0, 1.0, 1e-2, 0.3), 0.0);
  const double v = circle_arc_integral(-1.0, kPi / 2, 1e-2, 0.3);
  EXPECT_NEAR(v, 7.188903286, 1e-8);
  EXPECT_LE(std::abs(v + local_expansion(-1.0, kPi / 2, 1e-2, 0.3)), 1e-3 * 1e-2);
}

TEST(ArcIntegral, LocalExpansionIsSecondOrder) {
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    for (double phi : {0.0, 1.0}) {
      const double gap =
          circle_arc_integral(-2.0, phi, eps, 0.3) + local_expansion(-2.0, phi, eps, 0.3);
      EXPECT_LE(std::abs(gap), 10.0 * eps * eps) << eps << ' ' << phi;
    }
  }
}

TEST(ArcIntegral, MatchesParametrizedArc) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double kappa = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.2 + 4.0 * u(rng));
    const double phi = 2.0 * kPi * u(rng);
    const double nu = -0.5 + 0.99 * u(rng);
    const double eps = std::pow(10.0, -4.0 + 3.0 * u(rng));
    if (eps * std::abs(kappa) >= 1.0) continue;
    const double arc = circle_arc_integral(kappa, phi, eps, nu);
    EXPECT_NEAR(arc, -tangent_circle_force(kappa, phi, eps, nu), 1e-9 * std::max(1.0, std::abs(arc)))
        << kappa << ' ' << phi << ' ' << nu << ' ' << eps;
  }
}

TEST(ArcIntegral, OddInKappa) {
  for (double kappa : {0.3, 1.0, 7.0}) {
    EXPECT_DOUBLE_EQ(circle_arc_integral(-kappa, 0.7, 1e-3, 0.3),
                     -circle_arc_integral(kappa, 0.7, 1e-3, 0.3));
  }
}

TEST(ArcIntegral, BallTooLarge) {
  EXPECT_EQ(code_of([] { circle_arc_integral(-1.0, 0.0, 2.0, 0.3); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { circle_arc_integral(-1.0, 0.0, 0.0, 0.3); }), ErrorCode::InvalidArgument);
}

TEST(Psi, VanishesOnCircles) {
  const ClosedCurve c = ClosedCurve::circle(2.0, {1.0, 1.0});
  for (double t0 : {0.0, 0.3, 0.71}) {
    EXPECT_LE(std::abs(psi_estimate(c, t0, 1e-3, 0.3)), 1e-9);
  }
}

TEST(Psi, StableUnderEvaluationRadius) {
  const ClosedCurve ellipse = preset_curve("ellipse");
  for (double t0 : {0.07, 0.19}) {
    const double a = psi_estimate(ellipse, t0, 1e-3, 0.3);
    const double b = psi_estimate(ellipse, t0, 5e-4, 0.3);
    EXPECT_LE(std::abs(a - b), 5e-3);
  }
}

TEST(Psi, RichardsonReducesDependenceOnRadius) {
  const ClosedCurve ellipse = preset_curve("ellipse");
  const double fine = psi_estimate(ellipse, 0.07, 1e-4, 0.3);
  const double plain = psi_estimate(ellipse, 0.07, 4e-3, 0.3);
  const double rich = psi_richardson(ellipse, 0.07, 4e-3, 0.3);
  EXPECT_LT(std::abs(rich - fine), std::abs(plain - fine));
}

TEST(Expansion, CircleMatchesReference) {
  const ClosedCurve c = ClosedCurve::circle(1.0);
  const ElasticModel m{0.3, 1e-3};
  const ForceBreakdown b = force_cutoff_expansion(c, 0.25, m);
  EXPECT_NEAR(b.total, -10.182, 1e-3);
  EXPECT_NEAR(b.total, force_cutoff_reference(c, 0.25, m), 10.0 * m.eps);
  EXPECT_EQ(b.model_shift, 0.0);
  EXPECT_DOUBLE_EQ(b.kappa, -1.0);
  EXPECT_NEAR(b.phi, kPi / 2, 1e-14);
  const ForceBreakdown nb = force_nonsingular_expansion(c, 0.25, m);
  EXPECT_NEAR(nb.total, force_nonsingular_reference(c, 0.25, m), 10.0 * m.eps);
}

TEST(Expansion, BreakdownSums) {
  const ClosedCurve blob = preset_curve("blob");
  const ElasticModel m{0.3, 1e-4};
  for (double t0 : {0.07, 0.5}) {
    for (const ForceBreakdown& b :
         {force_cutoff_expansion(blob, t0, m), force_nonsingular_expansion(blob, t0, m)}) {
      EXPECT_DOUBLE_EQ(b.total, b.log_term + b.local_term + b.psi + b.model_shift);
      EXPECT_EQ(b.psi_eval_eps, kDefaultPsiEps);
    }
  }
}

TEST(Expansion, InflectionPointKeepsOnlyPsi) {
  const ClosedCurve blob = preset_curve("blob");
  double lo = 0.0, hi = 0.0;
  for (int k = 0; k < 1000; ++k) {
    if (blob.frame_at(k / 1000.0).kappa * blob.frame_at((k + 1) / 1000.0).kappa < 0.0) {
      lo = k / 1000.0;
      hi = (k + 1) / 1000.0;
      break;
    }
  }
  ASSERT_LT(lo, hi);
  const double sign_lo = blob.frame_at(lo).kappa;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (blob.frame_at(mid).kappa * sign_lo > 0.0 ? lo : hi) = mid;
  }
  const ForceBreakdown b = force_nonsingular_expansion(blob, lo, {0.3, 1e-4});
  EXPECT_LE(std::abs(b.kappa), 1e-12);
  EXPECT_LE(std::abs(b.log_term) + std::abs(b.local_term) + std::abs(b.model_shift), 1e-10);
  EXPECT_NEAR(b.total, b.psi, 1e-10);
}

TEST(Expansion, InvalidArguments) {
  const ClosedCurve c = ClosedCurve::circle(1.0);
  EXPECT_EQ(code_of([&] { force_cutoff_expansion(c, 0.0, {0.3, 1e-3}, 0.0); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { force_cutoff_expansion(c, 0.0, {0.3, -1.0}); }),
            ErrorCode::InvalidArgument);
}
