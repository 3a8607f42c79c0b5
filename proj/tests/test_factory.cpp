#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bihelix/factory.hpp"

using namespace bihelix;

namespace {

const double kPi = std::numbers::pi;
const double kExampleAlpha = std::asin(1.0 / std::sqrt(10.0));

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::io_error;
}

}  // namespace

// Values below were computed independently with 30-digit arithmetic.
TEST(Invariants, FrozenValuesAtCosThreeOverRootTen) {
  const HelixInvariants p = helix_invariants({kExampleAlpha, 0, 0, 0, 0, Branch::plus});
  EXPECT_NEAR(p.A, 0.827895039619, 1e-12);
  EXPECT_NEAR(p.k, 0.038196601125, 1e-12);
  EXPECT_NEAR(p.tau, -0.385410196625, 1e-12);
  EXPECT_NEAR(p.B3, -0.316227766017, 1e-12);
  const HelixInvariants m = helix_invariants({kExampleAlpha, 0, 0, 0, 0, Branch::minus});
  EXPECT_NEAR(m.A, 0.120788258432, 1e-12);
  EXPECT_NEAR(m.k, 0.261803398875, 1e-12);
  EXPECT_NEAR(m.tau, 0.285410196625, 1e-12);
  EXPECT_NEAR(m.B3, -0.316227766017, 1e-12);
}

TEST(Invariants, BoundaryDoubleRoot) {
  const double alpha = admissible_alpha_bound();
  EXPECT_NEAR(alpha, 0.463647609000806, 1e-15);
  const HelixInvariants p = helix_invariants({alpha, 0, 0, 0, 0, Branch::plus});
  const HelixInvariants m = helix_invariants({alpha, 0, 0, 0, 0, Branch::minus});
  EXPECT_EQ(p.A, m.A);
  EXPECT_NEAR(p.A, 0.4472135955, 1e-10);
  EXPECT_NEAR(p.k, 0.2, 1e-12);
  EXPECT_NEAR(p.tau, -0.1, 1e-12);
  EXPECT_NEAR(p.B3, -0.4472135955, 1e-10);
}

TEST(Invariants, RelationHoldsOnBothComponents) {
  for (int i = 0; i < 50; ++i) {
    const double t = (i + 0.5) / 50.0;
    const double alpha = i % 2 ? t * admissible_alpha_bound() : kPi - t * admissible_alpha_bound();
    for (Branch br : {Branch::plus, Branch::minus}) {
      const HelixInvariants v = helix_invariants({alpha, 0, 0, 0, 0, br});
      EXPECT_NEAR(v.k * v.k + v.tau * v.tau + v.B3 * v.B3, 0.25, 1e-12);
      EXPECT_GE(v.k, 0.0);
      EXPECT_NEAR(std::abs(v.B3), std::sin(alpha), 1e-15);
    }
  }
}

TEST(Invariants, OrientationFlipOnSecondComponent) {
  // cos(a0) < 0 plus branch: sin(a0)(cos(a0) - A) < 0, so N flips and B3 = +sin(a0).
  const double alpha = kPi - kExampleAlpha;
  const HelixInvariants v = helix_invariants({alpha, 0, 0, 0, 0, Branch::plus});
  EXPECT_GT(v.k, 0.0);
  EXPECT_NEAR(v.B3, std::sin(alpha), 1e-15);
}

TEST(Roots, QuadraticAndAdmissibility) {
  for (double alpha : {0.05, 0.3, kExampleAlpha, kPi - 0.2}) {
    for (Branch br : {Branch::plus, Branch::minus}) {
      const double A = solve_branch_A(alpha, br);
      const double c = std::cos(alpha);
      EXPECT_NEAR(A * A - c * A + 1.0 - c * c, 0.0, 1e-14);
    }
  }
  EXPECT_EQ(kind_of([] { solve_branch_A(kPi / 2, Branch::plus); }), ErrorKind::inadmissible_alpha);
  EXPECT_EQ(kind_of([] { solve_branch_A(0.0, Branch::plus); }), ErrorKind::inadmissible_alpha);  // A = cos a0
  EXPECT_NEAR(solve_branch_A(0.0, Branch::minus), 0.0, 1e-15);
  EXPECT_FALSE(alpha_admissible(0.0));
  EXPECT_FALSE(alpha_admissible(kPi));
  EXPECT_FALSE(alpha_admissible(1.0));
  EXPECT_TRUE(alpha_admissible(admissible_alpha_bound()));
  EXPECT_TRUE(alpha_admissible(kPi - admissible_alpha_bound()));
  EXPECT_EQ(parse_branch("minus"), Branch::minus);
  EXPECT_EQ(kind_of([] { parse_branch("up"); }), ErrorKind::invalid_config);
}

TEST(Roots, InadmissibleMessageQuotesCondition) {
  try {
    HelixParams{kPi / 2, 0, 0, 0, 0, Branch::plus}.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::inadmissible_alpha);
    EXPECT_NE(std::string(e.what()).find("5cos^2(alpha0) - 4 >= 0"), std::string::npos) << e.what();
  }
}

TEST(Helix, ClosedFormIsConsistent) {
  const HelixParams hp{kExampleAlpha, 1, 1, 1, 0, Branch::plus};
  const CurveSpec spec = biharmonic_helix(hp, 0.0, 10.0);
  const auto& cf = std::get<ClosedFormCurve>(spec.data);
  EXPECT_NEAR(cf.position(0.0).x, 1.32141331564977, 1e-13);
  const double h = 1e-5;
  for (double s : {0.0, 1.3, 7.7}) {
    const Vec3 fd = (cf.position(s + h).vec() - cf.position(s - h).vec()) / (2 * h);
    EXPECT_LT((fd - cf.coordinate_velocity(s)).norm(), 1e-9);
  }
  const Trajectory t = sample_curve(spec, 101);
  const HelixInvariants inv = helix_invariants(hp);
  for (const auto& smp : t.samples) {
    const double beta = inv.A * smp.s + hp.a;
    EXPECT_LT((smp.velocity - Vec3(std::sin(hp.alpha0) * std::cos(beta), std::sin(hp.alpha0) * std::sin(beta),
                                   std::cos(hp.alpha0)))
                  .norm(),
              1e-14);
  }
  EXPECT_EQ(spec.family, "biharmonic_helix");
  EXPECT_DOUBLE_EQ(spec.parameters.at("A"), inv.A);
}

TEST(Surfaces, HelixLiesOnCylinderAndHelicoid) {
  const HelixParams hp{kExampleAlpha, 1, 1, 1, 0, Branch::plus};
  const CurveSpec spec = biharmonic_helix(hp, 0.0, 10.0 * kPi);
  EXPECT_LE(membership_residual(spec, surface_patch(SurfaceKind::cylinder, hp), 1001), 1e-10);
  EXPECT_LE(membership_residual(spec, surface_patch(SurfaceKind::helicoid, hp), 1001), 1e-10);
  const SurfacePatch helicoid = surface_patch(SurfaceKind::helicoid, hp);
  const auto& cf = std::get<ClosedFormCurve>(spec.data);
  for (double u : {0.0, 2.5, 9.0}) EXPECT_LT((surface_eval(helicoid, u, 1.0).vec() - cf.position(u).vec()).norm(), 1e-13);
  // Off the curve the helicoid is not the cylinder.
  const HelixParams other{kExampleAlpha, 1, 1, 1, 0, Branch::minus};
  EXPECT_GT(membership_residual(biharmonic_helix(other, 0.0, 10.0), surface_patch(SurfaceKind::cylinder, hp), 101),
            1e-3);
}

TEST(Geodesics, UnitSpeedAndErrors) {
  const ManifoldParams h3 = ManifoldParams::heisenberg();
  const Trajectory t = sample_curve(geodesic_ivp(h3, {0.1, 0.2, 0.3}, Vec3(0.6, 0.0, 0.8), 0.0, 100.0), 10001);
  for (const auto& s : t.samples) EXPECT_NEAR(s.velocity.norm(), 1.0, 1e-8);
  EXPECT_EQ(kind_of([&] { geodesic_ivp(h3, {}, Vec3(1.0, 1.0, 0.0), 0.0, 1.0); }), ErrorKind::non_unit_vector);
  // m < 0: the disk x^2 + y^2 < 1/|m| is complete; the radial geodesic is x = tanh(s).
  const Trajectory radial = sample_curve(geodesic_ivp({-1.0, 1.0}, {}, Vec3(1.0, 0.0, 0.0), 0.0, 5.0), 101);
  for (const auto& s : radial.samples) EXPECT_NEAR(s.point.x, std::tanh(s.s), 1e-8);
  EXPECT_EQ(kind_of([&] { geodesic_ivp({-1.0, 1.0}, {2.0, 0.0, 0.0}, Vec3(1.0, 0.0, 0.0), 0.0, 1.0); }),
            ErrorKind::domain_error);
}

TEST(Geodesics, VerticalLineAndFixedStepMethod) {
  NumericsConfig cfg;
  cfg.ode_method = OdeMethod::fixed_rk4;
  const Trajectory t = sample_curve(geodesic_ivp({0.3, 1.0}, {}, Vec3(0, 0, 1), 0.0, 5.0, cfg), 101, cfg);
  for (const auto& s : t.samples) {
    EXPECT_NEAR(s.point.z, s.s, 1e-11);  // 5000 rounded steps
    EXPECT_NEAR(s.point.x, 0.0, 1e-14);
  }
}

TEST(Subgroups, LinesThroughOrigin) {
  const Vec3 X = Vec3(0.3, -0.5, 0.7).normalized();
  const CurveSpec spec = one_param_subgroup(X, 0.0, 2.0);
  const auto& cf = std::get<ClosedFormCurve>(spec.data);
  EXPECT_LT((cf.position(2.0).vec() - 2.0 * X).norm(), 1e-15);
  const Trajectory t = sample_curve(spec, 21);
  for (const auto& s : t.samples) EXPECT_LT((s.velocity - X).norm(), 1e-14);
  EXPECT_EQ(kind_of([] { one_param_subgroup({0, 0, 1}, 0, 1, {1.0, 2.0}); }), ErrorKind::unsupported_manifold);
  EXPECT_EQ(kind_of([] { one_param_subgroup({0, 0, 2}, 0, 1); }), ErrorKind::non_unit_vector);
}

TEST(B3Zero, MonotonicityAndBeta) {
  EXPECT_EQ(kind_of([] { b3zero_curve([](double) { return 0.5; }, 0.0, 1.0); }), ErrorKind::non_monotone_alpha);
  EXPECT_EQ(kind_of([] { b3zero_curve([](double s) { return 1.0 - s; }, 0.0, 1.0); }), ErrorKind::non_monotone_alpha);
  // alpha = 0.5 + 0.3 s gives beta = (sin(0.5 + 0.3 s) - sin 0.5) / 0.3.
  const Trajectory t = sample_curve(b3zero_curve([](double s) { return 0.5 + 0.3 * s; }, 0.0, 2.0), 201);
  for (const auto& smp : t.samples) {
    const double a = 0.5 + 0.3 * smp.s;
    const double beta = (std::sin(a) - std::sin(0.5)) / 0.3;
    EXPECT_LT((smp.velocity - Vec3(std::sin(a) * std::cos(beta), std::sin(a) * std::sin(beta), std::cos(a))).norm(),
              1e-13);
  }
}

TEST(Circle, HorizontalCircleByArclength) {
  const Trajectory t = sample_curve(horizontal_circle(2.0, 0.0, 5.0), 101);
  for (const auto& s : t.samples) {
    EXPECT_NEAR(std::hypot(s.point.x, s.point.y), 2.0, 1e-14);
    EXPECT_NEAR(s.velocity.norm(), 1.0, 1e-14);
  }
  EXPECT_THROW(horizontal_circle(0.0, 0.0, 1.0), Error);
}
