#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bihelix/biharmonic.hpp"
#include "bihelix/factory.hpp"

using namespace bihelix;

namespace {

const ManifoldParams kH3 = ManifoldParams::heisenberg();
const double kPi = std::numbers::pi;
const double kExampleAlpha = std::asin(1.0 / std::sqrt(10.0));

Trajectory helix(double alpha0, Branch br, double abcd = 1.0, std::size_t n = 2001) {
  return sample_curve(biharmonic_helix({alpha0, abcd, abcd, abcd, abcd, br}, 0.0, 10.0 * kPi), n);
}

Trajectory shape(double alpha0, double A, std::size_t n = 2001) {
  return sample_curve(helix_shape_curve({alpha0, A, 1, 1, 1, 0}, 0.0, 10.0 * kPi), n);
}

}  // namespace

TEST(Bitension, BiharmonicHelicesVanish) {
  for (double alpha : {kExampleAlpha, 0.2, admissible_alpha_bound(), kPi - 0.3}) {
    for (Branch br : {Branch::plus, Branch::minus}) {
      const BitensionReport r = bitension_report(helix(alpha, br));
      EXPECT_LE(r.max_residual, 1e-5) << alpha << " " << to_string(br);
      ASSERT_TRUE(r.expansion.has_value());
      EXPECT_LE(r.max_mismatch, 1e-4);
    }
  }
}

TEST(Bitension, OffRootHelixMatchesClosedFormNormalCoefficient) {
  // A frozen at the cos(a0) = 3/sqrt10 plus root while cos^2(a0) = 0.81:
  // tau2 = cN N with cN = -k^3 - k tau^2 + k/4 - k B3^2 (k, tau, B3 constant).
  const double alpha = std::acos(0.9);
  const HelixInvariants inv = shape_invariants({alpha, 0.827895039619, 1, 1, 1, 0});
  const double cN = inv.k * (0.25 - inv.k * inv.k - inv.tau * inv.tau - inv.B3 * inv.B3);
  EXPECT_NEAR(std::abs(cN), 4.09545e-3, 1e-8);
  const BitensionReport r = bitension_report(shape(alpha, 0.827895039619));
  EXPECT_NEAR(r.max_residual, std::abs(cN), 1e-6);
  EXPECT_GE(r.max_residual, 1e-3);
  const Vec3 c = r.expansion->coefficients[1000];
  EXPECT_NEAR(c[0], 0.0, 1e-8);
  EXPECT_NEAR(c[1], cN, 1e-6);
  EXPECT_NEAR(c[2], 0.0, 1e-6);
}

TEST(Bitension, PerturbedRootsAwayFromExampleParameters) {
  // Frozen values of |cN| for A off the root by 0.05 at cos(a0) = 3/sqrt10.
  const double alpha = kExampleAlpha;
  const double plus = solve_branch_A(alpha, Branch::plus), minus = solve_branch_A(alpha, Branch::minus);
  EXPECT_NEAR(bitension_report(shape(alpha, minus + 0.05)).max_residual, 8.08215e-3, 1e-7);
  EXPECT_NEAR(bitension_report(shape(alpha, plus - 0.05)).max_residual, 1.77445e-3, 1e-7);
  EXPECT_NEAR(bitension_report(shape(alpha, plus + 0.05)).max_residual, 8.474e-4, 1e-6);
}

TEST(Bitension, DirectAndFrameRoutesAgree) {
  const Trajectory b3 = sample_curve(b3zero_curve([](double s) { return 0.5 + 0.3 * s; }, 0.0, 2.0), 2001);
  const Trajectory sub = sample_curve(one_param_subgroup(Vec3(0.3, -0.5, 0.7).normalized(), 0.0, 10.0), 2001);
  const Trajectory circle = sample_curve(horizontal_circle(1.5, 0.0, 10.0), 2001);
  for (const Trajectory* t : {&b3, &sub, &circle}) {
    const BitensionReport r = bitension_report(*t);
    ASSERT_TRUE(r.expansion.has_value());
    EXPECT_LE(r.max_mismatch, 1e-4);
    EXPECT_GT(r.max_residual, 1e-3);
  }
}

TEST(Bitension, GeodesicHasNoFrameExpansion) {
  const Trajectory t = sample_curve(one_param_subgroup({1.0, 0.0, 0.0}, 0.0, 5.0), 501);
  const BitensionReport r = bitension_report(t);
  EXPECT_FALSE(r.expansion.has_value());
  EXPECT_LE(r.max_residual, 1e-12);
  EXPECT_THROW(tension2_frame(frenet_apparatus(t)), Error);
}

TEST(Systems, VranceanuReducesToHeisenberg) {
  const std::vector<Trajectory> curves = {
      helix(kExampleAlpha, Branch::plus), helix(0.3, Branch::minus, -2.0), shape(0.4, 0.7),
      sample_curve(b3zero_curve([](double s) { return 0.5 + 0.3 * s; }, 0.0, 2.0), 2001),
      sample_curve(one_param_subgroup(Vec3(0.3, -0.5, 0.7).normalized(), 0.0, 10.0), 2001)};
  for (const auto& t : curves) {
    const FrenetSeries f = frenet_apparatus(t);
    const auto a = check_system_h3(f);
    const auto b = check_system_cv(f, kH3);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(a[i].residual, b[i].residual, 1e-10);
      EXPECT_EQ(a[i].passed, b[i].passed);
    }
  }
}

TEST(Systems, HelixSystemNames) {
  const FrenetSeries f = frenet_apparatus(helix(kExampleAlpha, Branch::plus));
  const auto checks = check_helix_system(f);
  ASSERT_FALSE(checks.empty());
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << " " << c.residual;
}

TEST(Classify, Verdicts) {
  const auto bih = classify(helix(kExampleAlpha, Branch::plus));
  EXPECT_EQ(bih.verdict, Verdict::nongeodesic_biharmonic);
  EXPECT_TRUE(bih.is_biharmonic());
  ASSERT_NE(bih.find("system_h3.relation"), nullptr);
  EXPECT_TRUE(bih.find("system_h3.relation")->passed);
  EXPECT_EQ(bih.find("no_such_check"), nullptr);

  EXPECT_EQ(classify(shape(kExampleAlpha, solve_branch_A(kExampleAlpha, Branch::minus) + 0.05)).verdict,
            Verdict::helix_not_biharmonic);

  const auto b3 = classify(sample_curve(b3zero_curve([](double s) { return 0.5 + 0.3 * s; }, 0.0, 2.0), 2001));
  EXPECT_EQ(b3.verdict, Verdict::not_biharmonic);
  EXPECT_NEAR(*b3.tau_mean, -0.5, 1e-4);

  const auto geo = classify(sample_curve(one_param_subgroup({0.0, 0.0, 1.0}, 0.0, 5.0), 501));
  EXPECT_EQ(geo.verdict, Verdict::geodesic);
  EXPECT_TRUE(geo.is_biharmonic());

  const auto circle = classify(sample_curve(horizontal_circle(1.0, 0.0, 8.0), 1001));
  EXPECT_FALSE(circle.is_biharmonic());
}

TEST(Classify, CartanVranceanuGeodesicAndTwistDefect) {
  NumericsConfig cfg;
  const ManifoldParams cv{0.25, 1.0};
  const Trajectory t = sample_curve(geodesic_ivp(cv, {0.1, 0.0, 0.0}, Vec3(0.6, 0.0, 0.8), 0.0, 20.0), 4001, cfg);
  const auto r = classify(t, cfg);
  EXPECT_EQ(r.verdict, Verdict::geodesic);
  EXPECT_DOUBLE_EQ(r.twist_defect, 0.0);
}

TEST(Classify, BatchMatchesSerialInOrder) {
  std::vector<Trajectory> curves = {helix(kExampleAlpha, Branch::plus, 0.0, 801), helix(0.3, Branch::minus, 1.0, 801),
                                    sample_curve(one_param_subgroup({0, 0, 1}, 0.0, 3.0), 101)};
  const auto batch = classify_batch(curves);
  ASSERT_EQ(batch.size(), curves.size());
  NumericsConfig serial;
  serial.execution = Execution::serial;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto one = classify(curves[i], serial);
    EXPECT_EQ(batch[i].verdict, one.verdict);
    EXPECT_EQ(batch[i].tension2_max, one.tension2_max);
  }
}

TEST(Cone, Membership) {
  const Point p{1.0, -2.0, 0.5};
  EXPECT_EQ(cone_membership(kH3, FrameVector{p, {0, 0, 1}}), ConeVerdict::geodesic_only);
  EXPECT_EQ(cone_membership(kH3, FrameVector{p, {1, 0, 0}}), ConeVerdict::geodesic_only);
  const double c = 0.95;
  EXPECT_EQ(cone_membership(kH3, FrameVector{p, {std::sqrt(1 - c * c), 0, c}}), ConeVerdict::biharmonic_direction);
  EXPECT_EQ(cone_membership(kH3, FrameVector{p, {0, -std::sqrt(1 - c * c), -c}}), ConeVerdict::biharmonic_direction);
  const double b = 2.0 / std::sqrt(5.0);
  EXPECT_EQ(cone_membership(kH3, FrameVector{p, {std::sqrt(1 - b * b), 0, b}}), ConeVerdict::biharmonic_direction);
  EXPECT_EQ(cone_membership(kH3, FrameVector{p, {0.5, 0, std::sqrt(0.75)}}), ConeVerdict::geodesic_only);
  try {
    cone_membership(kH3, FrameVector{p, {1, 1, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_unit_vector);
  }
  EXPECT_THROW(cone_membership({1.0, 2.0}, FrameVector{p, {0, 0, 1}}), Error);
}

TEST(Legendre, PairingIsTheThirdFrameComponent) {
  const Trajectory t = helix(kExampleAlpha, Branch::plus, 1.0, 201);
  const auto theta3 = legendre_pairing(t);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(theta3[i], t.samples[i].velocity.z(), 1e-14);
  const Trajectory legendre = sample_curve(one_param_subgroup({0.6, 0.8, 0.0}, 0.0, 3.0), 51);
  for (double v : legendre_pairing(legendre)) EXPECT_NEAR(v, 0.0, 1e-14);
}
