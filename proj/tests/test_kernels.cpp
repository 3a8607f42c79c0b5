#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bihelix/geometry.hpp"
#include "bihelix/kernels.hpp"

using namespace bihelix;

namespace {

std::vector<double> grid(std::size_t n, double ds) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = -0.7 + ds * static_cast<double>(i);
  return s;
}

template <class F>
std::vector<double> sample(const std::vector<double>& s, F f) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = f(s[i]);
  return out;
}

}  // namespace

TEST(Stencil, FourthOrderFirstDerivativeExactOnQuartics) {
  const double ds = 0.1;
  const auto s = grid(12, ds);
  const auto f = sample(s, [](double x) { return 2.0 - x + 3.0 * x * x - 0.5 * x * x * x + 1.25 * x * x * x * x; });
  const auto d = kernels::differentiate(std::span<const double>(f), ds, StencilOrder::fourth);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s[i];
    EXPECT_NEAR(d[i], -1.0 + 6.0 * x - 1.5 * x * x + 5.0 * x * x * x, 1e-11) << "i = " << i;
  }
}

TEST(Stencil, FourthOrderSecondDerivativeExactOnQuartics) {
  const double ds = 0.1;
  const auto s = grid(12, ds);
  const auto f = sample(s, [](double x) { return 2.0 - x + 3.0 * x * x - 0.5 * x * x * x + 1.25 * x * x * x * x; });
  const auto d = kernels::differentiate2(std::span<const double>(f), ds, StencilOrder::fourth);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s[i];
    EXPECT_NEAR(d[i], 6.0 - 3.0 * x + 15.0 * x * x, 1e-9) << "i = " << i;
  }
}

TEST(Stencil, SecondOrderExactOnQuadratics) {
  const double ds = 0.05;
  const auto s = grid(9, ds);
  const auto f = sample(s, [](double x) { return 1.0 + 2.0 * x - 4.0 * x * x; });
  const auto d1 = kernels::differentiate(std::span<const double>(f), ds, StencilOrder::second);
  const auto d2 = kernels::differentiate2(std::span<const double>(f), ds, StencilOrder::second);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(d1[i], 2.0 - 8.0 * s[i], 1e-11);
    EXPECT_NEAR(d2[i], -8.0, 1e-9);
  }
}

TEST(Stencil, FourthOrderConvergesAtFourthOrder) {
  auto max_err = [](std::size_t n) {
    const double ds = 1.0 / static_cast<double>(n - 1);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::sin(3.0 * ds * static_cast<double>(i));
    const auto d = kernels::differentiate(std::span<const double>(f), ds, StencilOrder::fourth);
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(d[i] - 3.0 * std::cos(3.0 * ds * static_cast<double>(i))));
    return e;
  };
  const double ratio = max_err(41) / max_err(81);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(Stencil, SupportAndMinimumSizes) {
  EXPECT_EQ(kernels::min_samples(StencilOrder::fourth, 1), 5u);
  EXPECT_EQ(kernels::min_samples(StencilOrder::fourth, 2), 6u);
  EXPECT_EQ(kernels::min_samples(StencilOrder::second, 1), 3u);
  const auto [lo, hi] = kernels::stencil_support(10, 20, StencilOrder::fourth);
  EXPECT_EQ(lo, 8u);
  EXPECT_EQ(hi, 12u);
  const auto [lo0, hi0] = kernels::stencil_support(0, 20, StencilOrder::fourth);
  EXPECT_EQ(lo0, 0u);
  EXPECT_GE(hi0, 4u);
}

class SerialParallel : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 1000; ++i) {
      points.push_back({u(rng), u(rng), u(rng)});
      X.emplace_back(u(rng), u(rng), u(rng));
      Y.emplace_back(u(rng), u(rng), u(rng));
      Z.emplace_back(u(rng), u(rng), u(rng));
      scalars.push_back(u(rng));
    }
  }
  std::vector<Point> points;
  std::vector<Vec3> X, Y, Z;
  std::vector<double> scalars;
};

TEST_F(SerialParallel, DifferentiationIsBitIdentical) {
  for (auto order : {StencilOrder::second, StencilOrder::fourth}) {
    EXPECT_EQ(kernels::differentiate(std::span<const Vec3>(X), 0.01, order),
              kernels::serial::differentiate(std::span<const Vec3>(X), 0.01, order));
    EXPECT_EQ(kernels::differentiate(std::span<const double>(scalars), 0.01, order),
              kernels::serial::differentiate(std::span<const double>(scalars), 0.01, order));
    EXPECT_EQ(kernels::differentiate2(std::span<const double>(scalars), 0.01, order),
              kernels::serial::differentiate2(std::span<const double>(scalars), 0.01, order));
  }
}

TEST_F(SerialParallel, ContractionsAreBitIdentical) {
  for (const ManifoldParams params : {ManifoldParams{0.0, 1.0}, ManifoldParams{0.2, -0.7}}) {
    NumericsConfig cfg;
    EXPECT_EQ(kernels::contract_connection_along(params, points, X, Y, cfg),
              kernels::serial::contract_connection_along(params, points, X, Y, cfg));
    EXPECT_EQ(kernels::contract_curvature_along(params, points, X, Y, Z, cfg),
              kernels::serial::contract_curvature_along(params, points, X, Y, Z, cfg));
  }
}

TEST_F(SerialParallel, ContractionMatchesPointwiseTables) {
  const ManifoldParams params{0.3, 0.9};
  NumericsConfig cfg;
  const auto conn = kernels::contract_connection_along(params, points, X, Y, cfg);
  const auto curv = kernels::contract_curvature_along(params, points, X, Y, Z, cfg);
  for (std::size_t i = 0; i < points.size(); i += 97) {
    const Vec3 c = contract_connection(connection_table(params, points[i], cfg), X[i], Y[i]);
    const Vec3 r = contract_curvature(curvature_table(params, points[i], cfg), X[i], Y[i], Z[i]);
    EXPECT_LT((conn[i] - c).norm(), 1e-14);
    EXPECT_LT((curv[i] - r).norm(), 1e-13);
  }
}

TEST_F(SerialParallel, ErrorsInsideParallelRegionsPropagate) {
  std::vector<Point> outside = points;
  outside[500] = {3.0, 0.0, 0.0};  // 1 - (x^2 + y^2) < 0 for m = -1
  NumericsConfig cfg;
  EXPECT_THROW(kernels::contract_connection_along({-1.0, 1.0}, outside, X, Y, cfg), Error);
  EXPECT_THROW(kernels::serial::contract_connection_along({-1.0, 1.0}, outside, X, Y, cfg), Error);
}
