#pragma once

// Data-parallel per-sample kernels. The functions in bihelix::kernels run
// their sample loops under OpenMP; bihelix::kernels::serial holds the plain
// reference loops. Both must produce bit-identical output.

#include <span>
#include <vector>

#include "bihelix/geometry.hpp"
#include "bihelix/numerics.hpp"

namespace bihelix::kernels {

/// First s-derivative of a uniformly sampled series. Interior samples use
/// central stencils, the outer half-width samples one-sided stencils of the
/// same order.
std::vector<Vec3> differentiate(std::span<const Vec3> f, double ds, StencilOrder order);
std::vector<double> differentiate(std::span<const double> f, double ds, StencilOrder order);
/// Second s-derivative, same boundary treatment.
std::vector<double> differentiate2(std::span<const double> f, double ds, StencilOrder order);

/// sum_ab X^a V^b nabla_{e_a} e_b at every point.
std::vector<Vec3> contract_connection_along(const ManifoldParams& params, std::span<const Point> points,
                                            std::span<const Vec3> X, std::span<const Vec3> V,
                                            const NumericsConfig& cfg);

/// R(X,Y)Z at every point.
std::vector<Vec3> contract_curvature_along(const ManifoldParams& params, std::span<const Point> points,
                                           std::span<const Vec3> X, std::span<const Vec3> Y,
                                           std::span<const Vec3> Z, const NumericsConfig& cfg);

namespace serial {

std::vector<Vec3> differentiate(std::span<const Vec3> f, double ds, StencilOrder order);
std::vector<double> differentiate(std::span<const double> f, double ds, StencilOrder order);
std::vector<double> differentiate2(std::span<const double> f, double ds, StencilOrder order);
std::vector<Vec3> contract_connection_along(const ManifoldParams& params, std::span<const Point> points,
                                            std::span<const Vec3> X, std::span<const Vec3> V,
                                            const NumericsConfig& cfg);
std::vector<Vec3> contract_curvature_along(const ManifoldParams& params, std::span<const Point> points,
                                           std::span<const Vec3> X, std::span<const Vec3> Y,
                                           std::span<const Vec3> Z, const NumericsConfig& cfg);

}  // namespace serial

/// Minimum series length for a first (derivative_order = 1) or second
/// derivative at the given stencil order.
std::size_t min_samples(StencilOrder order, int derivative_order);

/// Index range [lo, hi] read by the first-derivative stencil at sample i.
std::pair<std::size_t, std::size_t> stencil_support(std::size_t i, std::size_t n, StencilOrder order);

}  // namespace bihelix::kernels
