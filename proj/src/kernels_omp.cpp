#include <exception>

#include "bihelix/kernels.hpp"
#include "dispatch.hpp"
#include "stencil.hpp"

namespace bihelix::kernels {

namespace {

using detail::FirstError;
using Index = std::ptrdiff_t;

}  // namespace

std::vector<Vec3> differentiate(std::span<const Vec3> f, double ds, StencilOrder order) {
  std::vector<Vec3> out(f.size());
  const Index n = static_cast<Index>(f.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) out[i] = stencil::first(f, static_cast<std::size_t>(i), ds, order);
  return out;
}

std::vector<double> differentiate(std::span<const double> f, double ds, StencilOrder order) {
  std::vector<double> out(f.size());
  const Index n = static_cast<Index>(f.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) out[i] = stencil::first(f, static_cast<std::size_t>(i), ds, order);
  return out;
}

std::vector<double> differentiate2(std::span<const double> f, double ds, StencilOrder order) {
  std::vector<double> out(f.size());
  const Index n = static_cast<Index>(f.size());
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) out[i] = stencil::second(f, static_cast<std::size_t>(i), ds, order);
  return out;
}

std::vector<Vec3> contract_connection_along(const ManifoldParams& params, std::span<const Point> points,
                                            std::span<const Vec3> X, std::span<const Vec3> V,
                                            const NumericsConfig& cfg) {
  std::vector<Vec3> out(points.size());
  const Index n = static_cast<Index>(points.size());
  FirstError err;
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    err.run([&] { out[i] = contract_connection(connection_table(params, points[i], cfg), X[i], V[i]); });
  }
  err.rethrow();
  return out;
}

std::vector<Vec3> contract_curvature_along(const ManifoldParams& params, std::span<const Point> points,
                                           std::span<const Vec3> X, std::span<const Vec3> Y,
                                           std::span<const Vec3> Z, const NumericsConfig& cfg) {
  std::vector<Vec3> out(points.size());
  const Index n = static_cast<Index>(points.size());
  FirstError err;
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    err.run([&] { out[i] = contract_curvature(curvature_table(params, points[i], cfg), X[i], Y[i], Z[i]); });
  }
  err.rethrow();
  return out;
}

}  // namespace bihelix::kernels
