#include <stdexcept>

#include "bihelix/kernels.hpp"
#include "stencil.hpp"

namespace bihelix::kernels {

std::size_t min_samples(StencilOrder order, int derivative_order) {
  if (derivative_order == 1) return order == StencilOrder::fourth ? 5 : 3;
  return order == StencilOrder::fourth ? 6 : 4;
}

std::pair<std::size_t, std::size_t> stencil_support(std::size_t i, std::size_t n, StencilOrder order) {
  const std::size_t w = order == StencilOrder::fourth ? 2 : 1;
  const std::size_t width = 2 * w + 1;
  if (i < w) return {0, width - 1};
  if (i + w >= n) return {n - width, n - 1};
  return {i - w, i + w};
}

namespace serial {

std::vector<Vec3> differentiate(std::span<const Vec3> f, double ds, StencilOrder order) {
  std::vector<Vec3> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = stencil::first(f, i, ds, order);
  return out;
}

std::vector<double> differentiate(std::span<const double> f, double ds, StencilOrder order) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = stencil::first(f, i, ds, order);
  return out;
}

std::vector<double> differentiate2(std::span<const double> f, double ds, StencilOrder order) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = stencil::second(f, i, ds, order);
  return out;
}

std::vector<Vec3> contract_connection_along(const ManifoldParams& params, std::span<const Point> points,
                                            std::span<const Vec3> X, std::span<const Vec3> V,
                                            const NumericsConfig& cfg) {
  std::vector<Vec3> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    out[i] = contract_connection(connection_table(params, points[i], cfg), X[i], V[i]);
  return out;
}

std::vector<Vec3> contract_curvature_along(const ManifoldParams& params, std::span<const Point> points,
                                           std::span<const Vec3> X, std::span<const Vec3> Y,
                                           std::span<const Vec3> Z, const NumericsConfig& cfg) {
  std::vector<Vec3> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    out[i] = contract_curvature(curvature_table(params, points[i], cfg), X[i], Y[i], Z[i]);
  return out;
}

}  // namespace serial
}  // namespace bihelix::kernels
