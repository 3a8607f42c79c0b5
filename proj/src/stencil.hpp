#pragma once

// Per-index finite-difference stencils shared by the serial and OpenMP
// kernels. Each returns the derivative at sample i of a uniformly sampled
// series f of length n >= kernels::min_samples(order, ...).

#include <cstddef>
#include <span>

#include "bihelix/numerics.hpp"

namespace bihelix::stencil {

template <class T>
T first(std::span<const T> f, std::size_t i, double h, StencilOrder order) {
  const std::size_t n = f.size();
  if (order == StencilOrder::second) {
    if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    if (i == n - 1) return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return (f[i + 1] - f[i - 1]) / (2.0 * h);
  }
  if (i == 0) return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
  if (i == 1) return (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
  if (i == n - 2)
    return (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * h);
  if (i == n - 1)
    return (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) / (12.0 * h);
  return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
}

template <class T>
T second(std::span<const T> f, std::size_t i, double h, StencilOrder order) {
  const std::size_t n = f.size();
  const double h2 = h * h;
  if (order == StencilOrder::second) {
    if (i == 0) return (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    if (i == n - 1) return (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return (f[i - 1] - 2.0 * f[i] + f[i + 1]) / h2;
  }
  if (i == 0)
    return (45.0 * f[0] - 154.0 * f[1] + 214.0 * f[2] - 156.0 * f[3] + 61.0 * f[4] - 10.0 * f[5]) / (12.0 * h2);
  if (i == 1)
    return (10.0 * f[0] - 15.0 * f[1] - 4.0 * f[2] + 14.0 * f[3] - 6.0 * f[4] + f[5]) / (12.0 * h2);
  if (i == n - 2)
    return (10.0 * f[n - 1] - 15.0 * f[n - 2] - 4.0 * f[n - 3] + 14.0 * f[n - 4] - 6.0 * f[n - 5] + f[n - 6]) /
           (12.0 * h2);
  if (i == n - 1)
    return (45.0 * f[n - 1] - 154.0 * f[n - 2] + 214.0 * f[n - 3] - 156.0 * f[n - 4] + 61.0 * f[n - 5] -
            10.0 * f[n - 6]) /
           (12.0 * h2);
  return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h2);
}

}  // namespace bihelix::stencil
