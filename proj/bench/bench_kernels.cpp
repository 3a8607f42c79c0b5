// Times the OpenMP kernels against the serial reference loops.
//   bench_kernels [samples] [repeats]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bihelix/kernels.hpp"

using namespace bihelix;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-28s %12.3f %12.3f %8.2fx  %s\n", name, serial * 1e3, parallel * 1e3, serial / parallel,
              identical ? "identical" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 200001;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("samples %zu, repeats %d, threads %d\n", n, repeats, threads);
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");

  const double ds = 1e-3;
  std::vector<Vec3> f(n), X(n), Y(n), Z(n);
  std::vector<double> g(n);
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = ds * static_cast<double>(i);
    f[i] = Vec3(std::sin(s), std::cos(2 * s), s * s);
    g[i] = std::exp(-s) * std::sin(3 * s);
    pts[i] = {std::cos(s), std::sin(s), 0.1 * s};
    X[i] = Vec3(std::cos(s), std::sin(s), 0.5).normalized();
    Y[i] = Vec3(-std::sin(s), std::cos(s), 0.2);
    Z[i] = Vec3(0.3, -0.1, std::cos(s));
  }
  NumericsConfig cfg;
  const ManifoldParams mp{0.1, 1.0};

  std::vector<Vec3> a, b;
  std::vector<double> c, d;
  double ts = best_of(repeats, [&] { a = kernels::serial::differentiate(f, ds, StencilOrder::fourth); });
  double tp = best_of(repeats, [&] { b = kernels::differentiate(f, ds, StencilOrder::fourth); });
  row("differentiate (vector)", ts, tp, a == b);

  ts = best_of(repeats, [&] { c = kernels::serial::differentiate2(g, ds, StencilOrder::fourth); });
  tp = best_of(repeats, [&] { d = kernels::differentiate2(g, ds, StencilOrder::fourth); });
  row("differentiate2 (scalar)", ts, tp, c == d);

  ts = best_of(repeats, [&] { a = kernels::serial::contract_connection_along(mp, pts, X, Y, cfg); });
  tp = best_of(repeats, [&] { b = kernels::contract_connection_along(mp, pts, X, Y, cfg); });
  row("contract_connection_along", ts, tp, a == b);

  ts = best_of(repeats, [&] { a = kernels::serial::contract_curvature_along(mp, pts, X, Y, Z, cfg); });
  tp = best_of(repeats, [&] { b = kernels::contract_curvature_along(mp, pts, X, Y, Z, cfg); });
  row("contract_curvature_along", ts, tp, a == b);

  cfg.route = ConnectionRoute::finite_difference;
  const std::size_t m = std::min<std::size_t>(n, 2001);
  std::span<const Point> sp(pts.data(), m);
  std::span<const Vec3> sx(X.data(), m), sy(Y.data(), m), sz(Z.data(), m);
  ts = best_of(repeats, [&] { a = kernels::serial::contract_curvature_along(mp, sp, sx, sy, sz, cfg); });
  tp = best_of(repeats, [&] { b = kernels::contract_curvature_along(mp, sp, sx, sy, sz, cfg); });
  row("curvature (finite diff.)", ts, tp, a == b);
  return 0;
}
