#pragma once

// Routes kernel calls to the OpenMP or serial implementation per
// NumericsConfig::execution.

#include <exception>

#include "bihelix/kernels.hpp"

namespace bihelix::detail {

inline std::vector<Vec3> d_ds(std::span<const Vec3> f, double ds, const NumericsConfig& cfg) {
  return cfg.execution == Execution::serial ? kernels::serial::differentiate(f, ds, cfg.stencil)
                                            : kernels::differentiate(f, ds, cfg.stencil);
}

inline std::vector<double> d_ds(std::span<const double> f, double ds, const NumericsConfig& cfg) {
  return cfg.execution == Execution::serial ? kernels::serial::differentiate(f, ds, cfg.stencil)
                                            : kernels::differentiate(f, ds, cfg.stencil);
}

inline std::vector<double> d2_ds2(std::span<const double> f, double ds, const NumericsConfig& cfg) {
  return cfg.execution == Execution::serial ? kernels::serial::differentiate2(f, ds, cfg.stencil)
                                            : kernels::differentiate2(f, ds, cfg.stencil);
}

inline std::vector<Vec3> connection_terms(const ManifoldParams& params, std::span<const Point> points,
                                          std::span<const Vec3> X, std::span<const Vec3> V,
                                          const NumericsConfig& cfg) {
  return cfg.execution == Execution::serial
             ? kernels::serial::contract_connection_along(params, points, X, V, cfg)
             : kernels::contract_connection_along(params, points, X, V, cfg);
}

inline std::vector<Vec3> curvature_terms(const ManifoldParams& params, std::span<const Point> points,
                                         std::span<const Vec3> X, std::span<const Vec3> Y,
                                         std::span<const Vec3> Z, const NumericsConfig& cfg) {
  return cfg.execution == Execution::serial
             ? kernels::serial::contract_curvature_along(params, points, X, Y, Z, cfg)
             : kernels::contract_curvature_along(params, points, X, Y, Z, cfg);
}

// Exceptions may not escape an OpenMP region; keep the first and rethrow
// after the loop.
class FirstError {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
#pragma omp critical(bihelix_first_error)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace bihelix::detail
