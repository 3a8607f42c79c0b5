#pragma once

#include <cstddef>

namespace bihelix {

enum class StencilOrder { second = 2, fourth = 4 };

/// How connection and curvature are evaluated. closed_form uses the
/// Heisenberg table at (0,1) and the analytic structure functions of the
/// frame elsewhere; finite_difference goes through metric_at only.
enum class ConnectionRoute { closed_form, finite_difference };

enum class OdeMethod { adaptive_dopri5, fixed_rk4 };

enum class Execution { serial, parallel };

struct NumericsConfig {
  // geometry
  double fd_step = 1e-4;            ///< step for 5-point metric/frame derivatives
  double curvature_fd_step = 1e-3;  ///< step for derivatives of the FD connection
  ConnectionRoute route = ConnectionRoute::closed_form;

  // differentiation along curves
  StencilOrder stencil = StencilOrder::fourth;
  double spacing_tol = 1e-9;  ///< uniform-spacing tolerance for sampled input

  // verification
  double unit_speed_tol = 1e-8;
  double frame_tol = 1e-6;
  double residual_tol = 1e-5;   ///< algebraic relations and tension2 magnitude
  double geodesic_tol = 1e-6;   ///< tension1 threshold for the geodesic verdict
  double expansion_tol = 1e-4;  ///< direct vs frame-expansion tension2
  double k_floor = 1e-7;

  // ODE
  OdeMethod ode_method = OdeMethod::adaptive_dopri5;
  double ode_atol = 1e-10;
  double ode_rtol = 1e-10;
  double ode_fixed_step = 1e-3;

  Execution execution = Execution::parallel;

  /// Half width of the central stencil (1 for second order, 2 for fourth).
  std::size_t half_width() const { return stencil == StencilOrder::fourth ? 2 : 1; }

  /// Throws Error(invalid_config) unless every step and tolerance is positive.
  void validate() const;
};

}  // namespace bihelix
