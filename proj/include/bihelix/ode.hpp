#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bihelix/numerics.hpp"

namespace bihelix {

using OdeState = std::vector<double>;
using OdeRhs = std::function<void(const OdeState& x, OdeState& dxdt, double t)>;

/// Integrates x' = rhs(x, t) from times.front() and returns the state at every
/// entry of times (which must be increasing). Adaptive Dormand-Prince 5(4)
/// or fixed-step RK4 per cfg.ode_method.
/// Throws Error(integration_failure) when step control stalls.
std::vector<OdeState> integrate_on_grid(const OdeRhs& rhs, OdeState x0, std::span<const double> times,
                                        const NumericsConfig& cfg);

}  // namespace bihelix
