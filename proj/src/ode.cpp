#include "bihelix/ode.hpp"

#include <boost/numeric/odeint.hpp>
#include <string>

#include "bihelix/types.hpp"

namespace bihelix {

namespace odeint = boost::numeric::odeint;

std::vector<OdeState> integrate_on_grid(const OdeRhs& rhs, OdeState x0, std::span<const double> times,
                                        const NumericsConfig& cfg) {
  std::vector<OdeState> out;
  if (times.empty()) return out;
  out.reserve(times.size());
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw Error(ErrorKind::invalid_config, "ODE output times must increase");
  }

  auto system = [&rhs](const OdeState& x, OdeState& dxdt, double t) { rhs(x, dxdt, t); };
  auto observer = [&out](const OdeState& x, double) { out.push_back(x); };

  if (times.size() == 1) {
    out.push_back(x0);
    return out;
  }
  const double span = times.back() - times.front();
  try {
    if (cfg.ode_method == OdeMethod::fixed_rk4) {
      odeint::runge_kutta4<OdeState> stepper;
      odeint::integrate_times(stepper, system, x0, times.begin(), times.end(), cfg.ode_fixed_step, observer);
    } else {
      auto stepper = odeint::make_controlled(cfg.ode_atol, cfg.ode_rtol, odeint::runge_kutta_dopri5<OdeState>());
      const double dt0 = std::min(1e-3, span / static_cast<double>(times.size()));
      odeint::integrate_times(stepper, system, x0, times.begin(), times.end(), dt0, observer,
                              odeint::max_step_checker(100000));
    }
  } catch (const odeint::odeint_error& e) {
    throw Error(ErrorKind::integration_failure, e.what());
  }
  if (out.size() != times.size()) {
    throw Error(ErrorKind::integration_failure,
                "integrator produced " + std::to_string(out.size()) + " of " + std::to_string(times.size()) + " states");
  }
  for (const auto& x : out)
    for (double v : x)
      if (!std::isfinite(v)) throw Error(ErrorKind::integration_failure, "non-finite state");
  return out;
}

}  // namespace bihelix
