#include "bihelix/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dispatch.hpp"

namespace bihelix {

namespace {

std::size_t require_length(std::size_t n, std::size_t needed, const char* what) {
  if (n < needed) {
    throw Error(ErrorKind::too_few_samples,
                std::string(what) + " needs at least " + std::to_string(needed) + " samples, got " + std::to_string(n));
  }
  return n;
}

void check_unit_speed(const Trajectory& traj, const NumericsConfig& cfg, bool csv_rows) {
  for (std::size_t i = traj.margin; i + traj.margin < traj.samples.size(); ++i) {
    const double speed = traj.samples[i].velocity.norm();
    if (!(std::abs(speed - 1.0) <= cfg.unit_speed_tol)) {
      std::string where = "sample " + std::to_string(i);
      if (csv_rows) where += " (row " + std::to_string(i + 2) + ")";
      throw Error(ErrorKind::non_unit_speed, where + ": |velocity| = " + std::to_string(speed) +
                                                 " deviates from 1 by more than " + std::to_string(cfg.unit_speed_tol));
    }
  }
}

std::vector<double> uniform_grid(double s0, double s1, std::size_t n) {
  std::vector<double> s(n);
  const double ds = (s1 - s0) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) s[i] = s0 + static_cast<double>(i) * ds;
  s.back() = s1;
  return s;
}

}  // namespace

std::vector<Point> Trajectory::points() const {
  std::vector<Point> out(samples.size());
  std::transform(samples.begin(), samples.end(), out.begin(), [](const CurveSample& c) { return c.point; });
  return out;
}

std::vector<Vec3> Trajectory::velocities() const {
  std::vector<Vec3> out(samples.size());
  std::transform(samples.begin(), samples.end(), out.begin(), [](const CurveSample& c) { return c.velocity; });
  return out;
}

FieldSeries Trajectory::tangent() const { return {velocities(), margin}; }

double FieldSeries::interior_max_norm() const {
  double m = 0.0;
  for (std::size_t i = interior_begin(); i < interior_end(); ++i) m = std::max(m, values[i].norm());
  return m;
}

CurveSpec closed_form_curve(const ManifoldParams& params, std::function<Point(double)> position,
                            std::function<Vec3(double)> coordinate_velocity, double s0, double s1,
                            std::string family) {
  CurveSpec spec;
  spec.manifold = params;
  spec.s0 = s0;
  spec.s1 = s1;
  spec.family = std::move(family);
  spec.data = ClosedFormCurve{std::move(position), std::move(coordinate_velocity)};
  return spec;
}

CurveSpec sampled_curve(const ManifoldParams& params, std::vector<double> s, std::vector<Point> points,
                        std::vector<Vec3> velocities, const NumericsConfig& cfg) {
  if (s.size() != points.size() || (!velocities.empty() && velocities.size() != s.size())) {
    throw Error(ErrorKind::invalid_config, "sampled curve columns have different lengths");
  }
  require_length(s.size(), 9, "sampled curve");
  const double ds = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double step = s[i] - s[i - 1];
    if (!(step > 0.0)) {
      throw Error(ErrorKind::non_monotone, "s not strictly increasing at sample " + std::to_string(i) + " (row " +
                                               std::to_string(i + 2) + ")");
    }
    if (std::abs(step - ds) > cfg.spacing_tol * std::max(1.0, std::abs(ds))) {
      throw Error(ErrorKind::non_monotone, "non-uniform spacing at sample " + std::to_string(i) + " (row " +
                                               std::to_string(i + 2) + "): step " + std::to_string(step) +
                                               " vs mean " + std::to_string(ds));
    }
  }
  CurveSpec spec;
  spec.manifold = params;
  spec.s0 = s.front();
  spec.s1 = s.back();
  spec.family = "sampled";
  spec.data = SampledCurve{std::move(s), std::move(points), std::move(velocities)};
  return spec;
}

Trajectory sample_curve(const CurveSpec& spec, std::size_t n, const NumericsConfig& cfg) {
  cfg.validate();
  Trajectory traj;
  traj.manifold = spec.manifold;

  if (const auto* sampled = std::get_if<SampledCurve>(&spec.data)) {
    const std::size_t m = require_length(sampled->s.size(), 9, "sampled curve");
    traj.ds = (sampled->s.back() - sampled->s.front()) / static_cast<double>(m - 1);
    traj.samples.resize(m);
    std::vector<Vec3> velocity = sampled->velocities;
    if (velocity.empty()) {
      std::vector<Vec3> coords(m);
      for (std::size_t i = 0; i < m; ++i) coords[i] = sampled->points[i].vec();
      velocity = detail::d_ds(coords, traj.ds, cfg);
      traj.margin = cfg.half_width();
      for (std::size_t i = 0; i < m; ++i) velocity[i] = coframe_matrix(spec.manifold, sampled->points[i]) * velocity[i];
    }
    for (std::size_t i = 0; i < m; ++i) traj.samples[i] = {sampled->s[i], sampled->points[i], velocity[i]};
    check_unit_speed(traj, cfg, true);
    return traj;
  }

  require_length(n, 9, "sample_curve");
  if (!(spec.s1 > spec.s0)) throw Error(ErrorKind::invalid_config, "s_range must satisfy s0 < s1");
  const std::vector<double> s = uniform_grid(spec.s0, spec.s1, n);
  traj.ds = (spec.s1 - spec.s0) / static_cast<double>(n - 1);
  traj.samples.resize(n);

  if (const auto* closed = std::get_if<ClosedFormCurve>(&spec.data)) {
    auto eval = [&](std::size_t i) {
      const Point p = closed->position(s[i]);
      traj.samples[i] = {s[i], p, coframe_matrix(spec.manifold, p) * closed->coordinate_velocity(s[i])};
    };
    if (cfg.execution == Execution::serial) {
      for (std::size_t i = 0; i < n; ++i) eval(i);
    } else {
      detail::FirstError err;
      const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) err.run([&] { eval(static_cast<std::size_t>(i)); });
      err.rethrow();
    }
  } else {
    const auto& ode = std::get<OdeCurve>(spec.data);
    const std::vector<OdeState> states = integrate_on_grid(ode.rhs, ode.initial_state, s, cfg);
    for (std::size_t i = 0; i < n; ++i) {
      const CurveState st = ode.readout(s[i], states[i]);
      traj.samples[i] = {s[i], st.point, st.velocity};
    }
  }
  check_unit_speed(traj, cfg, false);
  return traj;
}

CurveSpec left_translate_curve(const Point& g, const CurveSpec& curve) {
  require_heisenberg(curve.manifold, "left translation");
  CurveSpec out = curve;
  out.parameters["translate_x"] = g.x;
  out.parameters["translate_y"] = g.y;
  out.parameters["translate_z"] = g.z;
  if (const auto* closed = std::get_if<ClosedFormCurve>(&curve.data)) {
    const Mat3 J = left_translate_jacobian(g);
    auto pos = closed->position;
    auto vel = closed->coordinate_velocity;
    out.data = ClosedFormCurve{[g, pos](double s) { return left_translate(g, pos(s)); },
                               [J, vel](double s) -> Vec3 { return J * vel(s); }};
  } else if (const auto* ode = std::get_if<OdeCurve>(&curve.data)) {
    OdeCurve translated = *ode;
    auto readout = ode->readout;
    // Frame components are left invariant; only the point moves.
    translated.readout = [g, readout](double s, const OdeState& x) {
      CurveState st = readout(s, x);
      st.point = left_translate(g, st.point);
      return st;
    };
    out.data = std::move(translated);
  } else {
    SampledCurve sampled = std::get<SampledCurve>(curve.data);
    for (auto& p : sampled.points) p = left_translate(g, p);
    out.data = std::move(sampled);
  }
  return out;
}

Trajectory left_translate_trajectory(const Point& g, const Trajectory& traj) {
  require_heisenberg(traj.manifold, "left translation");
  Trajectory out = traj;
  for (auto& sample : out.samples) sample.point = left_translate(g, sample.point);
  return out;
}

FieldSeries covariant_derivative_along(const Trajectory& traj, const FieldSeries& field, const NumericsConfig& cfg) {
  const std::size_t n = traj.size();
  if (field.values.size() != n) throw Error(ErrorKind::invalid_config, "field length differs from trajectory");
  require_length(n, kernels::min_samples(cfg.stencil, 1), "covariant derivative");
  const std::vector<Point> points = traj.points();
  const std::vector<Vec3> T = traj.velocities();
  FieldSeries out;
  out.values = detail::d_ds(field.values, traj.ds, cfg);
  const std::vector<Vec3> conn = detail::connection_terms(traj.manifold, points, T, field.values, cfg);
  for (std::size_t i = 0; i < n; ++i) out.values[i] += conn[i];
  out.margin = std::min(n / 2, field.margin + cfg.half_width());
  return out;
}

FieldSeries covariant_derivative_along(const Trajectory& traj, std::span<const Vec3> field, const NumericsConfig& cfg) {
  return covariant_derivative_along(traj, FieldSeries{{field.begin(), field.end()}, 0}, cfg);
}

Vec3 frame_cross(const Vec3& X, const Vec3& Y) { return X.cross(Y); }

FrameVector frame_cross(const FrameVector& X, const FrameVector& Y) {
  if (!(X.base == Y.base)) throw Error(ErrorKind::base_point_mismatch, "cross product of vectors at different points");
  return {X.base, frame_cross(X.components, Y.components)};
}

bool FrenetSeries::frame_defined() const {
  return std::all_of(data.begin(), data.end(), [](const FrenetData& f) { return f.N && f.tau; });
}

void FrenetSeries::require_frame() const {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data[i].N || !data[i].tau) {
      throw Error(ErrorKind::geodesic_frame_undefined,
                  "Frenet frame undefined near s = " + std::to_string(data[i].s) + " (k = " +
                      std::to_string(data[i].k) + ")");
    }
  }
}

FrenetSeries frenet_apparatus(const Trajectory& traj, const NumericsConfig& cfg) {
  const std::size_t n = traj.size();
  const FieldSeries tangent = traj.tangent();
  const std::vector<Vec3>& T = tangent.values;
  const FieldSeries dT = covariant_derivative_along(traj, tangent, cfg);

  FrenetSeries out;
  out.manifold = traj.manifold;
  out.ds = traj.ds;
  out.k_margin = dT.margin;
  out.data.resize(n);

  std::vector<Vec3> N(n, Vec3::Zero());
  std::vector<char> has_frame(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    FrenetData& f = out.data[i];
    f.s = traj.samples[i].s;
    f.T = T[i];
    f.T3 = T[i][2];
    f.k = dT.values[i].norm();
    if (f.k > cfg.k_floor) {
      N[i] = dT.values[i] / f.k;
      f.N = N[i];
      f.B = frame_cross(T[i], N[i]);
      f.N3 = (*f.N)[2];
      f.B3 = (*f.B)[2];
      has_frame[i] = 1;
    }
  }

  const FieldSeries dN = covariant_derivative_along(traj, FieldSeries{N, dT.margin}, cfg);
  out.tau_margin = dN.margin;
  for (std::size_t i = 0; i < n; ++i) {
    if (!has_frame[i]) continue;
    const auto [lo, hi] = kernels::stencil_support(i, n, cfg.stencil);
    bool supported = true;
    for (std::size_t j = lo; j <= hi; ++j) supported = supported && has_frame[j];
    if (supported) out.data[i].tau = -dN.values[i].dot(*out.data[i].B);
  }
  return out;
}

}  // namespace bihelix
