#include "bihelix/biharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dispatch.hpp"

namespace bihelix {

namespace {

struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool empty() const { return end <= begin; }
};

Range interior(std::size_t n, std::size_t margin) {
  if (2 * margin >= n) throw Error(ErrorKind::too_few_samples, "no interior samples left after stencil margins");
  return {margin, n - margin};
}

struct Stats {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  double mean = 0.0;
  double spread() const { return max - min; }
};

template <class F>
Stats stats(Range r, F&& value) {
  Stats s;
  double sum = 0.0;
  for (std::size_t i = r.begin; i < r.end; ++i) {
    const double v = value(i);
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    sum += v;
  }
  s.mean = sum / static_cast<double>(r.end - r.begin);
  return s;
}

template <class F>
double max_abs(Range r, F&& value) {
  double m = 0.0;
  for (std::size_t i = r.begin; i < r.end; ++i) m = std::max(m, std::abs(value(i)));
  return m;
}

SystemCheck at_most(std::string name, double residual, double tol) {
  return {std::move(name), residual, tol, residual <= tol};
}

SystemCheck at_least(std::string name, double residual, double tol) {
  return {std::move(name), residual, tol, residual > tol};
}

SystemCheck constant(std::string name, const Stats& s, const NumericsConfig& cfg) {
  return at_most(std::move(name), s.spread(), cfg.residual_tol * (1.0 + std::abs(s.mean)));
}

std::vector<double> tau_series(const FrenetSeries& f) {
  std::vector<double> out(f.data.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = *f.data[i].tau;
  return out;
}

std::vector<double> k_series(const FrenetSeries& f) {
  std::vector<double> out(f.data.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.data[i].k;
  return out;
}

// Shared body of the two systems; quarter = l^2/4, defect = l^2 - 4m.
std::vector<SystemCheck> biharmonic_system(const FrenetSeries& frenet, double quarter, double defect,
                                           const std::string& prefix, const NumericsConfig& cfg) {
  frenet.require_frame();
  const auto& d = frenet.data;
  const std::vector<double> tau = tau_series(frenet);
  const std::vector<double> dtau = detail::d_ds(tau, frenet.ds, cfg);
  const Range r = interior(d.size(), frenet.tau_margin + cfg.half_width());

  const Stats k = stats(r, [&](std::size_t i) { return d[i].k; });
  std::vector<SystemCheck> out;
  out.push_back(constant(prefix + ".k_constant", k, cfg));
  out.push_back(at_least(prefix + ".k_nonzero", k.min, cfg.k_floor));
  out.push_back(at_most(prefix + ".relation", max_abs(r, [&](std::size_t i) {
                          const double b3 = *d[i].B3;
                          return d[i].k * d[i].k + tau[i] * tau[i] - (quarter - defect * b3 * b3);
                        }),
                        cfg.residual_tol));
  out.push_back(at_most(prefix + ".torsion",
                        max_abs(r, [&](std::size_t i) { return dtau[i] - defect * (*d[i].N3) * (*d[i].B3); }),
                        cfg.residual_tol));
  return out;
}

}  // namespace

FieldSeries tension1(const Trajectory& traj, const NumericsConfig& cfg) {
  return covariant_derivative_along(traj, traj.tangent(), cfg);
}

FieldSeries tension2_direct(const Trajectory& traj, const NumericsConfig& cfg) {
  const FieldSeries tangent = traj.tangent();
  const std::vector<Vec3>& T = tangent.values;
  const FieldSeries d1 = covariant_derivative_along(traj, tangent, cfg);
  const FieldSeries d2 = covariant_derivative_along(traj, d1, cfg);
  FieldSeries d3 = covariant_derivative_along(traj, d2, cfg);
  const std::vector<Point> points = traj.points();
  const std::vector<Vec3> R = detail::curvature_terms(traj.manifold, points, T, d1.values, T, cfg);
  for (std::size_t i = 0; i < d3.values.size(); ++i) d3.values[i] += R[i];
  return d3;
}

ExpansionSeries tension2_frame(const FrenetSeries& frenet, const NumericsConfig& cfg) {
  frenet.require_frame();
  const auto& d = frenet.data;
  const std::size_t n = d.size();
  if (n < kernels::min_samples(cfg.stencil, 2)) throw Error(ErrorKind::too_few_samples, "frame expansion");

  const double quarter = 0.25 * frenet.manifold.l * frenet.manifold.l;
  const double defect = frenet.manifold.twist_defect();
  const std::vector<double> k = k_series(frenet);
  const std::vector<double> tau = tau_series(frenet);
  const std::vector<double> dk = detail::d_ds(k, frenet.ds, cfg);
  const std::vector<double> ddk = detail::d2_ds2(k, frenet.ds, cfg);
  const std::vector<double> dtau = detail::d_ds(tau, frenet.ds, cfg);

  ExpansionSeries out;
  out.coefficients.resize(n);
  out.margin = std::min(n / 2, std::max(frenet.k_margin, frenet.tau_margin) + cfg.half_width());
  for (std::size_t i = 0; i < n; ++i) {
    const double b3 = *d[i].B3;
    const double n3 = *d[i].N3;
    const double cT = -3.0 * dk[i] * k[i];
    const double cN = ddk[i] - k[i] * k[i] * k[i] - k[i] * tau[i] * tau[i] + k[i] * quarter - k[i] * defect * b3 * b3;
    const double cB = -2.0 * dk[i] * tau[i] - k[i] * dtau[i] + k[i] * defect * n3 * b3;
    out.coefficients[i] = {cT, cN, cB};
  }
  return out;
}

std::vector<Vec3> expansion_vectors(const FrenetSeries& frenet, const ExpansionSeries& expansion) {
  frenet.require_frame();
  std::vector<Vec3> out(frenet.data.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& f = frenet.data[i];
    const Vec3& c = expansion.coefficients[i];
    out[i] = c[0] * f.T + c[1] * (*f.N) + c[2] * (*f.B);
  }
  return out;
}

BitensionReport bitension_report(const Trajectory& traj, const FrenetSeries& frenet, const NumericsConfig& cfg) {
  BitensionReport rep;
  rep.tau1 = tension1(traj, cfg);
  rep.tau2 = tension2_direct(traj, cfg);
  const std::size_t n = traj.size();
  rep.residual.resize(n);
  for (std::size_t i = 0; i < n; ++i) rep.residual[i] = rep.tau2.values[i].norm();
  rep.margin = rep.tau2.margin;

  if (frenet.frame_defined()) {
    rep.expansion = tension2_frame(frenet, cfg);
    rep.margin = std::max(rep.margin, rep.expansion->margin);
    const std::vector<Vec3> e = expansion_vectors(frenet, *rep.expansion);
    rep.expansion_mismatch.resize(n);
    for (std::size_t i = 0; i < n; ++i) rep.expansion_mismatch[i] = (rep.tau2.values[i] - e[i]).norm();
  }

  const Range r = interior(n, rep.margin);
  const Stats s = stats(r, [&](std::size_t i) { return rep.residual[i]; });
  rep.max_residual = s.max;
  rep.mean_residual = s.mean;
  if (!rep.expansion_mismatch.empty()) {
    rep.max_mismatch = max_abs(r, [&](std::size_t i) { return rep.expansion_mismatch[i]; });
  }
  return rep;
}

BitensionReport bitension_report(const Trajectory& traj, const NumericsConfig& cfg) {
  return bitension_report(traj, frenet_apparatus(traj, cfg), cfg);
}

std::vector<SystemCheck> check_system_h3(const FrenetSeries& frenet, const NumericsConfig& cfg) {
  require_heisenberg(frenet.manifold, "system (k const, k^2+tau^2=1/4-B3^2, tau'=N3B3)");
  return biharmonic_system(frenet, 0.25, 1.0, "system_h3", cfg);
}

std::vector<SystemCheck> check_system_cv(const FrenetSeries& frenet, const ManifoldParams& params,
                                           const NumericsConfig& cfg) {
  return biharmonic_system(frenet, 0.25 * params.l * params.l, params.twist_defect(), "system_cv", cfg);
}

std::vector<SystemCheck> check_helix_system(const FrenetSeries& frenet, const NumericsConfig& cfg) {
  require_heisenberg(frenet.manifold, "helix system");
  frenet.require_frame();
  const auto& d = frenet.data;
  const std::vector<double> tau = tau_series(frenet);
  const Range r = interior(d.size(), frenet.tau_margin + cfg.half_width());

  const Stats b3 = stats(r, [&](std::size_t i) { return *d[i].B3; });
  const Stats abs_b3 = stats(r, [&](std::size_t i) { return std::abs(*d[i].B3); });
  const Stats k = stats(r, [&](std::size_t i) { return d[i].k; });
  const Stats t = stats(r, [&](std::size_t i) { return tau[i]; });
  const double relation = max_abs(r, [&](std::size_t i) {
    const double bb = *d[i].B3;
    return d[i].k * d[i].k + tau[i] * tau[i] - (0.25 - bb * bb);
  });

  std::vector<SystemCheck> out;
  out.push_back(constant("helix.B3_constant", b3, cfg));
  out.push_back(at_least("helix.B3_nonzero", abs_b3.min, cfg.residual_tol));
  out.push_back(at_most("helix.N3_zero", max_abs(r, [&](std::size_t i) { return *d[i].N3; }), cfg.residual_tol));
  out.push_back(at_most("helix.relation", relation, cfg.residual_tol));
  out.push_back(constant("constant_torsion.k_constant", k, cfg));
  out.push_back(at_least("constant_torsion.k_nonzero", k.min, cfg.k_floor));
  out.push_back(constant("constant_torsion.tau_constant", t, cfg));
  out.push_back(
      at_most("constant_torsion.N3B3_zero", max_abs(r, [&](std::size_t i) { return *d[i].N3 * *d[i].B3; }), cfg.residual_tol));
  out.push_back(at_most("constant_torsion.relation", relation, cfg.residual_tol));
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::geodesic: return "geodesic";
    case Verdict::nongeodesic_biharmonic: return "nongeodesic_biharmonic";
    case Verdict::helix_not_biharmonic: return "helix_not_biharmonic";
    case Verdict::not_biharmonic: return "not_biharmonic";
  }
  return "unknown";
}

const SystemCheck* ClassificationResult::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ClassificationResult classify(const Trajectory& traj, const NumericsConfig& cfg) {
  ClassificationResult res;
  res.twist_defect = traj.manifold.twist_defect();

  const FieldSeries t1 = tension1(traj, cfg);
  const FieldSeries t2 = tension2_direct(traj, cfg);
  res.tension1_max = t1.interior_max_norm();
  res.tension2_max = t2.interior_max_norm();
  res.checks.push_back(at_most("is_geodesic", res.tension1_max, cfg.geodesic_tol));
  res.checks.push_back(at_most("tension2", res.tension2_max, cfg.residual_tol));
  if (res.checks[0].passed) {
    res.verdict = Verdict::geodesic;
    return res;
  }

  const FrenetSeries frenet = frenet_apparatus(traj, cfg);
  if (!frenet.frame_defined()) {
    res.checks.push_back({"frame_defined", 0.0, cfg.k_floor, false});
    res.verdict = Verdict::not_biharmonic;
    return res;
  }
  const Range r = interior(frenet.data.size(), frenet.tau_margin + cfg.half_width());
  const auto& d = frenet.data;
  const Stats k = stats(r, [&](std::size_t i) { return d[i].k; });
  const Stats tau = stats(r, [&](std::size_t i) { return *d[i].tau; });
  const Stats b3 = stats(r, [&](std::size_t i) { return *d[i].B3; });
  const Stats abs_b3 = stats(r, [&](std::size_t i) { return std::abs(*d[i].B3); });
  res.k_mean = k.mean;
  res.tau_mean = tau.mean;
  res.B3_mean = b3.mean;

  if (traj.manifold.is_heisenberg()) {
    for (auto& c : check_system_h3(frenet, cfg)) res.checks.push_back(std::move(c));
    for (auto& c : check_helix_system(frenet, cfg)) res.checks.push_back(std::move(c));
  }
  const std::vector<SystemCheck> vran = check_system_cv(frenet, traj.manifold, cfg);
  res.checks.insert(res.checks.end(), vran.begin(), vran.end());

  const bool system_ok = std::all_of(vran.begin(), vran.end(), [](const SystemCheck& c) { return c.passed; });
  if (system_ok && res.checks[1].passed) {
    res.verdict = Verdict::nongeodesic_biharmonic;
    return res;
  }
  const bool helix = constant("", k, cfg).passed && constant("", tau, cfg).passed && constant("", b3, cfg).passed &&
                     abs_b3.min > cfg.residual_tol;
  res.verdict = helix ? Verdict::helix_not_biharmonic : Verdict::not_biharmonic;
  return res;
}

std::vector<ClassificationResult> classify_batch(std::span<const Trajectory> curves, const NumericsConfig& cfg) {
  std::vector<ClassificationResult> out(curves.size());
  if (cfg.execution == Execution::serial) {
    for (std::size_t i = 0; i < curves.size(); ++i) out[i] = classify(curves[i], cfg);
    return out;
  }
  NumericsConfig inner = cfg;
  inner.execution = Execution::serial;
  detail::FirstError err;
  const auto n = static_cast<std::ptrdiff_t>(curves.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) err.run([&] { out[i] = classify(curves[i], inner); });
  err.rethrow();
  return out;
}

const char* to_string(ConeVerdict v) {
  return v == ConeVerdict::geodesic_only ? "geodesic_only" : "biharmonic_direction";
}

ConeVerdict cone_membership(const ManifoldParams& params, const FrameVector& X) {
  require_heisenberg(params, "cone membership");
  if (std::abs(X.norm() - 1.0) > 1e-9) {
    throw Error(ErrorKind::non_unit_vector, "|X| = " + std::to_string(X.norm()) + ", expected 1");
  }
  // Frame components are unchanged by left translation to the identity.
  const double c = X.components[2] / X.norm();
  const double sin2 = X.components.head<2>().squaredNorm();
  const bool admissible = 5.0 * c * c - 4.0 >= -1e-12;
  return admissible && sin2 > 1e-24 ? ConeVerdict::biharmonic_direction : ConeVerdict::geodesic_only;
}

std::vector<double> legendre_pairing(const Trajectory& traj) {
  std::vector<double> out(traj.size());
  const double l = traj.manifold.l;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& smp = traj.samples[i];
    const Point& p = smp.point;
    const Vec3 v = frame_matrix(traj.manifold, p) * smp.velocity;
    const double F = conformal_factor(traj.manifold, p);
    out[i] = v.z() + 0.5 * l * (p.y * v.x() - p.x * v.y()) / F;
  }
  return out;
}

}  // namespace bihelix
