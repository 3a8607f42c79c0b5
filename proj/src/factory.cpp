#include "bihelix/factory.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <string>

namespace bihelix {

namespace {

constexpr double kAdmissibleTol = 1e-12;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void require_unit(const Vec3& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-9) {
    throw Error(ErrorKind::non_unit_vector, std::string(what) + " has length " + fmt(v.norm()) + ", expected 1");
  }
}

void set_shape_parameters(CurveSpec& spec, const HelixShape& shape) {
  spec.parameters["alpha0"] = shape.alpha0;
  spec.parameters["A"] = shape.A;
  spec.parameters["a"] = shape.a;
  spec.parameters["b"] = shape.b;
  spec.parameters["c"] = shape.c;
  spec.parameters["d"] = shape.d;
}

}  // namespace

const char* to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

Branch parse_branch(const std::string& s) {
  if (s == "plus" || s == "+") return Branch::plus;
  if (s == "minus" || s == "-") return Branch::minus;
  throw Error(ErrorKind::invalid_config, "branch must be plus or minus, got '" + s + "'");
}

double admissible_alpha_bound() { return std::acos(2.0 / std::sqrt(5.0)); }

bool alpha_admissible(double alpha0) {
  if (!(alpha0 > 0.0 && alpha0 < std::numbers::pi)) return false;
  const double c = std::cos(alpha0);
  return 5.0 * c * c - 4.0 >= -kAdmissibleTol && std::abs(std::sin(alpha0)) > kAdmissibleTol;
}

void HelixParams::validate() const {
  if (!alpha_admissible(alpha0)) {
    const double c = std::cos(alpha0);
    throw Error(ErrorKind::inadmissible_alpha,
                "alpha0 = " + fmt(alpha0) + " rad violates 5cos^2(alpha0) - 4 >= 0 with 0 < alpha0 < pi "
                "(cos^2(alpha0) = " + fmt(c * c) + ", need >= 4/5); admissible set is (0, " +
                    fmt(admissible_alpha_bound()) + "] u [" + fmt(std::numbers::pi - admissible_alpha_bound()) +
                    ", pi)");
  }
}

double solve_branch_A(double alpha0, Branch branch) {
  const double c = std::cos(alpha0);
  double disc = 5.0 * c * c - 4.0;
  if (disc < -kAdmissibleTol) {
    throw Error(ErrorKind::inadmissible_alpha,
                "5cos^2(alpha0) - 4 = " + fmt(disc) + " < 0: no real root, need cos^2(alpha0) >= 4/5");
  }
  // Within roundoff of the boundary both branches share the double root.
  if (disc <= kAdmissibleTol) disc = 0.0;
  const double root = std::sqrt(disc);
  const double A = branch == Branch::plus ? 0.5 * (c + root) : 0.5 * (c - root);
  const double residual = A * A - c * A + 1.0 - c * c;
  if (std::abs(residual) > 1e-12) {
    throw Error(ErrorKind::inadmissible_alpha, "branch root residual " + fmt(residual));
  }
  if (std::abs(A - c) <= kAdmissibleTol) {
    throw Error(ErrorKind::inadmissible_alpha, "root A = cos(alpha0) gives k = 0 (geodesic)");
  }
  return A;
}

HelixShape shape_of(const HelixParams& hp) {
  hp.validate();
  return {hp.alpha0, solve_branch_A(hp.alpha0, hp.branch), hp.a, hp.b, hp.c, hp.d};
}

CurveSpec helix_shape_curve(const HelixShape& h, double s0, double s1) {
  if (h.A == 0.0) throw Error(ErrorKind::invalid_config, "helix shape needs A != 0");
  const double sa = std::sin(h.alpha0);
  const double ca = std::cos(h.alpha0);
  const double pitch = ca + sa * sa / (2.0 * h.A);
  auto position = [=](double s) {
    const double beta = h.A * s + h.a;
    const double sb = std::sin(beta), cb = std::cos(beta);
    return Point{sa / h.A * sb + h.b, -sa / h.A * cb + h.c,
                 pitch * s - h.b / (2.0 * h.A) * sa * cb - h.c / (2.0 * h.A) * sa * sb + h.d};
  };
  auto velocity = [=](double s) {
    const double beta = h.A * s + h.a;
    const double sb = std::sin(beta), cb = std::cos(beta);
    return Vec3{sa * cb, sa * sb, pitch + 0.5 * h.b * sa * sb - 0.5 * h.c * sa * cb};
  };
  CurveSpec spec = closed_form_curve(ManifoldParams::heisenberg(), position, velocity, s0, s1, "helix_shape");
  set_shape_parameters(spec, h);
  return spec;
}

CurveSpec biharmonic_helix(const HelixParams& hp, double s0, double s1) {
  CurveSpec spec = helix_shape_curve(shape_of(hp), s0, s1);
  spec.family = "biharmonic_helix";
  spec.parameters["branch"] = hp.branch == Branch::plus ? 1.0 : -1.0;
  return spec;
}

HelixInvariants shape_invariants(const HelixShape& h) {
  const double sa = std::sin(h.alpha0);
  const double ca = std::cos(h.alpha0);
  const double signed_k = sa * (ca - h.A);
  HelixInvariants inv;
  inv.A = h.A;
  inv.k = std::abs(signed_k);
  inv.tau = -(ca * h.A + 0.5 - ca * ca);
  inv.B3 = signed_k >= 0.0 ? -sa : sa;
  return inv;
}

HelixInvariants helix_invariants(const HelixParams& hp) { return shape_invariants(shape_of(hp)); }

CurveSpec geodesic_ivp(const ManifoldParams& params, const Point& p0, const Vec3& v0, double s0, double s1,
                       const NumericsConfig& cfg) {
  require_unit(v0, "initial velocity");
  const Vec3 coord = frame_matrix(params, p0) * v0;

  OdeCurve ode;
  ode.initial_state = {p0.x, p0.y, p0.z, coord.x(), coord.y(), coord.z()};
  ode.rhs = [params, cfg](const OdeState& x, OdeState& dx, double) {
    ChristoffelTable G;
    try {
      G = christoffel_coordinate(params, {x[0], x[1], x[2]}, cfg);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::domain_error) throw Error(ErrorKind::domain_exit, e.what());
      throw;
    }
    const Vec3 v{x[3], x[4], x[5]};
    for (int k = 0; k < 3; ++k) {
      dx[k] = v[k];
      dx[3 + k] = -v.dot(G[k] * v);
    }
  };
  ode.readout = [params](double, const OdeState& x) {
    const Point p{x[0], x[1], x[2]};
    return CurveState{p, coframe_matrix(params, p) * Vec3{x[3], x[4], x[5]}};
  };

  CurveSpec spec;
  spec.manifold = params;
  spec.s0 = s0;
  spec.s1 = s1;
  spec.family = "geodesic";
  spec.parameters = {{"x0", p0.x}, {"y0", p0.y}, {"z0", p0.z}, {"v1", v0.x()}, {"v2", v0.y()}, {"v3", v0.z()}};
  spec.data = std::move(ode);
  return spec;
}

CurveSpec one_param_subgroup(const Vec3& direction, double s0, double s1, const ManifoldParams& params) {
  require_heisenberg(params, "one-parameter subgroup");
  require_unit(direction, "subgroup direction");
  const Vec3 X = direction;
  CurveSpec spec = closed_form_curve(
      params, [X](double u) { return Point::from(u * X); }, [X](double) { return X; }, s0, s1,
      "one_param_subgroup");
  spec.parameters = {{"A", X.x()}, {"B", X.y()}, {"C", X.z()}};
  return spec;
}

CurveSpec frame_tangent_curve(const ManifoldParams& params, const Point& p0, std::function<Vec3(double)> tangent,
                              double s0, double s1) {
  OdeCurve ode;
  ode.initial_state = {p0.x, p0.y, p0.z};
  ode.rhs = [params, tangent](const OdeState& x, OdeState& dx, double s) {
    Mat3 E;
    try {
      E = frame_matrix(params, {x[0], x[1], x[2]});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::domain_error) throw Error(ErrorKind::domain_exit, e.what());
      throw;
    }
    const Vec3 v = E * tangent(s);
    dx[0] = v.x();
    dx[1] = v.y();
    dx[2] = v.z();
  };
  ode.readout = [tangent](double s, const OdeState& x) { return CurveState{{x[0], x[1], x[2]}, tangent(s)}; };

  CurveSpec spec;
  spec.manifold = params;
  spec.s0 = s0;
  spec.s1 = s1;
  spec.family = "frame_tangent";
  spec.data = std::move(ode);
  return spec;
}

CurveSpec b3zero_curve(std::function<double(double)> alpha, double s0, double s1, double beta0, const Point& p0) {
  if (!(s1 > s0)) throw Error(ErrorKind::invalid_config, "s_range must satisfy s0 < s1");
  constexpr int kChecks = 1000;
  double prev = alpha(s0);
  for (int i = 1; i <= kChecks; ++i) {
    const double s = s0 + (s1 - s0) * i / kChecks;
    const double cur = alpha(s);
    if (!(cur > prev)) {
      throw Error(ErrorKind::non_monotone_alpha, "alpha must be strictly increasing; fails near s = " + fmt(s));
    }
    prev = cur;
  }

  // beta at panel knots once, then a fixed Gauss rule on the partial panel.
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [alpha](double t) { return std::cos(alpha(t)); };
  const auto panels = static_cast<std::size_t>(std::ceil((s1 - s0) / 0.05));
  const double width = (s1 - s0) / static_cast<double>(panels);
  auto knots = std::make_shared<std::vector<double>>(panels + 1, beta0);
  for (std::size_t j = 0; j < panels; ++j) {
    const double lo = s0 + width * static_cast<double>(j);
    (*knots)[j + 1] = (*knots)[j] + gauss_kronrod<double, 31>::integrate(integrand, lo, lo + width, 15, 1e-12);
  }
  auto beta = [integrand, knots, s0, width, panels](double s) {
    const double t = std::clamp((s - s0) / width, 0.0, static_cast<double>(panels));
    const auto j = std::min(static_cast<std::size_t>(t), panels - 1);
    const double lo = s0 + width * static_cast<double>(j);
    if (s == lo) return (*knots)[j];
    return (*knots)[j] + gauss<double, 20>::integrate(integrand, lo, s);
  };
  auto tangent = [alpha, beta](double s) {
    const double a = alpha(s), b = beta(s);
    return Vec3{std::sin(a) * std::cos(b), std::sin(a) * std::sin(b), std::cos(a)};
  };
  CurveSpec spec = frame_tangent_curve(ManifoldParams::heisenberg(), p0, tangent, s0, s1);
  spec.family = "b3zero";
  spec.parameters = {{"alpha_s0", alpha(s0)}, {"alpha_s1", alpha(s1)}, {"beta0", beta0}};
  return spec;
}

CurveSpec horizontal_circle(double radius, double s0, double s1) {
  if (!(radius > 0.0)) throw Error(ErrorKind::invalid_config, "circle radius must be > 0");
  const double r = radius;
  const double w = 1.0 / (r * std::sqrt(1.0 + 0.25 * r * r));
  CurveSpec spec = closed_form_curve(
      ManifoldParams::heisenberg(),
      [r, w](double s) { return Point{r * std::cos(w * s), r * std::sin(w * s), 0.0}; },
      [r, w](double s) { return Vec3{-r * w * std::sin(w * s), r * w * std::cos(w * s), 0.0}; }, s0, s1,
      "horizontal_circle");
  spec.parameters = {{"radius", r}};
  return spec;
}

SurfacePatch surface_patch(SurfaceKind kind, const HelixParams& hp) { return {kind, shape_of(hp)}; }

Point surface_eval(const SurfacePatch& patch, double u, double v) {
  const HelixShape& h = patch.shape;
  const double sa = std::sin(h.alpha0);
  const double ca = std::cos(h.alpha0);
  const double beta = h.A * u + h.a;
  if (patch.kind == SurfaceKind::cylinder) {
    return {sa / h.A * std::sin(beta) + h.b, -sa / h.A * std::cos(beta) + h.c, v};
  }
  const double x = v / h.A * sa * std::sin(beta) + h.b;
  const double y = -v / h.A * sa * std::cos(beta) + h.c;
  const double z = (ca + sa * sa / (2.0 * h.A)) * u + 0.5 * h.b * y - 0.5 * h.c * x + h.d;
  return {x, y, z};
}

double membership_residual(const CurveSpec& curve, const SurfacePatch& patch, std::size_t n,
                           const NumericsConfig& cfg) {
  const Trajectory traj = sample_curve(curve, n, cfg);
  const HelixShape& h = patch.shape;
  const double radius = std::abs(std::sin(h.alpha0) / h.A);
  double worst = 0.0;
  for (const auto& smp : traj.samples) {
    const Point& p = smp.point;
    double defect;
    if (patch.kind == SurfaceKind::cylinder) {
      defect = std::abs(std::hypot(p.x - h.b, p.y - h.c) - radius);
    } else {
      defect = (p.vec() - surface_eval(patch, smp.s, 1.0).vec()).norm();
    }
    worst = std::max(worst, defect);
  }
  return worst;
}

}  // namespace bihelix
