#include "bihelix/geometry.hpp"

#include <Eigen/LU>
#include <string>

namespace bihelix {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain_error: return "DomainError";
    case ErrorKind::index_error: return "IndexError";
    case ErrorKind::base_point_mismatch: return "BasePointMismatch";
    case ErrorKind::degenerate_plane: return "DegeneratePlane";
    case ErrorKind::unsupported_manifold: return "UnsupportedManifold";
    case ErrorKind::non_unit_speed: return "NonUnitSpeed";
    case ErrorKind::non_monotone: return "NonMonotone";
    case ErrorKind::too_few_samples: return "TooFewSamples";
    case ErrorKind::geodesic_frame_undefined: return "GeodesicFrameUndefined";
    case ErrorKind::inadmissible_alpha: return "InadmissibleAlpha";
    case ErrorKind::integration_failure: return "IntegrationFailure";
    case ErrorKind::domain_exit: return "DomainExit";
    case ErrorKind::non_unit_vector: return "NonUnitVector";
    case ErrorKind::non_monotone_alpha: return "NonMonotoneAlpha";
    case ErrorKind::invalid_config: return "InvalidConfig";
    case ErrorKind::io_error: return "IoError";
  }
  return "Error";
}

void NumericsConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw Error(ErrorKind::invalid_config, std::string(name) + " must be > 0");
  };
  positive(fd_step, "fd_step");
  positive(curvature_fd_step, "curvature_fd_step");
  positive(spacing_tol, "spacing_tol");
  positive(unit_speed_tol, "unit_speed_tol");
  positive(frame_tol, "frame_tol");
  positive(residual_tol, "residual_tol");
  positive(geodesic_tol, "geodesic_tol");
  positive(expansion_tol, "expansion_tol");
  positive(k_floor, "k_floor");
  positive(ode_atol, "ode_atol");
  positive(ode_rtol, "ode_rtol");
  positive(ode_fixed_step, "ode_fixed_step");
}

namespace {

void check_index(int a) {
  if (a < 1 || a > 3) throw Error(ErrorKind::index_error, "frame index " + std::to_string(a) + " not in {1,2,3}");
}

void check_base(const Point& p, const Point& q) {
  if (!(p == q)) throw Error(ErrorKind::base_point_mismatch, "vectors attached to different points");
}

// The H3 connection, verbatim.
ConnectionTable heisenberg_connection() {
  ConnectionTable w;
  w[0][0] = {0.0, 0.0, 0.0};
  w[0][1] = {0.0, 0.0, 0.5};
  w[0][2] = {0.0, -0.5, 0.0};
  w[1][0] = {0.0, 0.0, -0.5};
  w[1][1] = {0.0, 0.0, 0.0};
  w[1][2] = {0.5, 0.0, 0.0};
  w[2][0] = {0.0, -0.5, 0.0};
  w[2][1] = {0.5, 0.0, 0.0};
  w[2][2] = {0.0, 0.0, 0.0};
  return w;
}

// Koszul formula in an orthonormal frame:
//   <nabla_a e_b, e_c> = 1/2 (c_ab^c - c_bc^a + c_ca^b)
ConnectionTable koszul(const ConnectionTable& c) {
  ConnectionTable w;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < 3; ++k)
        w[a][b][k] = 0.5 * (c[a][b][k] - c[b][k][a] + c[k][a][b]);
  return w;
}

// e_a applied to the structure functions, indexed [a] -> table.
std::array<ConnectionTable, 3> structure_derivatives(const ManifoldParams& params, const Point& p) {
  const double F = conformal_factor(params, p);
  std::array<ConnectionTable, 3> dc;
  for (auto& t : dc)
    for (auto& row : t)
      for (auto& v : row) v.setZero();
  // c_12 = (-2my, 2mx, l); e1 = F d/dx + ..., e2 = F d/dy + ..., e3 = d/dz.
  const Vec3 d1{0.0, 2.0 * params.m * F, 0.0};
  const Vec3 d2{-2.0 * params.m * F, 0.0, 0.0};
  dc[0][0][1] = d1;
  dc[0][1][0] = -d1;
  dc[1][0][1] = d2;
  dc[1][1][0] = -d2;
  return dc;
}

template <class F>
auto central5(F&& f, double h) {
  using R = std::decay_t<decltype(f(h))>;
  const R out = (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
  return out;
}

std::array<Mat3, 3> metric_gradient_fd(const ManifoldParams& params, const Point& p, double h) {
  std::array<Mat3, 3> dg;
  for (int i = 0; i < 3; ++i) {
    dg[i] = central5(
        [&](double t) -> Mat3 {
          Vec3 q = p.vec();
          q[i] += t;
          return metric_at(params, Point::from(q)).g;
        },
        h);
  }
  return dg;
}

ChristoffelTable christoffel_fd(const ManifoldParams& params, const Point& p, double h) {
  const Mat3 ginv = metric_at(params, p).g.inverse();
  const auto dg = metric_gradient_fd(params, p, h);
  ChristoffelTable G;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int q = 0; q < 3; ++q) s += ginv(k, q) * (dg[i](j, q) + dg[j](i, q) - dg[q](i, j));
        G[k](i, j) = 0.5 * s;
      }
    }
  }
  return G;
}

ConnectionTable connection_fd(const ManifoldParams& params, const Point& p, double h) {
  const ChristoffelTable G = christoffel_fd(params, p, h);
  const Mat3 E = frame_matrix(params, p);
  const Mat3 theta = coframe_matrix(params, p);
  std::array<Mat3, 3> dE;
  for (int i = 0; i < 3; ++i) {
    dE[i] = central5(
        [&](double t) -> Mat3 {
          Vec3 q = p.vec();
          q[i] += t;
          return frame_matrix(params, Point::from(q));
        },
        h);
  }
  ConnectionTable w;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Vec3 coord = Vec3::Zero();
      for (int i = 0; i < 3; ++i) coord += E(i, a) * dE[i].col(b);
      for (int k = 0; k < 3; ++k) coord[k] += E.col(a).dot(G[k] * E.col(b));
      w[a][b] = theta * coord;
    }
  }
  return w;
}

// R(e_a,e_b)e_c = -nabla_a nabla_b e_c + nabla_b nabla_a e_c + nabla_[a,b] e_c, where
// nabla_a (w_bc^d e_d) = e_a(w_bc^d) e_d + w_bc^d w_ad.
CurvatureTable assemble_curvature(const ConnectionTable& w, const std::array<ConnectionTable, 3>& dw,
                                  const ConnectionTable& c) {
  CurvatureTable R;
  auto second = [&](int a, int b, int k) {
    Vec3 v = dw[a][b][k];
    for (int d = 0; d < 3; ++d) v += w[b][k][d] * w[a][d];
    return v;
  };
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int k = 0; k < 3; ++k) {
        Vec3 v = -second(a, b, k) + second(b, a, k);
        for (int d = 0; d < 3; ++d) v += c[a][b][d] * w[d][k];
        R[a][b][k] = v;
      }
    }
  }
  return R;
}

}  // namespace

double conformal_factor(const ManifoldParams& params, const Point& p) {
  const double F = 1.0 + params.m * (p.x * p.x + p.y * p.y);
  if (!(F > 0.0)) {
    throw Error(ErrorKind::domain_error, "1 + m(x^2+y^2) = " + std::to_string(F) + " <= 0 outside the chart");
  }
  return F;
}

Mat3 coframe_matrix(const ManifoldParams& params, const Point& p) {
  const double F = conformal_factor(params, p);
  const double h = 0.5 * params.l / F;
  Mat3 theta;
  theta << 1.0 / F, 0.0, 0.0,
           0.0, 1.0 / F, 0.0,
           h * p.y, -h * p.x, 1.0;
  return theta;
}

Mat3 frame_matrix(const ManifoldParams& params, const Point& p) {
  const double F = conformal_factor(params, p);
  const double h = 0.5 * params.l;
  Mat3 E;
  E << F, 0.0, 0.0,
       0.0, F, 0.0,
       -h * p.y, h * p.x, 1.0;
  return E;
}

MetricTensor metric_at(const ManifoldParams& params, const Point& p) {
  const Mat3 theta = coframe_matrix(params, p);
  return {p, theta.transpose() * theta};
}

std::array<TangentVector, 3> frame_at(const ManifoldParams& params, const Point& p) {
  const Mat3 E = frame_matrix(params, p);
  return {TangentVector{p, E.col(0)}, TangentVector{p, E.col(1)}, TangentVector{p, E.col(2)}};
}

FrameVector to_frame(const ManifoldParams& params, const TangentVector& v) {
  return {v.base, coframe_matrix(params, v.base) * v.components};
}

TangentVector to_coordinates(const ManifoldParams& params, const FrameVector& v) {
  return {v.base, frame_matrix(params, v.base) * v.components};
}

ConnectionTable structure_table(const ManifoldParams& params, const Point& p) {
  conformal_factor(params, p);
  ConnectionTable c;
  for (auto& row : c)
    for (auto& v : row) v.setZero();
  const Vec3 c12{-2.0 * params.m * p.y, 2.0 * params.m * p.x, params.l};
  c[0][1] = c12;
  c[1][0] = -c12;
  return c;
}

ConnectionTable connection_table(const ManifoldParams& params, const Point& p, const NumericsConfig& cfg) {
  if (cfg.route == ConnectionRoute::finite_difference) return connection_fd(params, p, cfg.fd_step);
  if (params.is_heisenberg()) return heisenberg_connection();
  return koszul(structure_table(params, p));
}

FrameVector connection_frame(const ManifoldParams& params, const Point& p, int a, int b,
                             const NumericsConfig& cfg) {
  check_index(a);
  check_index(b);
  return {p, connection_table(params, p, cfg)[a - 1][b - 1]};
}

FrameVector lie_bracket_frame(const ManifoldParams& params, const Point& p, int a, int b) {
  check_index(a);
  check_index(b);
  return {p, structure_table(params, p)[a - 1][b - 1]};
}

ChristoffelTable christoffel_coordinate(const ManifoldParams& params, const Point& p, const NumericsConfig& cfg) {
  if (cfg.route == ConnectionRoute::finite_difference) return christoffel_fd(params, p, cfg.fd_step);

  // Gamma^k_ij = e_c^k (d_i theta^c_j + theta^a_i theta^b_j w_ab^c)
  const double F = conformal_factor(params, p);
  const double m = params.m, l = params.l, x = p.x, y = p.y;
  const double F2 = F * F;
  std::array<Mat3, 3> dtheta;  // [i](c, j)
  dtheta[0] << -2.0 * m * x / F2, 0.0, 0.0,
               0.0, -2.0 * m * x / F2, 0.0,
               -l * m * x * y / F2, -0.5 * l / F + l * m * x * x / F2, 0.0;
  dtheta[1] << -2.0 * m * y / F2, 0.0, 0.0,
               0.0, -2.0 * m * y / F2, 0.0,
               0.5 * l / F - l * m * y * y / F2, l * m * x * y / F2, 0.0;
  dtheta[2].setZero();

  const Mat3 theta = coframe_matrix(params, p);
  const Mat3 E = frame_matrix(params, p);
  const ConnectionTable w = connection_table(params, p, cfg);
  ChristoffelTable G;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Vec3 frame = dtheta[i].col(j);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) frame += theta(a, i) * theta(b, j) * w[a][b];
      const Vec3 coord = E * frame;
      for (int k = 0; k < 3; ++k) G[k](i, j) = coord[k];
    }
  }
  return G;
}

CurvatureTable curvature_table(const ManifoldParams& params, const Point& p, const NumericsConfig& cfg) {
  if (cfg.route == ConnectionRoute::finite_difference) {
    const ConnectionTable w = connection_fd(params, p, cfg.fd_step);
    const Mat3 E = frame_matrix(params, p);
    std::array<ConnectionTable, 3> dw;
    for (int a = 0; a < 3; ++a) {
      // e_a(f) = d/dt f(p + t e_a(p)) at t = 0
      auto along = [&](double t, int b, int k) -> Vec3 {
        return connection_fd(params, Point::from(p.vec() + t * E.col(a)), cfg.fd_step)[b][k];
      };
      for (int b = 0; b < 3; ++b)
        for (int k = 0; k < 3; ++k)
          dw[a][b][k] = central5([&](double t) { return along(t, b, k); }, cfg.curvature_fd_step);
    }
    ConnectionTable c;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) c[a][b] = w[a][b] - w[b][a];
    return assemble_curvature(w, dw, c);
  }

  const ConnectionTable c = structure_table(params, p);
  const ConnectionTable w = params.is_heisenberg() ? heisenberg_connection() : koszul(c);
  const auto dc = structure_derivatives(params, p);
  std::array<ConnectionTable, 3> dw;
  for (int a = 0; a < 3; ++a) dw[a] = koszul(dc[a]);
  return assemble_curvature(w, dw, c);
}

Vec3 contract_curvature(const CurvatureTable& R, const Vec3& X, const Vec3& Y, const Vec3& Z) {
  Vec3 out = Vec3::Zero();
  for (int a = 0; a < 3; ++a) {
    if (X[a] == 0.0) continue;
    for (int b = 0; b < 3; ++b) {
      const double xy = X[a] * Y[b];
      if (xy == 0.0) continue;
      for (int c = 0; c < 3; ++c) out += (xy * Z[c]) * R[a][b][c];
    }
  }
  return out;
}

Vec3 contract_connection(const ConnectionTable& w, const Vec3& X, const Vec3& V) {
  Vec3 out = Vec3::Zero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out += (X[a] * V[b]) * w[a][b];
  return out;
}

FrameVector curvature_op(const ManifoldParams& params, const FrameVector& X, const FrameVector& Y,
                         const FrameVector& Z, const NumericsConfig& cfg) {
  check_base(X.base, Y.base);
  check_base(X.base, Z.base);
  const CurvatureTable R = curvature_table(params, X.base, cfg);
  return {X.base, contract_curvature(R, X.components, Y.components, Z.components)};
}

double riemann_component(const ManifoldParams& params, const Point& p, int a, int b, int c, int d,
                         const NumericsConfig& cfg) {
  check_index(a);
  check_index(b);
  check_index(c);
  check_index(d);
  return curvature_table(params, p, cfg)[a - 1][b - 1][c - 1][d - 1];
}

double ricci_component(const ManifoldParams& params, const Point& p, int a, int b, const NumericsConfig& cfg) {
  check_index(a);
  check_index(b);
  const CurvatureTable R = curvature_table(params, p, cfg);
  double rho = 0.0;
  for (int k = 0; k < 3; ++k) rho += R[a - 1][k][b - 1][k];
  return rho;
}

double sectional(const ManifoldParams& params, const FrameVector& X, const FrameVector& Y,
                 const NumericsConfig& cfg) {
  check_base(X.base, Y.base);
  const Vec3& x = X.components;
  const Vec3& y = Y.components;
  const double area = x.squaredNorm() * y.squaredNorm() - x.dot(y) * x.dot(y);
  if (area < 1e-12) throw Error(ErrorKind::degenerate_plane, "X and Y span no plane");
  const CurvatureTable R = curvature_table(params, X.base, cfg);
  return contract_curvature(R, x, y, x).dot(y) / area;
}

Point left_translate(const Point& g, const Point& p) {
  return {g.x + p.x, g.y + p.y, g.z + p.z + 0.5 * g.x * p.y - 0.5 * g.y * p.x};
}

Mat3 left_translate_jacobian(const Point& g) {
  Mat3 J;
  J << 1.0, 0.0, 0.0,
       0.0, 1.0, 0.0,
       -0.5 * g.y, 0.5 * g.x, 1.0;
  return J;
}

void require_heisenberg(const ManifoldParams& params, const char* what) {
  if (!params.is_heisenberg()) {
    throw Error(ErrorKind::unsupported_manifold,
                std::string(what) + " is defined only on the Heisenberg group (m,l)=(0,1)");
  }
}

}  // namespace bihelix
