#pragma once

// Constructors for the concrete curves and surfaces of H3: the non-geodesic
// biharmonic helices, geodesics, one-parameter subgroups, the B3 = 0 family
// and the cylinder/helicoid pair whose intersection is a biharmonic helix.

#include <functional>

#include "bihelix/curve.hpp"

namespace bihelix {

enum class Branch { plus, minus };

const char* to_string(Branch b);
Branch parse_branch(const std::string& s);

/// Parameters of a biharmonic helix. Admissible when 5 cos^2(alpha0) - 4 >= 0
/// and sin(alpha0) != 0, i.e. alpha0 in (0, arccos(2/sqrt5)] u [arccos(-2/sqrt5), pi).
struct HelixParams {
  double alpha0 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  Branch branch = Branch::plus;

  /// Throws InadmissibleAlpha.
  void validate() const;
};

/// Largest alpha0 of the first admissible component, arccos(2/sqrt5).
double admissible_alpha_bound();
bool alpha_admissible(double alpha0);

/// Root A of A^2 - cos(a0) A + 1 - cos^2(a0) = 0 on the requested branch.
/// InadmissibleAlpha for a negative discriminant or when A = cos(a0) (k = 0).
double solve_branch_A(double alpha0, Branch branch);

/// The closed-form curve family with tangent
///   T = sin a0 cos(As+a) e1 + sin a0 sin(As+a) e2 + cos a0 e3
/// for any A != 0. Biharmonic only when A solves the branch quadratic.
struct HelixShape {
  double alpha0 = 0.0;
  double A = 1.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

CurveSpec helix_shape_curve(const HelixShape& shape, double s0, double s1);
CurveSpec biharmonic_helix(const HelixParams& hp, double s0, double s1);
HelixShape shape_of(const HelixParams& hp);

struct HelixInvariants {
  double A = 0.0;
  double k = 0.0;    ///< >= 0
  double tau = 0.0;
  double B3 = 0.0;   ///< -sin a0 when sin a0 (cos a0 - A) > 0, +sin a0 otherwise
};

/// Closed-form k, tau, B3 of a biharmonic helix with k normalized to be non-negative.
HelixInvariants helix_invariants(const HelixParams& hp);
/// Same closed forms for an arbitrary shape (A need not be a root).
HelixInvariants shape_invariants(const HelixShape& shape);

/// Geodesic with p(s0) = p0 and unit initial velocity v0 (frame components),
/// integrated from the coordinate geodesic equation.
CurveSpec geodesic_ivp(const ManifoldParams& params, const Point& p0, const Vec3& v0, double s0, double s1,
                       const NumericsConfig& cfg = {});

/// u -> exp(u X) for a unit X = (A, B, C) in frame components; on H3 the line (Au, Bu, Cu).
CurveSpec one_param_subgroup(const Vec3& direction, double s0, double s1,
                             const ManifoldParams& params = ManifoldParams::heisenberg());

/// Curve through p0 at s0 whose velocity has prescribed frame components T(s) (unit).
CurveSpec frame_tangent_curve(const ManifoldParams& params, const Point& p0, std::function<Vec3(double)> tangent,
                              double s0, double s1);

/// T = sin a cos b e1 + sin a sin b e2 + cos a e3 with b(s) = b0 + int_{s0}^s cos a,
/// so B3 = 0. alpha must be strictly increasing (NonMonotoneAlpha).
CurveSpec b3zero_curve(std::function<double(double)> alpha, double s0, double s1, double beta0 = 0.0,
                       const Point& p0 = {});

/// Horizontal circle x^2 + y^2 = r^2, z = 0 on H3, by arclength.
CurveSpec horizontal_circle(double radius, double s0, double s1);

enum class SurfaceKind { cylinder, helicoid };

struct SurfacePatch {
  SurfaceKind kind = SurfaceKind::cylinder;
  HelixShape shape;
};

SurfacePatch surface_patch(SurfaceKind kind, const HelixParams& hp);
Point surface_eval(const SurfacePatch& patch, double u, double v);

/// Max over n samples of the curve's distance to the patch: radial defect
/// for the cylinder, |gamma(s) - S'(s, 1)| for the helicoid.
double membership_residual(const CurveSpec& curve, const SurfacePatch& patch, std::size_t n,
                           const NumericsConfig& cfg = {});

}  // namespace bihelix
