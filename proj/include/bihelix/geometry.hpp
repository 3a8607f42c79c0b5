#pragma once

// Riemannian structure of the Cartan-Vranceanu family
//
//   ds^2 = (dx^2 + dy^2) / F^2 + (dz + (l/2) (y dx - x dy) / F)^2,   F = 1 + m (x^2 + y^2)
//
// with (m, l) = (0, 1) the Heisenberg group H3. Everything here is a pure
// function of its arguments.
//
// Curvature sign convention:  R(X,Y)Z = -nabla_X nabla_Y Z + nabla_Y nabla_X Z + nabla_[X,Y] Z,
// so that the sectional curvature is K(X,Y) = R(X,Y,X,Y) / (|X|^2 |Y|^2 - <X,Y>^2)
// and K(e1, e2) = -3/4 on H3.

#include <array>

#include "bihelix/numerics.hpp"
#include "bihelix/types.hpp"

namespace bihelix {

/// 1 + m (x^2 + y^2). Throws DomainError when it is not positive.
double conformal_factor(const ManifoldParams& params, const Point& p);

MetricTensor metric_at(const ManifoldParams& params, const Point& p);

/// Rows are the coframe one-forms theta^1, theta^2, theta^3 in coordinates.
Mat3 coframe_matrix(const ManifoldParams& params, const Point& p);
/// Columns are e1, e2, e3 in coordinates; the inverse of coframe_matrix.
Mat3 frame_matrix(const ManifoldParams& params, const Point& p);

/// e1, e2, e3 as coordinate-component vectors at p.
std::array<TangentVector, 3> frame_at(const ManifoldParams& params, const Point& p);

FrameVector to_frame(const ManifoldParams& params, const TangentVector& v);
TangentVector to_coordinates(const ManifoldParams& params, const FrameVector& v);

/// [e_a, e_b] in frame components (0-based indices, unchecked).
ConnectionTable structure_table(const ManifoldParams& params, const Point& p);

ConnectionTable connection_table(const ManifoldParams& params, const Point& p,
                                 const NumericsConfig& cfg = {});

/// nabla_{e_a} e_b with a, b in {1, 2, 3}; IndexError otherwise.
FrameVector connection_frame(const ManifoldParams& params, const Point& p, int a, int b,
                             const NumericsConfig& cfg = {});

/// [e_a, e_b] with a, b in {1, 2, 3}.
FrameVector lie_bracket_frame(const ManifoldParams& params, const Point& p, int a, int b);

/// Gamma^k_ij of the coordinate basis. The closed-form route assembles them
/// from the analytic frame connection; the FD route from metric derivatives.
ChristoffelTable christoffel_coordinate(const ManifoldParams& params, const Point& p,
                                        const NumericsConfig& cfg = {});

CurvatureTable curvature_table(const ManifoldParams& params, const Point& p,
                               const NumericsConfig& cfg = {});

/// R(X,Y)Z in frame components; all three must share a base point.
FrameVector curvature_op(const ManifoldParams& params, const FrameVector& X, const FrameVector& Y,
                         const FrameVector& Z, const NumericsConfig& cfg = {});

/// Same contraction on raw frame components, given a precomputed table.
Vec3 contract_curvature(const CurvatureTable& R, const Vec3& X, const Vec3& Y, const Vec3& Z);
/// sum_ab X^a V^b nabla_{e_a} e_b.
Vec3 contract_connection(const ConnectionTable& w, const Vec3& X, const Vec3& V);

/// R_abcd = g(R(e_a, e_b) e_c, e_d), indices in {1, 2, 3}.
double riemann_component(const ManifoldParams& params, const Point& p, int a, int b, int c, int d,
                         const NumericsConfig& cfg = {});

/// rho_ab = trace(Z -> R(e_a, Z) e_b), indices in {1, 2, 3}.
double ricci_component(const ManifoldParams& params, const Point& p, int a, int b,
                       const NumericsConfig& cfg = {});

/// Sectional curvature of span{X, Y}; DegeneratePlane when the area term < 1e-12.
double sectional(const ManifoldParams& params, const FrameVector& X, const FrameVector& Y,
                 const NumericsConfig& cfg = {});

/// Group product g * p on H3.
Point left_translate(const Point& g, const Point& p);
/// Differential of left translation by g in coordinates.
Mat3 left_translate_jacobian(const Point& g);

/// Throws UnsupportedManifold unless params is (0, 1).
void require_heisenberg(const ManifoldParams& params, const char* what);

}  // namespace bihelix
