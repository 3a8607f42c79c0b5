#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace bihelix {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class ErrorKind {
  domain_error,
  index_error,
  base_point_mismatch,
  degenerate_plane,
  unsupported_manifold,
  non_unit_speed,
  non_monotone,
  too_few_samples,
  geodesic_frame_undefined,
  inadmissible_alpha,
  integration_failure,
  domain_exit,
  non_unit_vector,
  non_monotone_alpha,
  invalid_config,
  io_error,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the toolkit carries one of the ErrorKind tags so
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Cartan-Vranceanu parameters. (m, l) = (0, 1) is the Heisenberg group.
struct ManifoldParams {
  double m = 0.0;
  double l = 1.0;

  static constexpr ManifoldParams heisenberg() { return {0.0, 1.0}; }

  bool is_heisenberg() const { return m == 0.0 && l == 1.0; }
  /// l^2 - 4m; the coefficient of the B3 terms in the biharmonic system.
  double twist_defect() const { return l * l - 4.0 * m; }
  /// True when the metric has constant sectional curvature l^2/4.
  bool degenerate() const { return twist_defect() == 0.0; }

  friend bool operator==(const ManifoldParams&, const ManifoldParams&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 vec() const { return {x, y, z}; }
  static Point from(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

  friend bool operator==(const Point&, const Point&) = default;
};

/// Components in the coordinate basis (d/dx, d/dy, d/dz).
struct TangentVector {
  Point base;
  Vec3 components = Vec3::Zero();
};

/// Components in the left-invariant orthonormal frame (e1, e2, e3).
struct FrameVector {
  Point base;
  Vec3 components = Vec3::Zero();

  /// The frame is orthonormal, so the metric norm is the Euclidean norm of the components.
  double norm() const { return components.norm(); }
};

struct MetricTensor {
  Point base;
  Mat3 g = Mat3::Identity();
};

/// Frame components of nabla_{e_a} e_b, indexed [a][b] (0-based).
using ConnectionTable = std::array<std::array<Vec3, 3>, 3>;
/// Frame components of R(e_a, e_b) e_c, indexed [a][b][c] (0-based).
using CurvatureTable = std::array<std::array<std::array<Vec3, 3>, 3>, 3>;
/// Coordinate Christoffel symbols Gamma^k_ij indexed [k](i, j).
using ChristoffelTable = std::array<Mat3, 3>;

}  // namespace bihelix
