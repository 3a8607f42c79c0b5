#pragma once

// Curves, arclength samples, covariant differentiation along curves and the
// Frenet apparatus.
//
// Torsion sign: the Frenet system used throughout is
//
//   nabla_T T =  k N
//   nabla_T N = -k T - tau B
//   nabla_T B =  tau N
//
// i.e. tau = -<nabla_T N, B>. This is the opposite of the common textbook
// sign; every biharmonicity system in this library is written for it.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bihelix/geometry.hpp"
#include "bihelix/ode.hpp"

namespace bihelix {

enum class CurveKind { closed_form, ode_defined, sampled };

/// Position and velocity (frame components) at one parameter value.
struct CurveState {
  Point point;
  Vec3 velocity = Vec3::Zero();
};

struct ClosedFormCurve {
  std::function<Point(double)> position;
  std::function<Vec3(double)> coordinate_velocity;
};

struct OdeCurve {
  OdeState initial_state;  ///< state at s0
  OdeRhs rhs;
  std::function<CurveState(double, const OdeState&)> readout;
};

struct SampledCurve {
  std::vector<double> s;
  std::vector<Point> points;
  std::vector<Vec3> velocities;  ///< frame components; empty means "differentiate the points"
};

struct CurveSpec {
  ManifoldParams manifold;
  double s0 = 0.0;
  double s1 = 1.0;
  std::string family;
  std::map<std::string, double> parameters;  ///< descriptive, echoed into reports
  std::variant<ClosedFormCurve, OdeCurve, SampledCurve> data;

  CurveKind kind() const { return static_cast<CurveKind>(data.index()); }
};

struct CurveSample {
  double s = 0.0;
  Point point;
  Vec3 velocity = Vec3::Zero();  ///< frame components, unit length by contract
};

/// A vector series along a trajectory. The first and last `margin` entries
/// were produced with one-sided stencils (possibly nested) and are excluded
/// from pass/fail statistics.
struct FieldSeries {
  std::vector<Vec3> values;
  std::size_t margin = 0;

  std::size_t interior_begin() const { return margin; }
  std::size_t interior_end() const { return values.size() > margin ? values.size() - margin : 0; }
  /// max |v| over the interior.
  double interior_max_norm() const;
};

/// Uniformly spaced arclength samples of one curve.
struct Trajectory {
  ManifoldParams manifold;
  std::vector<CurveSample> samples;
  double ds = 0.0;
  /// Leading/trailing samples whose velocity came from one-sided stencils
  /// (sampled input without velocity columns); 0 otherwise.
  std::size_t margin = 0;

  std::size_t size() const { return samples.size(); }
  std::vector<Point> points() const;
  std::vector<Vec3> velocities() const;
  /// The velocities as a field carrying the trajectory margin.
  FieldSeries tangent() const;
};


CurveSpec closed_form_curve(const ManifoldParams& params, std::function<Point(double)> position,
                            std::function<Vec3(double)> coordinate_velocity, double s0, double s1,
                            std::string family = "closed_form");

/// Builds a sampled curve; rejects non-increasing or non-uniform s (NonMonotone, with row numbers).
CurveSpec sampled_curve(const ManifoldParams& params, std::vector<double> s, std::vector<Point> points,
                        std::vector<Vec3> velocities, const NumericsConfig& cfg = {});

/// n uniformly spaced samples over [s0, s1] (n >= 9). Sampled curves return
/// their stored samples and ignore n; without velocity columns the velocity
/// is differentiated from the points and the end samples form the margin.
/// NonUnitSpeed if any |velocity| - 1 outside the margin exceeds
/// cfg.unit_speed_tol.
Trajectory sample_curve(const CurveSpec& spec, std::size_t n, const NumericsConfig& cfg = {});

/// L_g o curve on H3 (UnsupportedManifold elsewhere).
CurveSpec left_translate_curve(const Point& g, const CurveSpec& curve);
Trajectory left_translate_trajectory(const Point& g, const Trajectory& traj);

/// nabla_T V along the trajectory: s-derivative of the frame components plus
/// the connection contracted with T and V. The result's margin is the input
/// margin plus one stencil half width. TooFewSamples for short series.
FieldSeries covariant_derivative_along(const Trajectory& traj, const FieldSeries& field,
                                       const NumericsConfig& cfg = {});
FieldSeries covariant_derivative_along(const Trajectory& traj, std::span<const Vec3> field,
                                       const NumericsConfig& cfg = {});

Vec3 frame_cross(const Vec3& X, const Vec3& Y);
/// Cross product in the oriented frame (e1, e2, e3); BasePointMismatch if bases differ.
FrameVector frame_cross(const FrameVector& X, const FrameVector& Y);

struct FrenetData {
  double s = 0.0;
  Vec3 T = Vec3::Zero();
  std::optional<Vec3> N;
  std::optional<Vec3> B;
  double k = 0.0;
  std::optional<double> tau;
  double T3 = 0.0;
  std::optional<double> N3;
  std::optional<double> B3;
};

struct FrenetSeries {
  ManifoldParams manifold;
  double ds = 0.0;
  std::vector<FrenetData> data;
  std::size_t k_margin = 0;    ///< margin of k, N, B
  std::size_t tau_margin = 0;  ///< margin of tau

  /// True when N, B, tau exist at every sample.
  bool frame_defined() const;
  /// Throws GeodesicFrameUndefined unless frame_defined().
  void require_frame() const;
};

/// Frenet frame, k, tau and third frame components at every sample. Where
/// k <= cfg.k_floor the frame is absent (not zero), and tau is absent wherever
/// its stencil touches such a sample. Unit-speed samples are required.
FrenetSeries frenet_apparatus(const Trajectory& traj, const NumericsConfig& cfg = {});

}  // namespace bihelix
