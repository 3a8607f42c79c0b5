#pragma once

// Tension and bitension fields along curves and the biharmonicity systems
// for H3 and the Cartan-Vranceanu family.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bihelix/curve.hpp"

namespace bihelix {

/// tau1 = nabla_T T.
FieldSeries tension1(const Trajectory& traj, const NumericsConfig& cfg = {});

/// tau2 = nabla_T^3 T + R(T, nabla_T T) T, using nabla_T T in place of kN so
/// it is defined on geodesics as well.
FieldSeries tension2_direct(const Trajectory& traj, const NumericsConfig& cfg = {});

/// Frame coefficients (cT, cN, cB) of tau2:
///   cT = -3 k' k
///   cN = k'' - k^3 - k tau^2 + k l^2/4 - k (l^2 - 4m) B3^2
///   cB = -2 k' tau - k tau' + k (l^2 - 4m) N3 B3
/// with k', k'', tau' differentiated from the measured series.
struct ExpansionSeries {
  std::vector<Vec3> coefficients;
  std::size_t margin = 0;
};

/// GeodesicFrameUndefined unless the Frenet frame exists at every sample.
ExpansionSeries tension2_frame(const FrenetSeries& frenet, const NumericsConfig& cfg = {});

/// cT T + cN N + cB B at every sample.
std::vector<Vec3> expansion_vectors(const FrenetSeries& frenet, const ExpansionSeries& expansion);

struct BitensionReport {
  FieldSeries tau1;
  FieldSeries tau2;
  std::optional<ExpansionSeries> expansion;  ///< absent on (partial) geodesics
  std::vector<double> residual;              ///< |tau2| per sample
  std::vector<double> expansion_mismatch;    ///< |tau2 - (cT T + cN N + cB B)|, empty when no expansion
  std::size_t margin = 0;
  double max_residual = 0.0;   ///< interior
  double mean_residual = 0.0;  ///< interior
  double max_mismatch = 0.0;   ///< interior; 0 when no expansion
};

BitensionReport bitension_report(const Trajectory& traj, const NumericsConfig& cfg = {});
BitensionReport bitension_report(const Trajectory& traj, const FrenetSeries& frenet, const NumericsConfig& cfg = {});

struct SystemCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// The H3 system: k constant and nonzero, k^2 + tau^2 = 1/4 - B3^2, tau' = N3 B3.
std::vector<SystemCheck> check_system_h3(const FrenetSeries& frenet, const NumericsConfig& cfg = {});

/// The Cartan-Vranceanu system: k constant and nonzero,
/// k^2 + tau^2 = l^2/4 - (l^2-4m) B3^2, tau' = (l^2-4m) N3 B3.
std::vector<SystemCheck> check_system_cv(const FrenetSeries& frenet, const ManifoldParams& params,
                                           const NumericsConfig& cfg = {});

/// Biharmonic-helix conditions (B3 constant and nonzero, N3 = 0, the
/// algebraic relation) followed by the characterization with tau constant
/// and N3 B3 = 0. H3 only.
std::vector<SystemCheck> check_helix_system(const FrenetSeries& frenet, const NumericsConfig& cfg = {});

enum class Verdict { geodesic, nongeodesic_biharmonic, helix_not_biharmonic, not_biharmonic };

const char* to_string(Verdict v);

struct ClassificationResult {
  Verdict verdict = Verdict::not_biharmonic;
  std::vector<SystemCheck> checks;
  double twist_defect = 0.0;  ///< l^2 - 4m, exact
  double tension1_max = 0.0;
  double tension2_max = 0.0;
  std::optional<double> k_mean;
  std::optional<double> tau_mean;
  std::optional<double> B3_mean;

  bool is_biharmonic() const { return verdict == Verdict::geodesic || verdict == Verdict::nongeodesic_biharmonic; }
  const SystemCheck* find(const std::string& name) const;
};

/// Full analysis: geodesic if max interior |tau1| <= cfg.geodesic_tol;
/// nongeodesic_biharmonic if |tau2| <= cfg.residual_tol and the
/// (Cartan-Vranceanu) system holds; helix_not_biharmonic for helices with
/// constant nonzero B3 failing the system; not_biharmonic otherwise.
ClassificationResult classify(const Trajectory& traj, const NumericsConfig& cfg = {});

/// Classifies many curves; the loop over curves runs in parallel, results in input order.
std::vector<ClassificationResult> classify_batch(std::span<const Trajectory> curves, const NumericsConfig& cfg = {});

enum class ConeVerdict { geodesic_only, biharmonic_direction };

const char* to_string(ConeVerdict v);

/// Whether a unit tangent vector at any point of H3 is tangent to a
/// non-geodesic biharmonic curve: 5 cos^2(a0) - 4 >= 0 and sin(a0) != 0
/// with cos(a0) = <X, e3>. NonUnitVector if |X| != 1.
ConeVerdict cone_membership(const ManifoldParams& params, const FrameVector& X);

/// theta^3(T) with theta^3 = dz + (l/2)(y dx - x dy)/F, i.e. dz - (x dy - y dx)/2 on H3.
std::vector<double> legendre_pairing(const Trajectory& traj);

}  // namespace bihelix
