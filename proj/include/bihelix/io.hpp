#pragma once

// File formats: curve samples as CSV (header s,x,y,z with optional frame
// velocity columns vx,vy,vz), reports as JSON, residual series as CSV.
// Floating point is written with 17 significant digits.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bihelix/biharmonic.hpp"
#include "bihelix/factory.hpp"

namespace bihelix::io {

using nlohmann::json;

/// "%.17g"; "nan" for NaN.
std::string format_double(double v);

void write_curve_csv(std::ostream& out, const Trajectory& traj, bool with_velocity = false);

/// Parses a sample CSV into a sampled curve. Errors carry 1-based file row
/// numbers (the header is row 1): IoError for malformed rows, NonMonotone for
/// bad spacing.
CurveSpec read_curve_csv(std::istream& in, const ManifoldParams& params, const NumericsConfig& cfg = {});
CurveSpec read_curve_csv(const std::filesystem::path& path, const ManifoldParams& params,
                         const NumericsConfig& cfg = {});

/// s,cT,cN,cB,residual; nan where the frame expansion is undefined.
void write_residual_csv(std::ostream& out, const Trajectory& traj, const BitensionReport& report);

/// u,v,x,y,z over an nu x nv grid of [u0,u1] x [v0,v1].
void write_surface_csv(std::ostream& out, const SurfacePatch& patch, double u0, double u1, std::size_t nu, double v0,
                       double v1, std::size_t nv);

json to_json(const ManifoldParams& params);
json to_json(const FrenetSeries& frenet);
/// Summary statistics only; series go to the residual CSV.
json to_json(const BitensionReport& report);
json to_json(const ClassificationResult& result);
json to_json(const HelixInvariants& inv);

/// Parameter file: {manifold: {m, l}, family, alpha0, a, b, c, d, branch, s_range: [s0, s1], samples}.
struct CurveParams {
  ManifoldParams manifold = ManifoldParams::heisenberg();
  std::string family = "biharmonic_helix";
  HelixParams helix;
  double s0 = 0.0;
  double s1 = 10.0 * 3.14159265358979323846;
  std::size_t samples = 2001;
};

/// Missing keys keep their defaults; InvalidConfig on type errors.
CurveParams curve_params_from_json(const json& j, CurveParams base = {});
json to_json(const CurveParams& p);

json read_json_file(const std::filesystem::path& path);
/// Writes text exactly as given (no locale, no trailing changes).
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bihelix::io
