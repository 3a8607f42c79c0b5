#include "bihelix/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace bihelix::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(const std::string& field, std::size_t row, const char* column) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw Error(ErrorKind::io_error,
                "row " + std::to_string(row) + ": column " + column + ": '" + field + "' is not a finite number");
  }
  return v;
}

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

template <class T>
json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Vec3>) {
    return vec(*v);
  } else {
    return *v;
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_config, std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_curve_csv(std::ostream& out, const Trajectory& traj, bool with_velocity) {
  out << (with_velocity ? "s,x,y,z,vx,vy,vz\n" : "s,x,y,z\n");
  for (const auto& smp : traj.samples) {
    out << format_double(smp.s) << ',' << format_double(smp.point.x) << ',' << format_double(smp.point.y) << ','
        << format_double(smp.point.z);
    if (with_velocity) {
      for (int i = 0; i < 3; ++i) out << ',' << format_double(smp.velocity[i]);
    }
    out << '\n';
  }
}

CurveSpec read_curve_csv(std::istream& in, const ManifoldParams& params, const NumericsConfig& cfg) {
  static const char* names[] = {"s", "x", "y", "z", "vx", "vy", "vz"};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::io_error, "empty sample file");
  const std::vector<std::string> header = split(line);
  const std::size_t cols = header.size();
  bool ok = cols == 4 || cols == 7;
  for (std::size_t i = 0; ok && i < cols; ++i) ok = header[i] == names[i];
  if (!ok) throw Error(ErrorKind::io_error, "row 1: header must be s,x,y,z or s,x,y,z,vx,vy,vz, got '" + trim(line) + "'");

  std::vector<double> s;
  std::vector<Point> points;
  std::vector<Vec3> velocities;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split(line);
    if (fields.size() != cols) {
      throw Error(ErrorKind::io_error, "row " + std::to_string(row) + ": expected " + std::to_string(cols) +
                                           " columns, got " + std::to_string(fields.size()));
    }
    double v[7];
    for (std::size_t i = 0; i < cols; ++i) v[i] = parse_number(fields[i], row, names[i]);
    s.push_back(v[0]);
    points.push_back({v[1], v[2], v[3]});
    if (cols == 7) velocities.emplace_back(v[4], v[5], v[6]);
  }
  return sampled_curve(params, std::move(s), std::move(points), std::move(velocities), cfg);
}

CurveSpec read_curve_csv(const std::filesystem::path& path, const ManifoldParams& params, const NumericsConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot open '" + path.string() + "'");
  return read_curve_csv(in, params, cfg);
}

void write_residual_csv(std::ostream& out, const Trajectory& traj, const BitensionReport& report) {
  const std::string nan = "nan";
  out << "s,cT,cN,cB,residual\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_double(traj.samples[i].s);
    if (report.expansion) {
      const Vec3& c = report.expansion->coefficients[i];
      out << ',' << format_double(c[0]) << ',' << format_double(c[1]) << ',' << format_double(c[2]);
    } else {
      out << ',' << nan << ',' << nan << ',' << nan;
    }
    out << ',' << format_double(report.residual[i]) << '\n';
  }
}

void write_surface_csv(std::ostream& out, const SurfacePatch& patch, double u0, double u1, std::size_t nu, double v0,
                       double v1, std::size_t nv) {
  if (nu < 2 || nv < 2) throw Error(ErrorKind::invalid_config, "surface grid needs at least 2 x 2 points");
  out << "u,v,x,y,z\n";
  for (std::size_t i = 0; i < nu; ++i) {
    const double u = u0 + (u1 - u0) * static_cast<double>(i) / static_cast<double>(nu - 1);
    for (std::size_t j = 0; j < nv; ++j) {
      const double v = v0 + (v1 - v0) * static_cast<double>(j) / static_cast<double>(nv - 1);
      const Point p = surface_eval(patch, u, v);
      out << format_double(u) << ',' << format_double(v) << ',' << format_double(p.x) << ',' << format_double(p.y)
          << ',' << format_double(p.z) << '\n';
    }
  }
}

json to_json(const ManifoldParams& params) { return {{"m", params.m}, {"l", params.l}}; }

json to_json(const FrenetSeries& frenet) {
  json samples = json::array();
  for (const auto& f : frenet.data) {
    samples.push_back({{"s", f.s},
                       {"T", vec(f.T)},
                       {"N", opt(f.N)},
                       {"B", opt(f.B)},
                       {"k", f.k},
                       {"tau", opt(f.tau)},
                       {"T3", f.T3},
                       {"N3", opt(f.N3)},
                       {"B3", opt(f.B3)}});
  }
  return {{"manifold", to_json(frenet.manifold)},
          {"ds", frenet.ds},
          {"k_margin", frenet.k_margin},
          {"tau_margin", frenet.tau_margin},
          {"samples", std::move(samples)}};
}

json to_json(const BitensionReport& report) {
  return {{"samples", report.residual.size()},
          {"margin", report.margin},
          {"tension1_max", report.tau1.interior_max_norm()},
          {"max_residual", report.max_residual},
          {"mean_residual", report.mean_residual},
          {"frame_expansion", report.expansion.has_value()},
          {"max_expansion_mismatch", report.max_mismatch}};
}

json to_json(const ClassificationResult& result) {
  json checks = json::array();
  for (const auto& c : result.checks) {
    checks.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  }
  return {{"verdict", to_string(result.verdict)},
          {"biharmonic", result.is_biharmonic()},
          {"twist_defect", result.twist_defect},
          {"tension1_max", result.tension1_max},
          {"tension2_max", result.tension2_max},
          {"k_mean", opt(result.k_mean)},
          {"tau_mean", opt(result.tau_mean)},
          {"B3_mean", opt(result.B3_mean)},
          {"checks", std::move(checks)}};
}

json to_json(const HelixInvariants& inv) {
  return {{"A", inv.A}, {"k", inv.k}, {"tau", inv.tau}, {"B3", inv.B3}};
}

CurveParams curve_params_from_json(const json& j, CurveParams p) {
  if (!j.is_object()) throw Error(ErrorKind::invalid_config, "parameter file must hold a JSON object");
  if (j.contains("manifold")) {
    const json& m = j.at("manifold");
    if (!m.is_object()) throw Error(ErrorKind::invalid_config, "'manifold' must be an object {m, l}");
    p.manifold.m = get_or(m, "m", p.manifold.m);
    p.manifold.l = get_or(m, "l", p.manifold.l);
  }
  p.family = get_or(j, "family", p.family);
  p.helix.alpha0 = get_or(j, "alpha0", p.helix.alpha0);
  p.helix.a = get_or(j, "a", p.helix.a);
  p.helix.b = get_or(j, "b", p.helix.b);
  p.helix.c = get_or(j, "c", p.helix.c);
  p.helix.d = get_or(j, "d", p.helix.d);
  if (j.contains("branch")) p.helix.branch = parse_branch(get_or<std::string>(j, "branch", "plus"));
  if (j.contains("s_range")) {
    const auto r = get_or<std::vector<double>>(j, "s_range", {});
    if (r.size() != 2) throw Error(ErrorKind::invalid_config, "'s_range' must be [s0, s1]");
    p.s0 = r[0];
    p.s1 = r[1];
  }
  p.samples = get_or(j, "samples", p.samples);
  return p;
}

json to_json(const CurveParams& p) {
  return {{"manifold", to_json(p.manifold)}, {"family", p.family},   {"alpha0", p.helix.alpha0},
          {"a", p.helix.a},                 {"b", p.helix.b},       {"c", p.helix.c},
          {"d", p.helix.d},                 {"branch", to_string(p.helix.branch)},
          {"s_range", {p.s0, p.s1}},        {"samples", p.samples}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::invalid_config, "'" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io_error, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::io_error, "write to '" + path.string() + "' failed");
}

}  // namespace bihelix::io
