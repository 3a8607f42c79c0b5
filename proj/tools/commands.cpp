#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "bihelix/biharmonic.hpp"
#include "bihelix/factory.hpp"
#include "bihelix/io.hpp"

namespace bihelix::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

// JSON config files. The "manifold" and "numerics" objects are flattened
// and underscores in keys map to dashes, so {"manifold": {"m": 1},
// "s_range": [0, 5]} sets --m and --s-range of the selected subcommand.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ParseError(std::string("config file: ") + e.what(), CLI::ExitCodes::ConfigError);
    }
    if (!j.is_object()) throw CLI::ParseError("config file must hold a JSON object", CLI::ExitCodes::ConfigError);
    std::vector<CLI::ConfigItem> items;
    flatten(j, items);
    return items;
  }

 private:
  std::string subcommand_;

  void flatten(const json& obj, std::vector<CLI::ConfigItem>& items) const {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        if (key == "manifold" || key == "numerics") flatten(value, items);
        continue;
      }
      if (value.is_null()) continue;
      CLI::ConfigItem item;
      if (!subcommand_.empty()) item.parents = {subcommand_};
      item.name = key;
      std::replace(item.name.begin(), item.name.end(), '_', '-');
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }

  static std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }
};

struct RunConfig {
  ManifoldParams manifold = ManifoldParams::heisenberg();
  NumericsConfig numerics;
  std::string format = "text";
  std::string output;
  bool deg = false;
};

struct Options {
  RunConfig run;
  std::vector<double> point{0.0, 0.0, 0.0};
  std::vector<double> direction;
  bool normalize = false;

  // curve parameters
  std::string family = "biharmonic_helix";
  std::optional<double> alpha0;
  std::optional<double> alpha0_deg;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  std::string branch = "plus";
  double perturb_A = 0.0;
  double alpha_start = 0.5;
  double alpha_rate = 0.3;
  double radius = 1.0;
  std::vector<double> s_range;
  std::size_t samples = 0;

  // generate
  std::string output_dir = ".";
  std::string prefix;
  bool with_velocity = false;
  bool surfaces = false;
  std::vector<std::size_t> surface_grid{201, 21};

  // verify
  std::string input;
  std::string residual_csv;

  // cone / scan
  std::size_t sweep = 0;
  std::optional<double> alpha0_min;
  std::optional<double> alpha0_max;
  std::size_t points = 50;
};

// Human-readable number; full precision lives in the CSV/JSON files.
std::string num(double v, int digits = 12) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v + 0.0);
  return buf;
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

Vec3 vec3(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) throw Error(ErrorKind::invalid_config, std::string(what) + " needs three components");
  return {v[0], v[1], v[2]};
}

Vec3 direction_of(const Options& o) {
  Vec3 v = vec3(o.direction, "--direction");
  if (o.normalize) {
    if (v.norm() == 0.0) throw Error(ErrorKind::non_unit_vector, "cannot normalize the zero vector");
    v.normalize();
  }
  return v;
}

double to_radians(double v, bool deg) { return deg ? v * std::numbers::pi / 180.0 : v; }

double alpha0_of(const Options& o) {
  if (o.alpha0 && o.alpha0_deg) throw Error(ErrorKind::invalid_config, "give either --alpha0 or --alpha0-deg");
  if (o.alpha0_deg) return to_radians(*o.alpha0_deg, true);
  if (o.alpha0) return to_radians(*o.alpha0, o.run.deg);
  throw Error(ErrorKind::invalid_config, "--alpha0 (or --alpha0-deg) is required");
}

std::pair<double, double> s_range_of(const Options& o, double s0, double s1) {
  if (o.s_range.empty()) return {s0, s1};
  if (o.s_range.size() != 2) throw Error(ErrorKind::invalid_config, "--s-range needs s0,s1");
  return {o.s_range[0], o.s_range[1]};
}

// Writes to --output when given, otherwise to out.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.run.output.empty()) {
    out << text;
  } else {
    io::write_text_file(o.run.output, text);
  }
}

void add_common(CLI::App* sub, Options& o) {
  sub->fallthrough();
  auto& n = o.run.numerics;
  sub->add_option("--m", o.run.manifold.m, "Cartan-Vranceanu parameter m (0 for H3)");
  sub->add_option("--l", o.run.manifold.l, "Cartan-Vranceanu parameter l (1 for H3)");
  sub->add_option("--format", o.run.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("-o,--output", o.run.output, "output file (default stdout)");
  sub->add_flag("--deg", o.run.deg, "angles are given in degrees");

  const std::map<std::string, ConnectionRoute> routes{{"closed_form", ConnectionRoute::closed_form},
                                                      {"finite_difference", ConnectionRoute::finite_difference}};
  const std::map<std::string, StencilOrder> stencils{{"2", StencilOrder::second}, {"4", StencilOrder::fourth}};
  const std::map<std::string, OdeMethod> methods{{"dopri5", OdeMethod::adaptive_dopri5},
                                                 {"rk4", OdeMethod::fixed_rk4}};
  const std::map<std::string, Execution> executions{{"serial", Execution::serial},
                                                    {"parallel", Execution::parallel}};
  sub->add_option("--route", n.route, "connection route")->transform(CLI::CheckedTransformer(routes));
  sub->add_option("--stencil", n.stencil, "finite-difference order along curves")
      ->transform(CLI::CheckedTransformer(stencils));
  sub->add_option("--ode-method", n.ode_method, "ODE integrator")->transform(CLI::CheckedTransformer(methods));
  sub->add_option("--execution", n.execution, "kernel execution")->transform(CLI::CheckedTransformer(executions));
  sub->add_option("--fd-step", n.fd_step, "step of the metric and frame derivatives");
  sub->add_option("--curvature-fd-step", n.curvature_fd_step, "step of the connection derivatives");
  sub->add_option("--spacing-tol", n.spacing_tol, "uniform spacing tolerance for sample files");
  sub->add_option("--unit-speed-tol", n.unit_speed_tol, "allowed | |v| - 1 |");
  sub->add_option("--frame-tol", n.frame_tol, "Frenet frame orthonormality tolerance");
  sub->add_option("--residual-tol", n.residual_tol, "tension2 and system residual tolerance");
  sub->add_option("--geodesic-tol", n.geodesic_tol, "tension1 threshold for the geodesic verdict");
  sub->add_option("--expansion-tol", n.expansion_tol, "direct vs frame-expansion tension2 tolerance");
  sub->add_option("--k-floor", n.k_floor, "curvature below which the Frenet frame is undefined");
  sub->add_option("--ode-atol", n.ode_atol, "adaptive integrator absolute tolerance");
  sub->add_option("--ode-rtol", n.ode_rtol, "adaptive integrator relative tolerance");
  sub->add_option("--ode-fixed-step", n.ode_fixed_step, "rk4 step");
}

void add_helix_options(CLI::App* sub, Options& o) {
  sub->add_option("--alpha0", o.alpha0, "angle between T and e3 (radians unless --deg)");
  sub->add_option("--alpha0-deg", o.alpha0_deg, "angle between T and e3 in degrees");
  sub->add_option("--a", o.a, "helix phase");
  sub->add_option("--b", o.b, "helix x offset");
  sub->add_option("--c", o.c, "helix y offset");
  sub->add_option("--d", o.d, "helix z offset");
  sub->add_option("--branch", o.branch, "root of the frequency quadratic")->check(CLI::IsMember({"plus", "minus"}));
}

// ---------------------------------------------------------------- tensors

struct Reference {
  ConnectionTable connection{};
  std::map<std::string, double> riemann;
  Mat3 ricci = Mat3::Zero();
  std::map<std::string, double> sectional;
};

Reference heisenberg_reference() {
  Reference r;
  for (auto& row : r.connection)
    for (auto& v : row) v.setZero();
  r.connection[0][1] = {0.0, 0.0, 0.5};
  r.connection[0][2] = {0.0, -0.5, 0.0};
  r.connection[1][0] = {0.0, 0.0, -0.5};
  r.connection[1][2] = {0.5, 0.0, 0.0};
  r.connection[2][0] = {0.0, -0.5, 0.0};
  r.connection[2][1] = {0.5, 0.0, 0.0};
  r.riemann = {{"R_1212", -0.75}, {"R_1213", 0.0}, {"R_1223", 0.0},
               {"R_1313", 0.25},  {"R_1323", 0.0}, {"R_2323", 0.25}};
  r.ricci.diagonal() << -0.5, -0.5, 0.5;
  r.sectional = {{"K_12", -0.75}, {"K_13", 0.25}, {"K_23", 0.25}};
  return r;
}

int cmd_tensors(const Options& o, std::ostream& out) {
  const ManifoldParams& params = o.run.manifold;
  const NumericsConfig& cfg = o.run.numerics;
  cfg.validate();
  const Point p = Point::from(vec3(o.point, "--point"));
  const ConnectionTable w = connection_table(params, p, cfg);

  static const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
  std::map<std::string, double> riemann;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const auto [a, b] = pairs[i];
      const auto [c, d] = pairs[j];
      const std::string name = "R_" + std::to_string(a) + std::to_string(b) + std::to_string(c) + std::to_string(d);
      riemann[name] = riemann_component(params, p, a, b, c, d, cfg);
    }
  }
  Mat3 ricci;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) ricci(a - 1, b - 1) = ricci_component(params, p, a, b, cfg);
  std::map<std::string, double> sect;
  for (const auto& [a, b] : pairs) {
    sect["K_" + std::to_string(a) + std::to_string(b)] =
        sectional(params, FrameVector{p, Vec3::Unit(a - 1)}, FrameVector{p, Vec3::Unit(b - 1)}, cfg);
  }

  const bool annotate = params.is_heisenberg();
  const Reference ref = heisenberg_reference();
  const double tol = cfg.route == ConnectionRoute::closed_form ? 1e-12 : 1e-8;
  bool all_match = true;
  auto verdict = [&](double diff) {
    const bool ok = diff <= tol;
    all_match = all_match && ok;
    return ok;
  };
  const char* route = cfg.route == ConnectionRoute::closed_form ? "closed_form" : "finite_difference";

  if (o.run.format == "json") {
    json j;
    j["manifold"] = io::to_json(params);
    j["point"] = {p.x, p.y, p.z};
    j["route"] = route;
    json conn = json::array();
    for (int a = 0; a < 3; ++a) {
      json row = json::array();
      for (int b = 0; b < 3; ++b) row.push_back({w[a][b][0], w[a][b][1], w[a][b][2]});
      conn.push_back(row);
    }
    j["connection"] = conn;
    j["riemann"] = riemann;
    j["ricci"] = {{ricci(0, 0), ricci(0, 1), ricci(0, 2)},
                  {ricci(1, 0), ricci(1, 1), ricci(1, 2)},
                  {ricci(2, 0), ricci(2, 1), ricci(2, 2)}};
    j["sectional"] = sect;
    if (annotate) {
      double worst = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) worst = std::max(worst, (w[a][b] - ref.connection[a][b]).cwiseAbs().maxCoeff());
      for (const auto& [k, v] : riemann) worst = std::max(worst, std::abs(v - ref.riemann.at(k)));
      worst = std::max(worst, (ricci - ref.ricci).cwiseAbs().maxCoeff());
      for (const auto& [k, v] : sect) worst = std::max(worst, std::abs(v - ref.sectional.at(k)));
      j["reference_max_diff"] = worst;
      j["reference_tolerance"] = tol;
      j["match"] = verdict(worst);
    }
    emit(o, out, j.dump(2) + "\n");
    return all_match ? 0 : 1;
  }

  std::ostringstream s;
  s << "tensors at (" << num(p.x) << ", " << num(p.y) << ", " << num(p.z) << ") for m = " << num(params.m)
    << ", l = " << num(params.l) << " (route " << route << ")\n";
  if (annotate) s << "reference: Heisenberg values, tolerance " << sci(tol) << "\n";
  auto cell = [&](const std::string& text, std::size_t width) { return annotate ? pad(text, width) : text; };
  auto tag = [&](double diff) {
    return annotate ? std::string("  diff ") + sci(diff) + (verdict(diff) ? "  MATCH" : "  MISMATCH") : std::string();
  };

  s << "\nconnection nabla_{e_a} e_b (frame components)\n";
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const Vec3& v = w[a][b];
      s << "  nabla_e" << a + 1 << " e" << b + 1 << " = (" << pad(num(v[0]) + ",", 20) << pad(num(v[1]) + ",", 20)
        << cell(num(v[2]) + ")", 20) << tag((v - ref.connection[a][b]).cwiseAbs().maxCoeff()) << "\n";
    }
  }
  s << "\nriemann R_abcd = <R(e_a,e_b)e_c, e_d>\n";
  for (const auto& [k, v] : riemann) s << "  " << k << " = " << cell(num(v), 22) << tag(std::abs(v - ref.riemann.at(k))) << "\n";
  s << "\nricci rho_ab\n";
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      s << "  rho_" << a + 1 << b + 1 << " = " << cell(num(ricci(a, b)), 22)
        << tag(std::abs(ricci(a, b) - ref.ricci(a, b))) << "\n";
    }
  }
  s << "\nsectional curvature of frame planes\n";
  for (const auto& [k, v] : sect) s << "  " << k << " = " << cell(num(v), 22) << tag(std::abs(v - ref.sectional.at(k))) << "\n";
  if (annotate) s << "\n" << (all_match ? "all entries MATCH" : "some entries MISMATCH") << "\n";
  emit(o, out, s.str());
  return all_match ? 0 : 1;
}

// ---------------------------------------------------------------- generate

std::string write_to_string(const std::function<void(std::ostream&)>& fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

int cmd_generate(const Options& o, std::ostream& out) {
  const NumericsConfig& cfg = o.run.numerics;
  const ManifoldParams& params = o.run.manifold;
  require_heisenberg(params, "generate");

  const auto [s0, s1] = s_range_of(o, 0.0, 10.0 * std::numbers::pi);
  const std::size_t n = o.samples ? o.samples : 2001;
  json parameters = {{"family", o.family}, {"manifold", io::to_json(params)}, {"s_range", {s0, s1}}, {"samples", n}};

  CurveSpec spec;
  std::optional<HelixParams> helix;
  std::optional<HelixInvariants> invariants;
  std::optional<HelixShape> shape;
  if (o.family == "biharmonic_helix") {
    helix = HelixParams{alpha0_of(o), o.a, o.b, o.c, o.d, parse_branch(o.branch)};
    shape = shape_of(*helix);
    shape->A += o.perturb_A;
    spec = helix_shape_curve(*shape, s0, s1);
    invariants = shape_invariants(*shape);
    parameters.update({{"alpha0", helix->alpha0}, {"a", o.a}, {"b", o.b}, {"c", o.c}, {"d", o.d},
                       {"branch", o.branch}, {"A", shape->A}});
    if (o.perturb_A != 0.0) parameters["perturb_A"] = o.perturb_A;
  } else if (o.family == "b3zero") {
    const double start = o.alpha_start, rate = o.alpha_rate;
    spec = b3zero_curve([start, rate](double s) { return start + rate * s; }, s0, s1);
    parameters.update({{"alpha_start", start}, {"alpha_rate", rate}});
  } else if (o.family == "subgroup") {
    const Vec3 X = direction_of(o);
    spec = one_param_subgroup(X, s0, s1, params);
    parameters["direction"] = {X.x(), X.y(), X.z()};
  } else if (o.family == "circle") {
    spec = horizontal_circle(o.radius, s0, s1);
    parameters["radius"] = o.radius;
  } else {
    throw Error(ErrorKind::invalid_config, "unknown family '" + o.family +
                                               "' (biharmonic_helix, b3zero, subgroup, circle)");
  }

  const Trajectory traj = sample_curve(spec, n, cfg);
  const FrenetSeries frenet = frenet_apparatus(traj, cfg);
  const BitensionReport report = bitension_report(traj, frenet, cfg);
  const ClassificationResult result = classify(traj, cfg);

  const fs::path dir(o.output_dir);
  fs::create_directories(dir);
  const std::string prefix = o.prefix.empty() ? o.family : o.prefix;
  auto path = [&](const std::string& suffix) { return dir / (prefix + suffix); };
  std::vector<fs::path> written;
  auto write = [&](const fs::path& p, const std::string& text) {
    io::write_text_file(p, text);
    written.push_back(p);
  };

  write(path(".csv"), write_to_string([&](std::ostream& s) { io::write_curve_csv(s, traj, o.with_velocity); }));
  write(path("_frenet.json"), io::to_json(frenet).dump(1) + "\n");
  write(path("_residual.csv"), write_to_string([&](std::ostream& s) { io::write_residual_csv(s, traj, report); }));
  json rep = {{"parameters", parameters}, {"bitension", io::to_json(report)}, {"classification", io::to_json(result)}};
  if (invariants) rep["invariants"] = io::to_json(*invariants);
  write(path("_report.json"), rep.dump(2) + "\n");

  if (o.surfaces) {
    if (!shape) throw Error(ErrorKind::invalid_config, "--surfaces needs the biharmonic_helix family");
    if (o.surface_grid.size() != 2) throw Error(ErrorKind::invalid_config, "--surface-grid needs nu,nv");
    double zmin = traj.samples.front().point.z, zmax = zmin;
    for (const auto& smp : traj.samples) {
      zmin = std::min(zmin, smp.point.z);
      zmax = std::max(zmax, smp.point.z);
    }
    const std::size_t nu = o.surface_grid[0], nv = o.surface_grid[1];
    const SurfacePatch cylinder{SurfaceKind::cylinder, *shape};
    const SurfacePatch helicoid{SurfaceKind::helicoid, *shape};
    write(path("_cylinder.csv"),
          write_to_string([&](std::ostream& s) { io::write_surface_csv(s, cylinder, s0, s1, nu, zmin, zmax, nv); }));
    write(path("_helicoid.csv"),
          write_to_string([&](std::ostream& s) { io::write_surface_csv(s, helicoid, s0, s1, nu, 0.0, 2.0, nv); }));
  }

  for (const auto& p : written) out << "wrote " << p.string() << "\n";
  out << "samples: " << n << " over [" << num(s0) << ", " << num(s1) << "]\n";
  if (invariants) {
    out << "A = " << num(invariants->A) << ", k = " << num(invariants->k) << ", tau = " << num(invariants->tau)
        << ", B3 = " << num(invariants->B3) << "\n";
  }
  out << "max |tau1| (interior) = " << sci(report.tau1.interior_max_norm()) << "\n";
  out << "max |tau2| (interior) = " << sci(report.max_residual) << "\n";
  out << "verdict: " << to_string(result.verdict) << "\n";
  return 0;
}

// ---------------------------------------------------------------- verify

std::string classification_text(const ClassificationResult& r) {
  std::ostringstream s;
  s << "verdict: " << to_string(r.verdict) << "\n";
  s << "max |tau1| = " << sci(r.tension1_max) << "\n";
  s << "max |tau2| = " << sci(r.tension2_max) << "\n";
  s << "l^2 - 4m = " << num(r.twist_defect) << "\n";
  if (r.k_mean) s << "k = " << num(*r.k_mean, 10) << "\n";
  if (r.tau_mean) s << "tau = " << num(*r.tau_mean, 10) << "\n";
  if (r.B3_mean) s << "B3 = " << num(*r.B3_mean, 10) << "\n";
  s << "checks:\n";
  for (const auto& c : r.checks) {
    s << "  " << pad(c.name, 26) << " residual " << sci(c.residual) << "  tol " << sci(c.tolerance) << "  "
      << (c.passed ? "ok" : "no") << "\n";
  }
  return s.str();
}

int cmd_verify(const Options& o, std::ostream& out) {
  const NumericsConfig& cfg = o.run.numerics;
  if (o.input.empty()) throw Error(ErrorKind::invalid_config, "verify needs an input CSV file");
  const CurveSpec spec = io::read_curve_csv(fs::path(o.input), o.run.manifold, cfg);
  const Trajectory traj = sample_curve(spec, 0, cfg);
  const ClassificationResult result = classify(traj, cfg);
  if (!o.residual_csv.empty()) {
    const BitensionReport report = bitension_report(traj, cfg);
    io::write_text_file(o.residual_csv,
                        write_to_string([&](std::ostream& s) { io::write_residual_csv(s, traj, report); }));
  }
  if (o.run.format == "json") {
    emit(o, out, io::to_json(result).dump(2) + "\n");
  } else {
    emit(o, out, "input: " + o.input + " (" + std::to_string(traj.size()) + " samples)\n" + classification_text(result));
  }
  return result.is_biharmonic() ? 0 : 1;
}

// ---------------------------------------------------------------- geodesic

int cmd_geodesic(const Options& o, std::ostream& out) {
  const NumericsConfig& cfg = o.run.numerics;
  const auto [s0, s1] = s_range_of(o, 0.0, 100.0);
  const std::size_t n = o.samples ? o.samples : 10001;
  const Point p0 = Point::from(vec3(o.point, "--point"));
  const Vec3 v0 = direction_of(o);
  const CurveSpec spec = geodesic_ivp(o.run.manifold, p0, v0, s0, s1, cfg);
  const Trajectory traj = sample_curve(spec, n, cfg);
  const BitensionReport report = bitension_report(traj, cfg);
  double speed = 0.0;
  for (const auto& smp : traj.samples) speed = std::max(speed, std::abs(smp.velocity.norm() - 1.0));

  if (!o.run.output.empty()) {
    io::write_text_file(o.run.output,
                        write_to_string([&](std::ostream& s) { io::write_curve_csv(s, traj, o.with_velocity); }));
  }
  const Point& end = traj.samples.back().point;
  if (o.run.format == "json") {
    json j = {{"manifold", io::to_json(o.run.manifold)},
              {"start", {p0.x, p0.y, p0.z}},
              {"direction", {v0.x(), v0.y(), v0.z()}},
              {"s_range", {s0, s1}},
              {"samples", n},
              {"end", {end.x, end.y, end.z}},
              {"max_speed_deviation", speed},
              {"bitension", io::to_json(report)}};
    out << j.dump(2) << "\n";
  } else {
    if (!o.run.output.empty()) out << "wrote " << o.run.output << "\n";
    out << "geodesic from (" << num(p0.x) << ", " << num(p0.y) << ", " << num(p0.z) << ") over [" << num(s0) << ", "
        << num(s1) << "], " << n << " samples\n";
    out << "end point (" << num(end.x) << ", " << num(end.y) << ", " << num(end.z) << ")\n";
    out << "max ||T| - 1| = " << sci(speed) << "\n";
    out << "max |tau1| (interior) = " << sci(report.tau1.interior_max_norm()) << "\n";
    out << "max |tau2| (interior) = " << sci(report.max_residual) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- cone

ConeVerdict cone_at_angle(const ManifoldParams& params, double alpha) {
  return cone_membership(params, FrameVector{{}, {std::sin(alpha), 0.0, std::cos(alpha)}});
}

int cmd_cone(const Options& o, std::ostream& out) {
  const ManifoldParams& params = o.run.manifold;
  require_heisenberg(params, "cone");
  if (o.sweep == 0) {
    const Point p = Point::from(vec3(o.point, "--point"));
    const Vec3 X = direction_of(o);
    const ConeVerdict v = cone_membership(params, FrameVector{p, X});
    const double alpha = std::acos(std::clamp(X.z() / X.norm(), -1.0, 1.0));
    if (o.run.format == "json") {
      out << json{{"point", {p.x, p.y, p.z}}, {"direction", {X.x(), X.y(), X.z()}}, {"alpha0", alpha},
                  {"verdict", to_string(v)}}
                 .dump(2)
          << "\n";
    } else {
      out << "alpha0 = " << num(alpha) << " rad, 5cos^2(alpha0) - 4 = " << num(5.0 * X.z() * X.z() - 4.0) << "\n";
      out << to_string(v) << "\n";
    }
    return 0;
  }

  if (o.sweep < 2) throw Error(ErrorKind::invalid_config, "--sweep needs at least 2 points");
  const double pi = std::numbers::pi;
  const std::size_t n = o.sweep;
  std::vector<double> boundaries;
  std::size_t admissible = 0;
  double prev_alpha = pi / static_cast<double>(n + 1);
  ConeVerdict prev = cone_at_angle(params, prev_alpha);
  admissible += prev == ConeVerdict::biharmonic_direction;
  for (std::size_t i = 2; i <= n; ++i) {
    const double alpha = pi * static_cast<double>(i) / static_cast<double>(n + 1);
    const ConeVerdict cur = cone_at_angle(params, alpha);
    admissible += cur == ConeVerdict::biharmonic_direction;
    if (cur != prev) {
      double lo = prev_alpha, hi = alpha;
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (cone_at_angle(params, mid) == prev ? lo : hi) = mid;
      }
      // Report the admissible endpoint of the bracket.
      boundaries.push_back(prev == ConeVerdict::biharmonic_direction ? lo : hi);
    }
    prev = cur;
    prev_alpha = alpha;
  }

  if (o.run.format == "json") {
    out << json{{"sweep", n}, {"admissible_samples", admissible}, {"boundaries", boundaries}}.dump(2) << "\n";
    return 0;
  }
  out << "sweep of alpha0 over (0, pi) with " << n << " interior points: " << admissible << " admissible\n";
  out << "boundaries (rad):";
  for (double b : boundaries) out << " " << num(b, 15);
  out << "\n";
  out << "exact boundaries arccos(2/sqrt5) = " << num(admissible_alpha_bound(), 15)
      << ", pi - arccos(2/sqrt5) = " << num(pi - admissible_alpha_bound(), 15) << "\n";
  return 0;
}

// ---------------------------------------------------------------- scan

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
  require_heisenberg(o.run.manifold, "scan");
  const double pi = std::numbers::pi;
  const double lo = o.alpha0_min ? to_radians(*o.alpha0_min, o.run.deg) : 0.0;
  const double hi = o.alpha0_max ? to_radians(*o.alpha0_max, o.run.deg) : pi;
  if (o.points < 2) throw Error(ErrorKind::invalid_config, "--points needs at least 2");
  if (!(hi >= lo)) throw Error(ErrorKind::invalid_config, "--alpha0-max must be >= --alpha0-min");
  std::vector<Branch> branches;
  if (o.branch == "plus" || o.branch == "both") branches.push_back(Branch::plus);
  if (o.branch == "minus" || o.branch == "both") branches.push_back(Branch::minus);

  struct Row {
    double alpha0;
    Branch branch;
    HelixInvariants inv;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < o.points; ++i) {
    const double alpha = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(o.points - 1);
    if (!alpha_admissible(alpha)) continue;
    for (Branch b : branches) {
      HelixParams hp;
      hp.alpha0 = alpha;
      hp.branch = b;
      try {
        rows.push_back({alpha, b, helix_invariants(hp)});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::inadmissible_alpha) throw;
      }
    }
  }
  if (rows.empty()) {
    err << "warning: no admissible alpha0 in [" << num(lo) << ", " << num(hi) << "]; need 5cos^2(alpha0) >= 4, i.e. (0, "
        << num(admissible_alpha_bound()) << "] u [" << num(pi - admissible_alpha_bound()) << ", pi)\n";
  }

  auto sum = [](const HelixInvariants& v) { return v.k * v.k + v.tau * v.tau + v.B3 * v.B3; };
  if (o.run.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"alpha0", r.alpha0}, {"branch", to_string(r.branch)}, {"A", r.inv.A}, {"k", r.inv.k},
                     {"tau", r.inv.tau}, {"B3", r.inv.B3}, {"sum", sum(r.inv)}});
    }
    emit(o, out, json{{"rows", arr}}.dump(2) + "\n");
    return 0;
  }
  std::ostringstream s;
  s << "alpha0,branch,A,k,tau,B3,sum\n";
  for (const auto& r : rows) {
    s << io::format_double(r.alpha0) << ',' << to_string(r.branch) << ',' << io::format_double(r.inv.A) << ','
      << io::format_double(r.inv.k) << ',' << io::format_double(r.inv.tau) << ',' << io::format_double(r.inv.B3)
      << ',' << io::format_double(sum(r.inv)) << '\n';
  }
  emit(o, out, s.str());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biharmonic curves in the Heisenberg group and Cartan-Vranceanu spaces", "bihelix"};
  app.require_subcommand(1);
  Options o;

  // Config items are routed to the subcommand named on the command line.
  std::string chosen;
  for (const auto& a : args) {
    if (a == "tensors" || a == "generate" || a == "verify" || a == "geodesic" || a == "cone" || a == "scan") {
      chosen = a;
      break;
    }
  }
  app.set_config("--config", "", "JSON config file; command-line flags take precedence");
  app.config_formatter(std::make_shared<JsonConfig>(chosen));
  app.allow_config_extras(CLI::config_extras_mode::ignore);

  auto* tensors = app.add_subcommand("tensors", "connection, curvature, Ricci and sectional tables at a point");
  add_common(tensors, o);
  tensors->add_option("--point", o.point, "x,y,z")->delimiter(',')->expected(3);

  auto* generate = app.add_subcommand("generate", "sample a curve and write CSV/JSON reports");
  add_common(generate, o);
  add_helix_options(generate, o);
  generate->add_option("--family", o.family, "biharmonic_helix, b3zero, subgroup or circle");
  generate->add_option("--perturb-A", o.perturb_A, "offset added to the helix frequency A (negative control)");
  generate->add_option("--alpha-start", o.alpha_start, "b3zero: alpha(s) = start + rate s");
  generate->add_option("--alpha-rate", o.alpha_rate, "b3zero: alpha(s) = start + rate s");
  generate->add_option("--direction", o.direction, "subgroup direction v1,v2,v3")->delimiter(',')->expected(3);
  generate->add_flag("--normalize", o.normalize, "normalize --direction");
  generate->add_option("--radius", o.radius, "circle radius");
  generate->add_option("--s-range", o.s_range, "s0,s1")->delimiter(',')->expected(2);
  generate->add_option("--samples", o.samples, "number of samples");
  generate->add_option("--output-dir", o.output_dir, "directory for the output files");
  generate->add_option("--prefix", o.prefix, "file name prefix (default: family)");
  generate->add_flag("--with-velocity", o.with_velocity, "add vx,vy,vz frame columns to the CSV");
  generate->add_flag("--surfaces", o.surfaces, "also write cylinder and helicoid grids");
  generate->add_option("--surface-grid", o.surface_grid, "nu,nv")->delimiter(',')->expected(2);

  auto* verify = app.add_subcommand("verify", "classify a sampled curve; exit 0 biharmonic, 1 not, 2 input error");
  add_common(verify, o);
  verify->add_option("input", o.input, "CSV with header s,x,y,z[,vx,vy,vz]");
  verify->add_option("--residual-csv", o.residual_csv, "also write s,cT,cN,cB,residual");

  auto* geodesic = app.add_subcommand("geodesic", "shoot a geodesic from a point and unit frame direction");
  add_common(geodesic, o);
  geodesic->add_option("--point", o.point, "x,y,z")->delimiter(',')->expected(3);
  geodesic->add_option("--direction", o.direction, "frame components v1,v2,v3")->delimiter(',')->expected(3);
  geodesic->add_flag("--normalize", o.normalize, "normalize --direction");
  geodesic->add_option("--s-range", o.s_range, "s0,s1")->delimiter(',')->expected(2);
  geodesic->add_option("--samples", o.samples, "number of samples");
  geodesic->add_flag("--with-velocity", o.with_velocity, "add vx,vy,vz frame columns to the CSV");

  auto* cone = app.add_subcommand("cone", "directions tangent to non-geodesic biharmonic curves");
  add_common(cone, o);
  cone->add_option("--point", o.point, "x,y,z")->delimiter(',')->expected(3);
  cone->add_option("--direction", o.direction, "frame components v1,v2,v3")->delimiter(',')->expected(3);
  cone->add_flag("--normalize", o.normalize, "normalize --direction");
  cone->add_option("--sweep", o.sweep, "sweep alpha0 over n interior points of (0, pi)");

  auto* scan = app.add_subcommand("scan", "closed-form helix invariants over an alpha0 grid");
  add_common(scan, o);
  scan->add_option("--alpha0-min", o.alpha0_min, "grid start (radians unless --deg; default 0)");
  scan->add_option("--alpha0-max", o.alpha0_max, "grid end (default pi)");
  scan->add_option("--points", o.points, "grid size");
  scan->add_option("--branch", o.branch)->check(CLI::IsMember({"plus", "minus", "both"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (tensors->parsed()) return cmd_tensors(o, out);
    if (generate->parsed()) return cmd_generate(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (geodesic->parsed()) return cmd_geodesic(o, out);
    if (cone->parsed()) return cmd_cone(o, out);
    return cmd_scan(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace bihelix::cli
