#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "bihelix/io.hpp"

using namespace bihelix;

namespace {

const ManifoldParams kH3 = ManifoldParams::heisenberg();

ErrorKind read_error(const std::string& text, std::string* message = nullptr) {
  std::istringstream in(text);
  try {
    io::read_curve_csv(in, kH3);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::invalid_config;
}

std::string line_csv(int rows, double step = 0.1) {
  std::ostringstream s;
  s << "s,x,y,z\n";
  for (int i = 0; i < rows; ++i) s << step * i << "," << step * i << ",0,0\n";
  return s.str();
}

}  // namespace

TEST(Format, SeventeenSignificantDigits) {
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(-2.0), "-2");
  EXPECT_EQ(io::format_double(std::nan("")), "nan");
}

TEST(CurveCsv, RoundTripIsExact) {
  const HelixParams hp{0.3, 1, -2, 1, 0.5, Branch::minus};
  const Trajectory t = sample_curve(biharmonic_helix(hp, 0.0, 3.0), 31);
  for (bool with_velocity : {false, true}) {
    std::stringstream s;
    io::write_curve_csv(s, t, with_velocity);
    const CurveSpec back = io::read_curve_csv(s, kH3);
    const auto& sampled = std::get<SampledCurve>(back.data);
    ASSERT_EQ(sampled.points.size(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_EQ(sampled.s[i], t.samples[i].s);
      EXPECT_EQ(sampled.points[i], t.samples[i].point);
      if (with_velocity) EXPECT_EQ(sampled.velocities[i], t.samples[i].velocity);
    }
    EXPECT_EQ(sampled.velocities.empty(), !with_velocity);
  }
}

TEST(CurveCsv, HeaderStartsTheFile) {
  std::ostringstream s;
  io::write_curve_csv(s, sample_curve(one_param_subgroup({0, 0, 1}, 0, 1), 9));
  EXPECT_EQ(s.str().substr(0, 8), "s,x,y,z\n");
}

TEST(CurveCsv, ErrorsCarryRowNumbers) {
  std::string msg;
  EXPECT_EQ(read_error("", &msg), ErrorKind::io_error);
  EXPECT_EQ(read_error("t,x,y,z\n0,0,0,0\n", &msg), ErrorKind::io_error);
  EXPECT_NE(msg.find("row 1"), std::string::npos);

  std::string text = line_csv(12);
  text.replace(text.find("0.3,0.3,0,0"), 11, "0.3,abc,0,0");
  EXPECT_EQ(read_error(text, &msg), ErrorKind::io_error);
  EXPECT_NE(msg.find("row 5"), std::string::npos) << msg;

  text = line_csv(12);
  text.replace(text.find("0.4,0.4,0,0"), 11, "0.4,0.4,0");
  EXPECT_EQ(read_error(text, &msg), ErrorKind::io_error);
  EXPECT_NE(msg.find("row 6"), std::string::npos) << msg;

  text = line_csv(12);
  text.replace(text.find("0.5,0.5,0,0"), 11, "0.35,0.5,0,0");
  EXPECT_EQ(read_error(text, &msg), ErrorKind::non_monotone);
  EXPECT_NE(msg.find("row 7"), std::string::npos) << msg;

  EXPECT_EQ(read_error(line_csv(5)), ErrorKind::too_few_samples);
}

TEST(CurveCsv, NonUnitSpeedInputIsRejected) {
  std::istringstream in(line_csv(20, 0.1).replace(0, 0, ""));
  const CurveSpec ok = io::read_curve_csv(in, kH3);
  EXPECT_NO_THROW(sample_curve(ok, 0));
  std::ostringstream s;
  s << "s,x,y,z\n";
  for (int i = 0; i < 20; ++i) s << 0.1 * i << "," << 0.2 * i << ",0,0\n";
  std::istringstream fast(s.str());
  try {
    sample_curve(io::read_curve_csv(fast, kH3), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_unit_speed);
    EXPECT_NE(std::string(e.what()).find("row"), std::string::npos);
  }
}

TEST(ResidualCsv, NanWithoutFrame) {
  const Trajectory t = sample_curve(one_param_subgroup({0, 0, 1}, 0, 1), 11);
  std::ostringstream s;
  io::write_residual_csv(s, t, bitension_report(t));
  std::istringstream in(s.str());
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "s,cT,cN,cB,residual");
  EXPECT_EQ(first.substr(0, 14), "0,nan,nan,nan,");
}

TEST(Json, ReportsAndFrenet) {
  const Trajectory t = sample_curve(biharmonic_helix({0.3, 0, 0, 0, 0, Branch::plus}, 0.0, 5.0), 101);
  const io::json f = io::to_json(frenet_apparatus(t));
  ASSERT_EQ(f["samples"].size(), 101u);
  EXPECT_TRUE(f["samples"][50]["tau"].is_number());
  EXPECT_EQ(f["manifold"]["l"], 1.0);
  const io::json c = io::to_json(classify(t));
  EXPECT_EQ(c["verdict"], "nongeodesic_biharmonic");
  EXPECT_TRUE(c["checks"].is_array());
  const io::json r = io::to_json(bitension_report(t));
  EXPECT_LE(r["max_residual"].get<double>(), 1e-5);

  const Trajectory g = sample_curve(one_param_subgroup({0, 0, 1}, 0, 1), 11);
  EXPECT_TRUE(io::to_json(frenet_apparatus(g))["samples"][5]["N"].is_null());
}

TEST(Json, CurveParameterFiles) {
  const io::json j = io::json::parse(R"({"manifold": {"m": 0, "l": 1}, "family": "biharmonic_helix",
      "alpha0": 0.3, "a": 1, "b": -2, "c": 0, "d": 1, "branch": "minus", "s_range": [0, 5], "samples": 501})");
  const io::CurveParams p = io::curve_params_from_json(j);
  EXPECT_EQ(p.helix.alpha0, 0.3);
  EXPECT_EQ(p.helix.b, -2.0);
  EXPECT_EQ(p.helix.branch, Branch::minus);
  EXPECT_EQ(p.s1, 5.0);
  EXPECT_EQ(p.samples, 501u);
  const io::CurveParams q = io::curve_params_from_json(io::to_json(p));
  EXPECT_EQ(io::to_json(q), io::to_json(p));

  EXPECT_THROW(io::curve_params_from_json(io::json::parse(R"({"alpha0": "wide"})")), Error);
  EXPECT_THROW(io::curve_params_from_json(io::json::parse(R"({"s_range": [1]})")), Error);
  EXPECT_THROW(io::curve_params_from_json(io::json::parse(R"([1, 2])")), Error);
}
