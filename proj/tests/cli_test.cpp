// Copyright 2026 The Dubins Escape Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dubins_escape/cli/app.hpp"
#include "dubins_escape/cli/artifacts.hpp"
#include "dubins_escape/cli/problem_io.hpp"
#include "gtest/gtest.h"
#include "test_support.hpp"

namespace dubins_escape::cli {
namespace {

constexpr double kPiD = kPi<double>;

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run_tool(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  args.insert(args.begin(), "dubins-escape");
  RunResult r;
  r.code = run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const std::string& name) {
  std::ifstream f(std::filesystem::path(DUBINS_ESCAPE_FIXTURES) / name);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* kSquare = R"("polygon": {"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]})";

std::string square_problem(double x, double y, double heading, double radius) {
  std::ostringstream s;
  s << R"({"vehicle": {"x": )" << format_double(x) << R"(, "y": )" << format_double(y)
    << R"(, "heading_rad": )" << format_double(heading)
    << R"(, "speed": 1, "min_turn_radius": )" << format_double(radius) << "}, " << kSquare
    << "}";
  return s.str();
}

TEST(SolveLineCommandTest, StraightRun) {
  const auto r = run_tool({"solve-line"}, fixture("line_straight.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["escape_time"].get<double>(), 3.0);
  EXPECT_EQ(doc["exit_point"][0].get<double>(), 3.0);
  EXPECT_EQ(doc["exit_point"][1].get<double>(), 0.0);
  EXPECT_EQ(doc["strategy"]["kind"], "straight-only");
  EXPECT_EQ(doc["tool_version"], tool_version());
}

TEST(SolveLineCommandTest, QuarterCircle) {
  const auto r = run_tool({"solve-line", "--input", "-"}, fixture("line_quarter_circle.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_NEAR(doc["escape_time"].get<double>(), kPiD / 2, 1e-15);
  EXPECT_NEAR(doc["exit_point"][0].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(doc["exit_point"][1].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(doc["region"], "R_T");
}

TEST(SolveLineCommandTest, DispersalReportsBothTurns) {
  const auto r = run_tool({"solve-line"}, fixture("line_dispersal.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  ASSERT_EQ(doc["ties"].size(), 2u);
  EXPECT_EQ(doc["ties"][0]["escape_time"], doc["ties"][1]["escape_time"]);
  EXPECT_EQ(doc["seed"], 42);
}

TEST(SolveLineCommandTest, MissingSpeed) {
  const auto r = run_tool({"solve-line"}, fixture("invalid/missing_speed.json"));
  EXPECT_EQ(r.code, kExitValidation);
  const auto err = json::parse(r.err);
  EXPECT_EQ(err["error"]["path"], "/vehicle/speed");
  EXPECT_EQ(err["error"]["code"], "missing-field");
  EXPECT_TRUE(r.out.empty());
}

TEST(SolveLineCommandTest, RejectsPolygonInstance) {
  const auto r = run_tool({"solve-line"}, fixture("square_right.json"));
  EXPECT_EQ(r.code, kExitValidation);
}

TEST(SolveLineCommandTest, VehicleBeyondLine) {
  const std::string doc = R"({"vehicle": {"x": 5, "y": 0, "heading_rad": 0, "speed": 1,
      "min_turn_radius": 1}, "line": {"point": [3, 0], "outward_normal": [1, 0]}})";
  const auto r = run_tool({"solve-line"}, doc);
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "outside-half-plane");
}

TEST(SolvePolygonCommandTest, RightEdge) {
  const auto r = run_tool({"solve-polygon", "--certify"}, fixture("square_right.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["escape_time"].get<double>(), 0.5);
  EXPECT_EQ(doc["edge_index"], 1);
  EXPECT_EQ(doc["exit_point"], json::parse("[1.0, 0.5]"));
  EXPECT_EQ(doc["ties"].size(), 1u);
  EXPECT_EQ(doc["per_edge"].size(), 4u);
  EXPECT_TRUE(doc["certificate"]["passed"].get<bool>());
}

TEST(SolvePolygonCommandTest, BisectorTies) {
  const auto r = run_tool({"solve-polygon"}, fixture("square_bisector.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["ties"].size(), 2u);
}

TEST(SolvePolygonCommandTest, TieToleranceFlag) {
  const std::string problem = square_problem(0.5, 0.5, 0.1, 0.1);
  EXPECT_EQ(json::parse(run_tool({"solve-polygon"}, problem).out)["ties"].size(), 1u);
  const auto loose = run_tool({"solve-polygon", "--tie-tol", "10"}, problem);
  ASSERT_EQ(loose.code, 0);
  EXPECT_EQ(json::parse(loose.out)["ties"].size(), 4u);
}

TEST(SolvePolygonCommandTest, OutsidePolygon) {
  const auto r = run_tool({"solve-polygon"}, square_problem(5, 5, 0, 0.1));
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "outside-polygon");
}

TEST(SolvePolygonCommandTest, NegativeFixtures) {
  const auto expected = json::parse(fixture("invalid/expected_errors.json"));
  for (const auto& [name, want] : expected.items()) {
    const auto r = run_tool({want["command"].get<std::string>()}, fixture("invalid/" + name));
    EXPECT_EQ(r.code, kExitValidation) << name;
    const auto err = json::parse(r.err);
    EXPECT_EQ(err["error"]["path"], want["path"]) << name;
    EXPECT_EQ(err["error"]["code"], want["code"]) << name;
  }
}

TEST(SolvePolygonCommandTest, NonFiniteNumbersRejected) {
  // The JSON reader refuses overflowing literals outright.
  std::string text = square_problem(0.5, 0.5, 0, 0.1);
  text.replace(text.find(R"("speed": 1)"), 10, R"("speed": 1e999)");
  const auto bad = run_tool({"solve-polygon"}, text);
  EXPECT_EQ(bad.code, kExitValidation);
  EXPECT_EQ(json::parse(bad.err)["error"]["code"], "malformed-json");
  // Documents built in memory can still carry NaN.
  auto doc = json::parse(square_problem(0.5, 0.5, 0, 0.1));
  doc["vehicle"]["speed"] = std::nan("");
  try {
    parse_problem(doc);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.code(), "non-finite");
    EXPECT_EQ(e.path(), "/vehicle/speed");
  }
}

TEST(CliTest, DeterministicOutput) {
  for (const auto& name : {"square_bisector.json", "hexagon.json", "square_dispersal.json"}) {
    const auto a = run_tool({"solve-polygon", "--certify"}, fixture(name));
    const auto b = run_tool({"solve-polygon", "--certify"}, fixture(name));
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << name;
  }
}

TEST(CliTest, MatchesLibrary) {
  testing::Rng rng(55);
  for (int i = 0; i < 50; ++i) {
    const auto verts = testing::random_convex_polygon(rng, 3, 10);
    const auto poly = validate_polygon(verts);
    const GlobalPosed pose(testing::random_interior_point(rng, poly),
                           testing::uniform_heading(rng));
    const VehicleParamsd params(testing::uniform(rng, 0.5, 3),
                                poly.diameter() * testing::uniform(rng, 0.05, 0.5));
    json problem = {{"vehicle",
                     {{"x", pose.position.x()},
                      {"y", pose.position.y()},
                      {"heading_rad", pose.heading},
                      {"speed", params.speed()},
                      {"min_turn_radius", params.min_turn_radius()}}},
                    {"polygon", {{"vertices", json::array()}}}};
    for (const auto& v : verts) problem["polygon"]["vertices"].push_back({v.x(), v.y()});
    const auto r = run_tool({"solve-polygon"}, problem.dump());
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = json::parse(r.out);
    const auto lib = solve_polygon(pose, params, poly);
    EXPECT_EQ(doc["escape_time"].get<double>(), lib.t_f);
    EXPECT_EQ(doc["edge_index"].get<std::size_t>(), lib.best.edge_index);
    EXPECT_EQ(doc["exit_point"][0].get<double>(), lib.best.exit_point_world.x());
    EXPECT_EQ(doc["exit_point"][1].get<double>(), lib.best.exit_point_world.y());
    EXPECT_EQ(doc["control_schedule"], schedule_json(lib.schedule));
    EXPECT_EQ(doc["ties"].size(), lib.ties.size());
  }
}

TEST(CliTest, InstanceRoundTrip) {
  const auto instance = parse_problem_text(fixture("hexagon.json"));
  const auto again = parse_problem(json::parse(to_json(instance).dump()));
  EXPECT_EQ(to_json(again), to_json(instance));
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(std::stod(format_double(kPiD)), kPiD);
}

TEST(TraceCommandTest, StraightCsv) {
  const auto r = run_tool({"trace", "--dt", "0.5"}, fixture("line_straight.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("t,x,y,theta,u\n"));
  const auto samples = parse_trace_csv(r.out);
  ASSERT_EQ(samples.size(), 7u);
  EXPECT_EQ(samples.front().t, 0.0);
  EXPECT_EQ(samples.back().t, 3.0);
  for (const auto& s : samples) EXPECT_EQ(s.position.y(), 0.0);
  EXPECT_EQ(trace_csv(samples), r.out);
}

TEST(TraceCommandTest, QuarterCircleSamples) {
  const auto r = run_tool({"trace", "--dt", format_double(kPiD / 8), "--format", "csv"},
                          fixture("line_quarter_circle.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto samples = parse_trace_csv(r.out);
  ASSERT_EQ(samples.size(), 5u);
  EXPECT_NEAR(samples.back().t, 1.5708, 1e-4);
  EXPECT_NEAR(samples.back().heading, 0.0, 1e-12);
}

TEST(TraceCommandTest, DefaultSampleSpacing) {
  const auto r = run_tool({"trace"}, fixture("square_right.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse_trace_csv(r.out).size(), 257u);
}

TEST(TraceCommandTest, JsonFormat) {
  const auto r = run_tool({"trace", "--format", "json"}, fixture("square_bisector.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  ASSERT_TRUE(doc.contains("samples"));
  // sample_dt comes from the instance options.
  // Multiples of 0.01 up to 0.50 plus t = 0 and both phase endpoints.
  EXPECT_EQ(doc["samples"].size(), 53u);
}

TEST(TraceCommandTest, SvgShowsTiePaths) {
  const auto r = run_tool({"trace", "--format", "svg"}, fixture("square_bisector.json"));
  ASSERT_EQ(r.code, 0) << r.err;
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = r.out.find(needle); pos != std::string::npos;
         pos = r.out.find(needle, pos + 1)) {
      ++n;
    }
    return n;
  };
  EXPECT_EQ(count(R"(<path class="tie-path")"), 2u);
  EXPECT_EQ(count(R"(class="optimal-path")"), 1u);
  EXPECT_EQ(count(R"(class="polygon")"), 1u);
  EXPECT_GE(count(R"(class="turn-circle")"), 2u);
  EXPECT_NE(r.out.find("data-world-to-screen="), std::string::npos);
  EXPECT_TRUE(r.out.starts_with("<?xml"));
}

TEST(TraceCommandTest, RejectsBadFormatAndStep) {
  EXPECT_EQ(run_tool({"trace", "--format", "png"}, fixture("square_right.json")).code,
            kExitValidation);
  EXPECT_EQ(run_tool({"trace", "--dt", "-1"}, fixture("square_right.json")).code,
            kExitValidation);
}

TEST(FlowfieldCommandTest, TenByTen) {
  const auto r = run_tool(
      {"flowfield", "--x-range", "-3,0", "--nx", "10", "--ntheta", "10", "--v", "1", "--R", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  const auto& cells = doc["cells"];
  ASSERT_EQ(cells.size(), 100u);
  int zero_row = 0;
  for (const auto& c : cells) {
    if (c["theta"].get<double>() == 0.0) {
      ++zero_row;
      const std::string region = c["region"];
      EXPECT_TRUE(region == "UL" || region == "UP") << region;
    }
  }
  EXPECT_EQ(zero_row, 10);
}

TEST(FlowfieldCommandTest, MirrorSymmetry) {
  FlowfieldSpec spec;
  spec.theta_min = -3;
  spec.theta_max = 3;
  spec.nx = 20;
  spec.ntheta = 41;
  const auto grid = make_flowfield(spec);
  for (std::size_t i = 0; i < grid.x_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.theta_values.size(); ++j) {
      const auto& a = grid.cells[i * 41 + j];
      const auto& b = grid.cells[i * 41 + (40 - j)];
      EXPECT_NEAR(a.theta, -b.theta, 1e-15);
      EXPECT_NEAR(a.t_f, b.t_f, 1e-12 * std::max(1.0, a.t_f));
      EXPECT_EQ(a.region, b.region);
    }
  }
}

TEST(FlowfieldCommandTest, CsvAndErrors) {
  const auto r = run_tool({"flowfield", "--nx", "2", "--ntheta", "3", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.starts_with("x,theta,t_f,region,u0\n"));
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
  EXPECT_EQ(run_tool({"flowfield", "--x-range", "-1,2"}).code, kExitValidation);
  EXPECT_EQ(run_tool({"flowfield", "--nx", "1"}).code, kExitValidation);
}

TEST(FlowfieldCommandTest, HjbCheck) {
  const auto ok = run_tool({"flowfield", "--x-range", "-5,-1", "--theta-range", "0.2,1.2",
                            "--nx", "3", "--ntheta", "3", "--check-hjb"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto doc = json::parse(ok.out);
  EXPECT_TRUE(doc["hjb"]["passed"].get<bool>());
  EXPECT_LE(doc["hjb"]["max_residual"].get<double>(), 1e-4);
  // A threshold below the truncation error of the stencil fails.
  const auto strict = run_tool({"flowfield", "--x-range", "-0.6,-0.2", "--theta-range",
                                "1.2,1.6", "--nx", "2", "--ntheta", "2", "--check-hjb",
                                "--hjb-threshold", "1e-12"});
  EXPECT_EQ(strict.code, kExitVerification);
}

TEST(BinaryTest, ExitCodes) {
  const std::string tool = DUBINS_ESCAPE_TOOL;
  const std::string dir = DUBINS_ESCAPE_FIXTURES;
  auto status = [&](const std::string& args) {
    const int raw = std::system((tool + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("solve-polygon --input " + dir + "/square_right.json"), 0);
  EXPECT_EQ(status("solve-line --input " + dir + "/invalid/missing_speed.json"), 2);
  EXPECT_EQ(status("solve-polygon --input " + dir + "/does_not_exist.json"), 2);
  EXPECT_EQ(status("no-such-command"), 2);
}

}  // namespace
}  // namespace dubins_escape::cli
