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

#ifndef DUBINS_ESCAPE_CLI_PROBLEM_IO_HPP_
#define DUBINS_ESCAPE_CLI_PROBLEM_IO_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dubins_escape/dubins_escape.hpp"
#include <nlohmann/json.hpp>

namespace dubins_escape::cli {

using nlohmann::json;

// Input document rejected before solving. path is a JSON pointer into the
// offending document ("" for the root).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string code, std::string path, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)), path_(std::move(path)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::string code_;
  std::string path_;
};

struct VehicleSpec {
  double x = 0;
  double y = 0;
  double heading_rad = 0;
  double speed = 0;
  double min_turn_radius = 0;

  GlobalPosed pose() const { return GlobalPosed(x, y, heading_rad); }
  VehicleParamsd params() const { return VehicleParamsd(speed, min_turn_radius); }
};

struct LineSpec {
  Vector2d point = Vector2d::Zero();
  Vector2d outward_normal = Vector2d::UnitX();
};

struct ProblemOptions {
  std::optional<double> tie_tol;
  std::optional<double> sample_dt;
  std::optional<std::int64_t> seed;
};

struct ProblemInstance {
  VehicleSpec vehicle;
  std::optional<std::vector<Vector2d>> polygon;
  std::optional<LineSpec> line;
  ProblemOptions options;
};

ProblemInstance parse_problem(const json& doc);
// Parses text first; malformed JSON raises ValidationError("malformed-json").
ProblemInstance parse_problem_text(std::string_view text);
json to_json(const ProblemInstance& instance);

// Validates the polygon of an instance, reporting failures against
// /polygon/vertices.
ConvexPolygond instance_polygon(const ProblemInstance& instance);

struct LineProblemSolution {
  EdgeFramed frame;
  LineLocalStated local;
  LineEscapeResultd result;
  Vector2d exit_point = Vector2d::Zero();
  Vector2d alternate_exit_point = Vector2d::Zero();
  double final_heading_world = 0;
};

LineProblemSolution solve_line_problem(const ProblemInstance& instance);
PolygonEscapeSolutiond solve_polygon_problem(const ProblemInstance& instance,
                                             const ConvexPolygond& polygon,
                                             std::optional<double> tie_tol);

json strategy_json(const StrategyKind& strategy);
json schedule_json(const ControlScheduled& schedule);

json line_solution_document(const ProblemInstance& instance,
                            const LineProblemSolution& solution);
json polygon_solution_document(const ProblemInstance& instance,
                               const ConvexPolygond& polygon,
                               const PolygonEscapeSolutiond& solution,
                               const std::optional<EscapeCertificated>& cert);

std::string tool_version();

}  // namespace dubins_escape::cli

#endif  // DUBINS_ESCAPE_CLI_PROBLEM_IO_HPP_
