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

#ifndef DUBINS_ESCAPE_CLI_ARTIFACTS_HPP_
#define DUBINS_ESCAPE_CLI_ARTIFACTS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dubins_escape/dubins_escape.hpp"
#include <nlohmann/json.hpp>

namespace dubins_escape::cli {

// Shortest decimal that parses back to the same double.
std::string format_double(double value);

// CSV with the exact header `t,x,y,theta,u`.
std::string trace_csv(const std::vector<PathSampled>& samples);
std::vector<PathSampled> parse_trace_csv(std::string_view text);
nlohmann::json trace_json(const std::vector<PathSampled>& samples);

struct SvgScene {
  std::optional<std::vector<Vector2d>> polygon;
  // Target line for line-mode plots.
  std::optional<EdgeFramed> line;
  GlobalPosed start{0.0, 0.0, 0.0};
  double min_turn_radius = 1;
  std::vector<PathSampled> optimal_path;
  std::vector<std::vector<PathSampled>> tie_paths;
};

// SVG 1.1 document. The y axis is flipped to screen convention; the mapping
// is recorded in the root element's data-world-to-screen attribute as
// "scale,x_min,y_max" with screen = (scale (x - x_min), scale (y_max - y)).
std::string render_svg(const SvgScene& scene);

struct FlowfieldSpec {
  double x_min = -3;
  double x_max = 0;
  double theta_min = -kPi<double>;
  double theta_max = kPi<double>;
  int nx = 50;
  int ntheta = 50;
  double speed = 1;
  double min_turn_radius = 1;
};

struct FlowfieldCell {
  double x = 0;
  double theta = 0;
  double t_f = 0;
  Region region = Region::kUsablePart;
  // First-phase control of the optimal schedule.
  double u0 = 0;
};

// Cells are row-major with x as the row index:
// cells[i * ntheta + j] holds (x_i, theta_j).
struct FlowfieldGrid {
  FlowfieldSpec spec;
  std::vector<double> x_values;
  std::vector<double> theta_values;
  std::vector<FlowfieldCell> cells;
};

// Both axes are inclusive linspaces, except a theta range spanning a full
// turn, which is sampled half-open as (theta_min, theta_max].
FlowfieldGrid make_flowfield(const FlowfieldSpec& spec);
nlohmann::json flowfield_json(const FlowfieldGrid& grid);
std::string flowfield_csv(const FlowfieldGrid& grid);

nlohmann::json hjb_report_json(const HjbReportd& report, double threshold);

}  // namespace dubins_escape::cli

#endif  // DUBINS_ESCAPE_CLI_ARTIFACTS_HPP_
