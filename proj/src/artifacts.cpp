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

#include "dubins_escape/cli/artifacts.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <system_error>

namespace dubins_escape::cli {

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

namespace {

constexpr std::string_view kTraceHeader = "t,x,y,theta,u";

double parse_field(std::string_view field, std::size_t line) {
  double value = 0;
  const auto result =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    throw EscapeError(ErrorCode::kInvalidArgument,
                      "bad number on CSV line " + std::to_string(line));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = text.find(sep, begin);
    if (end == std::string_view::npos) {
      parts.push_back(text.substr(begin));
      return parts;
    }
    parts.push_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
}

std::string fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

}  // namespace

std::string trace_csv(const std::vector<PathSampled>& samples) {
  std::string out(kTraceHeader);
  out += '\n';
  for (const auto& s : samples) {
    out += format_double(s.t) + ',' + format_double(s.position.x()) + ',' +
           format_double(s.position.y()) + ',' + format_double(s.heading) +
           ',' + format_double(s.u) + '\n';
  }
  return out;
}

std::vector<PathSampled> parse_trace_csv(std::string_view text) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kTraceHeader) {
    throw EscapeError(ErrorCode::kInvalidArgument,
                      "trace CSV must start with header t,x,y,theta,u");
  }
  std::vector<PathSampled> samples;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    if (fields.size() != 5) {
      throw EscapeError(ErrorCode::kInvalidArgument,
                        "CSV line " + std::to_string(i + 1) +
                            " needs 5 fields");
    }
    PathSampled s;
    s.t = parse_field(fields[0], i + 1);
    s.position = {parse_field(fields[1], i + 1), parse_field(fields[2], i + 1)};
    s.heading = parse_field(fields[3], i + 1);
    s.u = parse_field(fields[4], i + 1);
    samples.push_back(s);
  }
  return samples;
}

nlohmann::json trace_json(const std::vector<PathSampled>& samples) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& s : samples) {
    rows.push_back({{"t", s.t},
                    {"x", s.position.x()},
                    {"y", s.position.y()},
                    {"theta", s.heading},
                    {"u", s.u}});
  }
  return {{"samples", rows}};
}

std::string render_svg(const SvgScene& scene) {
  const double radius = scene.min_turn_radius;
  const Vector2d p0 = scene.start.position;
  const Vector2d left_dir(-std::sin(scene.start.heading),
                          std::cos(scene.start.heading));
  const Vector2d centers[2] = {p0 + radius * left_dir, p0 - radius * left_dir};

  double x_min = std::numeric_limits<double>::infinity();
  double y_min = x_min;
  double x_max = -x_min;
  double y_max = -x_min;
  auto grow = [&](const Vector2d& p) {
    x_min = std::min(x_min, p.x());
    x_max = std::max(x_max, p.x());
    y_min = std::min(y_min, p.y());
    y_max = std::max(y_max, p.y());
  };
  if (scene.polygon) {
    for (const auto& v : *scene.polygon) grow(v);
  }
  for (const auto& c : centers) {
    grow(c - Vector2d(radius, radius));
    grow(c + Vector2d(radius, radius));
  }
  for (const auto& s : scene.optimal_path) grow(s.position);
  for (const auto& path : scene.tie_paths) {
    for (const auto& s : path) grow(s.position);
  }
  Vector2d line_a = Vector2d::Zero();
  Vector2d line_b = Vector2d::Zero();
  if (scene.line) {
    const Vector2d foot = from_edge_frame(
        *scene.line, 0.0, tangential_offset(p0, *scene.line));
    grow(foot);
    const double reach = std::hypot(x_max - x_min, y_max - y_min);
    line_a = foot - reach * scene.line->tangent;
    line_b = foot + reach * scene.line->tangent;
  }
  const double margin = 0.05 * std::max({x_max - x_min, y_max - y_min, 1e-9});
  x_min -= margin;
  x_max += margin;
  y_min -= margin;
  y_max += margin;
  const double scale = 800.0 / std::max(x_max - x_min, y_max - y_min);
  const double width = scale * (x_max - x_min);
  const double height = scale * (y_max - y_min);
  auto sx = [&](const Vector2d& p) { return fixed(scale * (p.x() - x_min)); };
  auto sy = [&](const Vector2d& p) { return fixed(scale * (y_max - p.y())); };
  auto path_d = [&](const std::vector<PathSampled>& path) {
    std::string d;
    for (std::size_t i = 0; i < path.size(); ++i) {
      d += (i == 0 ? "M " : " L ") + sx(path[i].position) + ' ' +
           sy(path[i].position);
    }
    return d;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << fixed(width) << "\" height=\"" << fixed(height) << "\" viewBox=\"0 0 "
      << fixed(width) << ' ' << fixed(height) << "\" data-world-to-screen=\""
      << format_double(scale) << ',' << format_double(x_min) << ','
      << format_double(y_max) << "\">\n"
      << "<style>.polygon{fill:none;stroke:#000;stroke-width:1.5}"
         ".target-line{stroke:#000;stroke-width:1.5}"
         ".turn-circle{fill:none;stroke:#777;stroke-dasharray:6 4}"
         ".tie-path{fill:none;stroke:#1f77b4;stroke-width:1.5;stroke-dasharray:8 4}"
         ".optimal-path{fill:none;stroke:#d62728;stroke-width:2.5}"
         ".start{fill:#000}</style>\n";
  if (scene.polygon) {
    svg << "<polygon class=\"polygon\" points=\"";
    for (std::size_t i = 0; i < scene.polygon->size(); ++i) {
      const Vector2d& v = (*scene.polygon)[i];
      svg << (i == 0 ? "" : " ") << sx(v) << ',' << sy(v);
    }
    svg << "\"/>\n";
  }
  if (scene.line) {
    svg << "<line class=\"target-line\" x1=\"" << sx(line_a) << "\" y1=\""
        << sy(line_a) << "\" x2=\"" << sx(line_b) << "\" y2=\"" << sy(line_b)
        << "\"/>\n";
  }
  for (const auto& c : centers) {
    svg << "<circle class=\"turn-circle\" cx=\"" << sx(c) << "\" cy=\""
        << sy(c) << "\" r=\"" << fixed(scale * radius)
        << "\" stroke-dasharray=\"6 4\"/>\n";
  }
  for (const auto& path : scene.tie_paths) {
    svg << "<path class=\"tie-path\" d=\"" << path_d(path) << "\"/>\n";
  }
  if (!scene.optimal_path.empty()) {
    svg << "<path class=\"optimal-path\" d=\"" << path_d(scene.optimal_path)
        << "\"/>\n";
  }
  svg << "<circle class=\"start\" cx=\"" << sx(p0) << "\" cy=\"" << sy(p0)
      << "\" r=\"4\"/>\n"
      << "</svg>\n";
  return svg.str();
}

FlowfieldGrid make_flowfield(const FlowfieldSpec& spec) {
  if (spec.nx < 2 || spec.ntheta < 2) {
    throw EscapeError(ErrorCode::kInvalidGrid, "nx and ntheta must be >= 2");
  }
  if (!(spec.x_min < spec.x_max) || spec.x_max > 0 ||
      !(spec.theta_min < spec.theta_max)) {
    throw EscapeError(ErrorCode::kInvalidGrid,
                      "need x_min < x_max <= 0 and theta_min < theta_max");
  }
  const VehicleParamsd params(spec.speed, spec.min_turn_radius);
  FlowfieldGrid grid;
  grid.spec = spec;
  for (int i = 0; i < spec.nx; ++i) {
    grid.x_values.push_back(spec.x_min + (spec.x_max - spec.x_min) * i /
                                             (spec.nx - 1));
  }
  const double span = spec.theta_max - spec.theta_min;
  const bool full_turn = span >= kTwoPi<double> - 1e-12;
  for (int j = 0; j < spec.ntheta; ++j) {
    grid.theta_values.push_back(
        full_turn ? spec.theta_min + span * (j + 1) / spec.ntheta
                  : spec.theta_min + span * j / (spec.ntheta - 1));
  }
  grid.cells.reserve(grid.x_values.size() * grid.theta_values.size());
  for (const double x : grid.x_values) {
    for (const double theta : grid.theta_values) {
      const LineLocalStated state(x, theta);
      const auto result = solve_line(state, params);
      FlowfieldCell cell;
      cell.x = x;
      cell.theta = state.theta;
      cell.t_f = result.primary.t_f;
      cell.region = classify(state, params);
      cell.u0 = result.primary.schedule.empty()
                    ? 0.0
                    : result.primary.schedule.phases.front().u;
      grid.cells.push_back(cell);
    }
  }
  return grid;
}

nlohmann::json flowfield_json(const FlowfieldGrid& grid) {
  const FlowfieldSpec& s = grid.spec;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : grid.cells) {
    cells.push_back({{"x", c.x},
                     {"theta", c.theta},
                     {"t_f", c.t_f},
                     {"region", std::string(to_string(c.region))},
                     {"u0", c.u0}});
  }
  return {{"tool_version", DUBINS_ESCAPE_VERSION},
          {"x_range", {s.x_min, s.x_max}},
          {"theta_range", {s.theta_min, s.theta_max}},
          {"nx", s.nx},
          {"ntheta", s.ntheta},
          {"speed", s.speed},
          {"min_turn_radius", s.min_turn_radius},
          {"layout", "row-major, x index outer"},
          {"cells", cells}};
}

std::string flowfield_csv(const FlowfieldGrid& grid) {
  std::string out = "x,theta,t_f,region,u0\n";
  for (const auto& c : grid.cells) {
    out += format_double(c.x) + ',' + format_double(c.theta) + ',' +
           format_double(c.t_f) + ',' + std::string(to_string(c.region)) + ',' +
           format_double(c.u0) + '\n';
  }
  return out;
}

nlohmann::json hjb_report_json(const HjbReportd& report, double threshold) {
  return {{"max_residual", report.max_residual},
          {"argmax", {report.argmax_x, report.argmax_theta}},
          {"points_checked", report.points_checked},
          {"points_excluded", report.points_excluded},
          {"costate_sign_violations", report.costate_sign_violations},
          {"threshold", threshold},
          {"passed", report.passed(threshold)}};
}

}  // namespace dubins_escape::cli
