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

#include "dubins_escape/cli/problem_io.hpp"

#include <cmath>
#include <initializer_list>
#include <string>
#include <utility>

namespace dubins_escape::cli {
namespace {

std::string child(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}

std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

void require_object(const json& node, const std::string& path) {
  if (!node.is_object()) {
    throw ValidationError("type-mismatch", path, "expected an object");
  }
}

void reject_unknown(const json& node, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : node.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) {
      throw ValidationError("unknown-field", child(path, key),
                            "unexpected field '" + key + "'");
    }
  }
}

double number_at(const json& node, const std::string& path) {
  if (!node.is_number()) {
    throw ValidationError("type-mismatch", path, "expected a number");
  }
  const double value = node.get<double>();
  if (!std::isfinite(value)) {
    throw ValidationError("non-finite", path, "number must be finite");
  }
  return value;
}

double required_number(const json& parent, std::string_view key,
                       const std::string& path) {
  const auto it = parent.find(std::string(key));
  if (it == parent.end()) {
    throw ValidationError("missing-field", child(path, key),
                          "missing required field '" + std::string(key) + "'");
  }
  return number_at(*it, child(path, key));
}

Vector2d point_at(const json& node, const std::string& path) {
  if (!node.is_array() || node.size() != 2) {
    throw ValidationError("type-mismatch", path, "expected [x, y]");
  }
  return {number_at(node[0], child(path, std::size_t{0})),
          number_at(node[1], child(path, std::size_t{1}))};
}

Vector2d required_point(const json& parent, std::string_view key,
                        const std::string& path) {
  const auto it = parent.find(std::string(key));
  if (it == parent.end()) {
    throw ValidationError("missing-field", child(path, key),
                          "missing required field '" + std::string(key) + "'");
  }
  return point_at(*it, child(path, key));
}

json point_json(const Vector2d& p) { return json::array({p.x(), p.y()}); }

}  // namespace

ProblemInstance parse_problem(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"vehicle", "polygon", "line", "options"});
  ProblemInstance instance;

  const auto vehicle = doc.find("vehicle");
  if (vehicle == doc.end()) {
    throw ValidationError("missing-field", "/vehicle",
                          "missing required field 'vehicle'");
  }
  require_object(*vehicle, "/vehicle");
  reject_unknown(*vehicle, "/vehicle",
                 {"x", "y", "heading_rad", "speed", "min_turn_radius"});
  VehicleSpec& v = instance.vehicle;
  v.x = required_number(*vehicle, "x", "/vehicle");
  v.y = required_number(*vehicle, "y", "/vehicle");
  v.heading_rad = required_number(*vehicle, "heading_rad", "/vehicle");
  v.speed = required_number(*vehicle, "speed", "/vehicle");
  v.min_turn_radius = required_number(*vehicle, "min_turn_radius", "/vehicle");
  if (!(v.speed > 0)) {
    throw ValidationError("out-of-range", "/vehicle/speed",
                          "speed must be positive");
  }
  if (!(v.min_turn_radius > 0)) {
    throw ValidationError("out-of-range", "/vehicle/min_turn_radius",
                          "min_turn_radius must be positive");
  }

  const bool has_polygon = doc.contains("polygon");
  const bool has_line = doc.contains("line");
  if (has_polygon == has_line) {
    throw ValidationError(
        has_polygon ? "conflicting-fields" : "missing-field",
        has_polygon ? "/line" : "",
        "exactly one of 'polygon' or 'line' must be present");
  }
  if (has_polygon) {
    const json& poly = doc.at("polygon");
    require_object(poly, "/polygon");
    reject_unknown(poly, "/polygon", {"vertices"});
    const auto vertices = poly.find("vertices");
    if (vertices == poly.end()) {
      throw ValidationError("missing-field", "/polygon/vertices",
                            "missing required field 'vertices'");
    }
    if (!vertices->is_array()) {
      throw ValidationError("type-mismatch", "/polygon/vertices",
                            "expected an array of [x, y]");
    }
    std::vector<Vector2d> points;
    for (std::size_t i = 0; i < vertices->size(); ++i) {
      points.push_back(point_at((*vertices)[i], child("/polygon/vertices", i)));
    }
    instance.polygon = std::move(points);
  } else {
    const json& line = doc.at("line");
    require_object(line, "/line");
    reject_unknown(line, "/line", {"point", "outward_normal"});
    LineSpec spec;
    spec.point = required_point(line, "point", "/line");
    spec.outward_normal = required_point(line, "outward_normal", "/line");
    if (!(spec.outward_normal.norm() > 0)) {
      throw ValidationError("out-of-range", "/line/outward_normal",
                            "outward_normal must be non-zero");
    }
    instance.line = spec;
  }

  if (const auto options = doc.find("options"); options != doc.end()) {
    require_object(*options, "/options");
    reject_unknown(*options, "/options", {"tie_tol", "sample_dt", "seed"});
    if (options->contains("tie_tol")) {
      const double tol = number_at(options->at("tie_tol"), "/options/tie_tol");
      if (tol < 0) {
        throw ValidationError("out-of-range", "/options/tie_tol",
                              "tie_tol must be non-negative");
      }
      instance.options.tie_tol = tol;
    }
    if (options->contains("sample_dt")) {
      const double dt = number_at(options->at("sample_dt"), "/options/sample_dt");
      if (!(dt > 0)) {
        throw ValidationError("out-of-range", "/options/sample_dt",
                              "sample_dt must be positive");
      }
      instance.options.sample_dt = dt;
    }
    if (options->contains("seed")) {
      const json& seed = options->at("seed");
      if (!seed.is_number_integer()) {
        throw ValidationError("type-mismatch", "/options/seed",
                              "seed must be an integer");
      }
      instance.options.seed = seed.get<std::int64_t>();
    }
  }
  return instance;
}

ProblemInstance parse_problem_text(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded()) {
    throw ValidationError("malformed-json", "", "input is not valid JSON");
  }
  return parse_problem(doc);
}

json to_json(const ProblemInstance& instance) {
  json doc;
  const VehicleSpec& v = instance.vehicle;
  doc["vehicle"] = {{"x", v.x},
                    {"y", v.y},
                    {"heading_rad", v.heading_rad},
                    {"speed", v.speed},
                    {"min_turn_radius", v.min_turn_radius}};
  if (instance.polygon) {
    json vertices = json::array();
    for (const auto& p : *instance.polygon) vertices.push_back(point_json(p));
    doc["polygon"] = {{"vertices", vertices}};
  }
  if (instance.line) {
    doc["line"] = {{"point", point_json(instance.line->point)},
                   {"outward_normal", point_json(instance.line->outward_normal)}};
  }
  json options = json::object();
  if (instance.options.tie_tol) options["tie_tol"] = *instance.options.tie_tol;
  if (instance.options.sample_dt) options["sample_dt"] = *instance.options.sample_dt;
  if (instance.options.seed) options["seed"] = *instance.options.seed;
  if (!options.empty()) doc["options"] = options;
  return doc;
}

ConvexPolygond instance_polygon(const ProblemInstance& instance) {
  if (!instance.polygon) {
    throw ValidationError("missing-field", "/polygon",
                          "instance has no polygon");
  }
  try {
    return validate_polygon(*instance.polygon);
  } catch (const EscapeError& e) {
    throw ValidationError(std::string(to_string(e.code())), "/polygon/vertices",
                          e.what());
  }
}

LineProblemSolution solve_line_problem(const ProblemInstance& instance) {
  if (!instance.line) {
    throw ValidationError("missing-field", "/line", "instance has no line");
  }
  LineProblemSolution out;
  out.frame = make_line_frame(instance.line->point, instance.line->outward_normal);
  const GlobalPosed pose = instance.vehicle.pose();
  out.local = to_edge_frame(pose, out.frame);
  out.result = solve_line(out.local, instance.vehicle.params());
  const double y_vehicle = tangential_offset(pose.position, out.frame);
  out.exit_point =
      from_edge_frame(out.frame, 0.0, y_vehicle + out.result.primary.y_f);
  if (out.result.alternate) {
    out.alternate_exit_point =
        from_edge_frame(out.frame, 0.0, y_vehicle + out.result.alternate->y_f);
  }
  out.final_heading_world =
      world_heading(out.frame, out.result.primary.theta_f);
  return out;
}

PolygonEscapeSolutiond solve_polygon_problem(const ProblemInstance& instance,
                                             const ConvexPolygond& polygon,
                                             std::optional<double> tie_tol) {
  if (!tie_tol) tie_tol = instance.options.tie_tol;
  return solve_polygon(instance.vehicle.pose(), instance.vehicle.params(),
                       polygon, tie_tol);
}

json strategy_json(const StrategyKind& strategy) {
  return {{"kind", std::string(to_string(strategy.type))},
          {"direction", strategy.direction}};
}

json schedule_json(const ControlScheduled& schedule) {
  json phases = json::array();
  for (const auto& p : schedule.phases) {
    phases.push_back({{"u", p.u}, {"duration", p.duration}});
  }
  return phases;
}

namespace {

json local_state_json(const LineLocalStated& s) {
  return {{"x", s.x}, {"theta", s.theta}};
}

json header(const ProblemInstance& instance, std::string_view mode) {
  json doc;
  doc["tool_version"] = tool_version();
  doc["mode"] = std::string(mode);
  if (instance.options.seed) doc["seed"] = *instance.options.seed;
  return doc;
}

json edge_report_json(const EdgeReportd& r) {
  return {{"edge_index", r.edge_index},
          {"escape_time", r.solution.t_f},
          {"strategy", strategy_json(r.solution.strategy)},
          {"region", std::string(to_string(r.solution.region))},
          {"exit_point", point_json(r.exit_point_world)},
          {"exit_on_segment", r.exit_on_segment},
          {"local_state", local_state_json(r.local_state)}};
}

}  // namespace

json line_solution_document(const ProblemInstance& instance,
                            const LineProblemSolution& solution) {
  const LineEscapeSolutiond& best = solution.result.primary;
  json doc = header(instance, "line");
  doc["escape_time"] = best.t_f;
  doc["strategy"] = strategy_json(best.strategy);
  doc["region"] = std::string(to_string(best.region));
  doc["exit_point"] = point_json(solution.exit_point);
  doc["final_heading_rad"] = solution.final_heading_world;
  doc["local_state"] = local_state_json(solution.local);
  doc["control_schedule"] = schedule_json(best.schedule);
  json ties = json::array();
  ties.push_back({{"escape_time", best.t_f},
                  {"strategy", strategy_json(best.strategy)},
                  {"exit_point", point_json(solution.exit_point)}});
  if (solution.result.alternate) {
    const auto& alt = *solution.result.alternate;
    ties.push_back({{"escape_time", alt.t_f},
                    {"strategy", strategy_json(alt.strategy)},
                    {"exit_point", point_json(solution.alternate_exit_point)}});
  }
  doc["ties"] = ties;
  return doc;
}

json polygon_solution_document(const ProblemInstance& instance,
                               const ConvexPolygond& polygon,
                               const PolygonEscapeSolutiond& solution,
                               const std::optional<EscapeCertificated>& cert) {
  const EdgeReportd& best = solution.best;
  json doc = header(instance, "polygon");
  doc["escape_time"] = solution.t_f;
  doc["strategy"] = strategy_json(best.solution.strategy);
  doc["region"] = std::string(to_string(best.solution.region));
  doc["edge_index"] = best.edge_index;
  doc["exit_point"] = point_json(best.exit_point_world);
  doc["final_heading_rad"] =
      world_heading(edge_frame(polygon, best.edge_index), best.solution.theta_f);
  doc["control_schedule"] = schedule_json(solution.schedule);
  doc["tie_tol"] = solution.tie_tol;
  json ties = json::array();
  for (const auto& t : solution.ties) {
    ties.push_back({{"edge_index", t.edge_index},
                    {"escape_time", t.solution.t_f},
                    {"strategy", strategy_json(t.solution.strategy)},
                    {"exit_point", point_json(t.exit_point_world)},
                    {"dispersal_alternate", t.dispersal_alternate}});
  }
  doc["ties"] = ties;
  json per_edge = json::array();
  for (const auto& r : solution.per_edge) per_edge.push_back(edge_report_json(r));
  doc["per_edge"] = per_edge;
  if (cert) {
    doc["certificate"] = {{"passed", cert->passed},
                          {"violation", cert->violation},
                          {"max_offset", cert->max_offset},
                          {"terminal_offset", cert->terminal_offset},
                          {"exit_normal_speed", cert->exit_normal_speed}};
  }
  return doc;
}

std::string tool_version() { return DUBINS_ESCAPE_VERSION; }

}  // namespace dubins_escape::cli
