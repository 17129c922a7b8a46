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

#include "dubins_escape/cli/app.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "dubins_escape/cli/artifacts.hpp"
#include "dubins_escape/cli/problem_io.hpp"

namespace dubins_escape::cli {
namespace {

class CommandError : public std::runtime_error {
 public:
  CommandError(int exit_code, std::string code, std::string path,
               const std::string& message)
      : std::runtime_error(message),
        exit_code_(exit_code),
        code_(std::move(code)),
        path_(std::move(path)) {}

  int exit_code() const { return exit_code_; }
  const std::string& code() const { return code_; }
  const std::string& path() const { return path_; }

 private:
  int exit_code_;
  std::string code_;
  std::string path_;
};

struct IoOptions {
  std::string input = "-";
  std::string output = "-";
  std::optional<std::int64_t> seed;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

void write_error(std::ostream& err, const std::string& code,
                 const std::string& path, const std::string& message) {
  const json doc = {{"error", {{"code", code}, {"path", path}, {"message", message}}}};
  err << doc.dump() << '\n';
}

std::string read_input(const std::string& input, std::istream& in) {
  if (input == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(input, std::ios::binary);
  if (!file) {
    throw CommandError(kExitValidation, "io-error", "",
                       "cannot open input file " + input);
  }
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& output, std::ostream& out,
                  const std::string& text) {
  if (output == "-") {
    out << text;
    return;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file) {
    throw CommandError(kExitValidation, "io-error", "",
                       "cannot open output file " + output);
  }
  file << text;
}

ProblemInstance load_instance(const IoOptions& io, std::istream& in) {
  ProblemInstance instance = parse_problem_text(read_input(io.input, in));
  if (io.seed) instance.options.seed = io.seed;
  return instance;
}

std::pair<double, double> parse_range(const std::string& text,
                                      const std::string& flag) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::string lo_text = text.substr(0, comma);
    const std::string hi_text = text.substr(comma + 1);
    const double lo = std::stod(lo_text, &used_lo);
    const double hi = std::stod(hi_text, &used_hi);
    if (used_lo != lo_text.size() || used_hi != hi_text.size()) {
      throw std::invalid_argument(text);
    }
    return {lo, hi};
  } catch (const std::exception&) {
    throw CommandError(kExitValidation, "invalid-flag", flag,
                       flag + " expects LO,HI");
  }
}

int domain_exit(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTooFewVertices:
    case ErrorCode::kDegenerateEdge:
    case ErrorCode::kNonConvex:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvalidGrid:
      return kExitValidation;
    default:
      return kExitDomain;
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

int cmd_solve_line(const IoOptions& io, const Streams& s) {
  const ProblemInstance instance = load_instance(io, s.in);
  const LineProblemSolution solution = solve_line_problem(instance);
  write_output(io.output, s.out, dump(line_solution_document(instance, solution)));
  return kExitOk;
}

int cmd_solve_polygon(const IoOptions& io, std::optional<double> tie_tol,
                      bool certify, const Streams& s) {
  const ProblemInstance instance = load_instance(io, s.in);
  const ConvexPolygond polygon = instance_polygon(instance);
  const PolygonEscapeSolutiond solution =
      solve_polygon_problem(instance, polygon, tie_tol);
  std::optional<EscapeCertificated> cert;
  if (certify) {
    cert = escape_certificate(solution, instance.vehicle.pose(),
                              instance.vehicle.params(), polygon);
  }
  write_output(io.output, s.out,
               dump(polygon_solution_document(instance, polygon, solution, cert)));
  if (cert && !cert->passed) {
    write_error(s.err, "certificate-failure", "", cert->violation);
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_trace(const IoOptions& io, std::optional<double> dt,
              std::optional<double> tie_tol, const std::string& format,
              const Streams& s) {
  const ProblemInstance instance = load_instance(io, s.in);
  const GlobalPosed pose = instance.vehicle.pose();
  const VehicleParamsd params = instance.vehicle.params();
  if (!dt) dt = instance.options.sample_dt;

  SvgScene scene;
  scene.start = pose;
  scene.min_turn_radius = params.min_turn_radius();
  ControlScheduled best;
  std::vector<ControlScheduled> ties;
  double t_f = 0;
  if (instance.polygon) {
    const ConvexPolygond polygon = instance_polygon(instance);
    const auto solution = solve_polygon_problem(instance, polygon, tie_tol);
    best = solution.schedule;
    t_f = solution.t_f;
    for (const auto& t : solution.ties) ties.push_back(t.solution.schedule);
    scene.polygon = polygon.vertices();
  } else {
    const auto solution = solve_line_problem(instance);
    best = solution.result.primary.schedule;
    t_f = solution.result.primary.t_f;
    ties.push_back(best);
    if (solution.result.alternate) {
      ties.push_back(solution.result.alternate->schedule);
    }
    scene.line = solution.frame;
  }
  const double sample_dt = dt ? *dt : (t_f > 0 ? t_f / 256 : 1.0);
  if (!(sample_dt > 0)) {
    throw CommandError(kExitValidation, "invalid-flag", "--dt",
                       "--dt must be positive");
  }
  scene.optimal_path = propagate(pose, params, best, sample_dt);
  for (const auto& schedule : ties) {
    scene.tie_paths.push_back(propagate(pose, params, schedule, sample_dt));
  }

  std::string text;
  if (format == "csv") {
    text = trace_csv(scene.optimal_path);
  } else if (format == "json") {
    text = dump(trace_json(scene.optimal_path));
  } else {
    text = render_svg(scene);
  }
  write_output(io.output, s.out, text);
  return kExitOk;
}

struct FlowfieldFlags {
  std::string x_range = "-3,0";
  std::string theta_range;
  int nx = 50;
  int ntheta = 50;
  double speed = 1;
  double radius = 1;
  bool check_hjb = false;
  double hjb_spacing = 1e-3;
  double hjb_threshold = 1e-4;
  std::string format = "json";
};

int cmd_flowfield(const IoOptions& io, const FlowfieldFlags& f,
                  const Streams& s) {
  FlowfieldSpec spec;
  std::tie(spec.x_min, spec.x_max) = parse_range(f.x_range, "--x-range");
  if (!f.theta_range.empty()) {
    std::tie(spec.theta_min, spec.theta_max) =
        parse_range(f.theta_range, "--theta-range");
  }
  if (spec.x_max > 0 || spec.x_min > 0) {
    throw CommandError(kExitValidation, "out-of-range", "--x-range",
                       "x range must satisfy x <= 0");
  }
  spec.nx = f.nx;
  spec.ntheta = f.ntheta;
  spec.speed = f.speed;
  spec.min_turn_radius = f.radius;
  // Parameter validation happens in VehicleParams.
  const VehicleParamsd params(spec.speed, spec.min_turn_radius);
  const FlowfieldGrid grid = make_flowfield(spec);

  std::optional<HjbReportd> report;
  if (f.check_hjb) {
    HjbGridd hjb_grid{spec.x_min, spec.x_max, spec.theta_min, spec.theta_max,
                      f.hjb_spacing};
    report = hjb_residual(hjb_grid, params);
  }
  if (f.format == "csv") {
    write_output(io.output, s.out, flowfield_csv(grid));
    if (report) s.err << hjb_report_json(*report, f.hjb_threshold).dump() << '\n';
  } else {
    json doc = flowfield_json(grid);
    if (report) doc["hjb"] = hjb_report_json(*report, f.hjb_threshold);
    write_output(io.output, s.out, dump(doc));
  }
  if (report && !report->passed(f.hjb_threshold)) {
    write_error(s.err, "hjb-residual", "",
                "HJB residual check failed (max residual " +
                    format_double(report->max_residual) + ")");
    return kExitVerification;
  }
  return kExitOk;
}

void add_io(CLI::App* cmd, IoOptions& io) {
  cmd->add_option("--input", io.input, "Problem JSON path or - for stdin");
  cmd->add_option("--output", io.output, "Output path or - for stdout");
  cmd->add_option("--seed", io.seed, "Seed recorded in the output document");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-time escape of a Dubins vehicle from a line or convex polygon",
               "dubins-escape"};
  app.require_subcommand(1);

  IoOptions io;
  std::optional<double> tie_tol;
  std::optional<double> dt;
  bool certify = false;
  std::string trace_format = "csv";
  FlowfieldFlags flow;

  auto* solve_line_cmd = app.add_subcommand("solve-line", "Escape an infinite line");
  add_io(solve_line_cmd, io);

  auto* solve_polygon_cmd =
      app.add_subcommand("solve-polygon", "Escape a convex polygon");
  add_io(solve_polygon_cmd, io);
  solve_polygon_cmd->add_option("--tie-tol", tie_tol, "Absolute tie tolerance");
  solve_polygon_cmd->add_flag("--certify", certify,
                              "Verify the path by forward propagation");

  auto* trace_cmd = app.add_subcommand("trace", "Sample the optimal path");
  add_io(trace_cmd, io);
  trace_cmd->add_option("--dt", dt, "Sample spacing (default t_f / 256)");
  trace_cmd->add_option("--tie-tol", tie_tol, "Absolute tie tolerance");
  trace_cmd->add_option("--format", trace_format, "csv, json or svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}));

  auto* flow_cmd =
      app.add_subcommand("flowfield", "Tabulate the line-escape flowfield");
  flow_cmd->add_option("--output", io.output, "Output path or - for stdout");
  flow_cmd->add_option("--x-range", flow.x_range, "LO,HI (x <= 0)");
  flow_cmd->add_option("--theta-range", flow.theta_range,
                       "LO,HI in radians (default: full turn)");
  flow_cmd->add_option("--nx", flow.nx, "Number of x samples (>= 2)");
  flow_cmd->add_option("--ntheta", flow.ntheta, "Number of theta samples (>= 2)");
  flow_cmd->add_option("--v", flow.speed, "Vehicle speed");
  flow_cmd->add_option("--R", flow.radius, "Minimum turn radius");
  flow_cmd->add_flag("--check-hjb", flow.check_hjb,
                     "Check the HJB residual over the same ranges");
  flow_cmd->add_option("--hjb-spacing", flow.hjb_spacing,
                       "Finite-difference spacing for --check-hjb");
  flow_cmd->add_option("--hjb-threshold", flow.hjb_threshold,
                       "Maximum admissible HJB residual");
  flow_cmd->add_option("--format", flow.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "usage", "", e.what());
    return kExitValidation;
  }

  const Streams streams{in, out, err};
  try {
    if (solve_line_cmd->parsed()) return cmd_solve_line(io, streams);
    if (solve_polygon_cmd->parsed()) {
      return cmd_solve_polygon(io, tie_tol, certify, streams);
    }
    if (trace_cmd->parsed()) {
      return cmd_trace(io, dt, tie_tol, trace_format, streams);
    }
    return cmd_flowfield(io, flow, streams);
  } catch (const ValidationError& e) {
    write_error(err, e.code(), e.path(), e.what());
    return kExitValidation;
  } catch (const CommandError& e) {
    write_error(err, e.code(), e.path(), e.what());
    return e.exit_code();
  } catch (const EscapeError& e) {
    write_error(err, std::string(to_string(e.code())), "", e.what());
    return domain_exit(e.code());
  }
}

}  // namespace dubins_escape::cli
