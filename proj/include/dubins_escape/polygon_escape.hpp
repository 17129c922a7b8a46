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

#ifndef DUBINS_ESCAPE_POLYGON_ESCAPE_HPP_
#define DUBINS_ESCAPE_POLYGON_ESCAPE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dubins_escape/control.hpp"
#include "dubins_escape/error.hpp"
#include "dubins_escape/geometry.hpp"
#include "dubins_escape/line_escape.hpp"
#include "dubins_escape/trajectory.hpp"

namespace dubins_escape {

template <typename Scalar>
struct EdgeReport {
  std::size_t edge_index = 0;
  LineLocalState<Scalar> local_state;
  LineEscapeSolution<Scalar> solution;
  Vector2<Scalar> exit_point_world = Vector2<Scalar>::Zero();
  // Exit point lies on the finite edge (with eps_geom slack) rather than
  // only on its supporting line.
  bool exit_on_segment = false;
  // Mirror-image solution of a vehicle on the edge's dispersal line.
  bool dispersal_alternate = false;
};

template <typename Scalar>
struct PolygonEscapeSolution {
  EdgeReport<Scalar> best;
  Scalar t_f = 0;
  ControlSchedule<Scalar> schedule;
  Scalar tie_tol = 0;
  // Every report (alternates included) within tie_tol of t_f, ordered by
  // edge index with primaries first.
  std::vector<EdgeReport<Scalar>> ties;
  // One primary report per edge, in edge order.
  std::vector<EdgeReport<Scalar>> per_edge;
  std::vector<EdgeReport<Scalar>> alternates;
};

namespace detail {

template <typename Scalar>
EdgeReport<Scalar> make_report(std::size_t edge_index,
                               const LineLocalState<Scalar>& local,
                               const LineEscapeSolution<Scalar>& solution,
                               const EdgeFrame<Scalar>& frame,
                               Scalar vehicle_tangential, Scalar edge_length,
                               Scalar eps, bool alternate) {
  EdgeReport<Scalar> r;
  r.edge_index = edge_index;
  r.local_state = local;
  r.solution = solution;
  const Scalar y_exit = vehicle_tangential + solution.y_f;
  r.exit_point_world = from_edge_frame(frame, Scalar(0), y_exit);
  r.exit_on_segment = y_exit >= -eps && y_exit <= edge_length + eps;
  r.dispersal_alternate = alternate;
  return r;
}

}  // namespace detail

// Minimum-time escape from a convex polygon: solve the line problem for
// every edge's supporting line and keep the fastest.
template <typename Scalar>
PolygonEscapeSolution<Scalar> solve_polygon(
    const GlobalPose<Scalar>& pose, const VehicleParams<Scalar>& params,
    const ConvexPolygon<Scalar>& polygon,
    std::optional<Scalar> tie_tol = std::nullopt) {
  if (tie_tol && !(std::isfinite(*tie_tol) && *tie_tol >= 0)) {
    throw EscapeError(ErrorCode::kInvalidArgument,
                      "tie tolerance must be finite and non-negative");
  }
  if (contains(polygon, pose.position) == Containment::kExterior) {
    throw EscapeError(ErrorCode::kOutsidePolygon,
                      "vehicle is outside the polygon");
  }
  LineTolerances<Scalar> tol;
  tol.eps_geom = polygon.eps_geom();

  PolygonEscapeSolution<Scalar> out;
  out.per_edge.reserve(polygon.edge_count());
  for (std::size_t i = 0; i < polygon.edge_count(); ++i) {
    const EdgeFrame<Scalar> frame = edge_frame(polygon, i);
    LineLocalState<Scalar> local = to_edge_frame(pose, frame);
    // Boundary poses can land marginally outside a supporting line.
    local.x = std::min(local.x, Scalar(0));
    const LineEscapeResult<Scalar> line = solve_line(local, params, tol);
    const auto [start, end] = polygon.edge(i);
    const Scalar length = (end - start).norm();
    const Scalar y_vehicle = tangential_offset(pose.position, frame);
    out.per_edge.push_back(detail::make_report(
        i, local, line.primary, frame, y_vehicle, length, tol.eps_geom, false));
    if (line.alternate) {
      out.alternates.push_back(detail::make_report(i, local, *line.alternate,
                                                   frame, y_vehicle, length,
                                                   tol.eps_geom, true));
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < out.per_edge.size(); ++i) {
    if (out.per_edge[i].solution.t_f < out.per_edge[best].solution.t_f) {
      best = i;
    }
  }
  out.best = out.per_edge[best];
  out.t_f = out.best.solution.t_f;
  out.schedule = out.best.solution.schedule;
  out.tie_tol = tie_tol ? *tie_tol : Scalar(1e-9) * std::max(Scalar(1), out.t_f);

  auto alt = out.alternates.begin();
  for (const auto& report : out.per_edge) {
    if (std::abs(report.solution.t_f - out.t_f) <= out.tie_tol) {
      out.ties.push_back(report);
    }
    for (; alt != out.alternates.end() &&
           alt->edge_index == report.edge_index;
         ++alt) {
      if (std::abs(alt->solution.t_f - out.t_f) <= out.tie_tol) {
        out.ties.push_back(*alt);
      }
    }
  }
  return out;
}

template <typename Scalar>
struct EscapeCertificate {
  bool passed = true;
  // Empty on success, otherwise a description of the first violation.
  std::string violation;
  Scalar violation_time = 0;
  std::size_t violation_edge = 0;
  // Largest signed offset over all edges along [0, t_f]; <= eps_geom when
  // the path stays in the closed polygon.
  Scalar max_offset = -std::numeric_limits<Scalar>::infinity();
  // Signed offset of the final position from the winning edge's line.
  Scalar terminal_offset = 0;
  // Velocity component along the winning edge's outward normal at t_f.
  Scalar exit_normal_speed = 0;
};

namespace detail {

// Maximum over t in [0, duration] of the signed offset from an edge line of
// a constant-control phase, evaluated analytically.
template <typename Scalar>
std::pair<Scalar, Scalar> phase_max_offset(const PlanarPose<Scalar>& start,
                                           Scalar u, Scalar duration,
                                           const EdgeFrame<Scalar>& frame,
                                           const VehicleParams<Scalar>& params) {
  const PlanarPose<Scalar> end = advance(start, u, duration, params);
  const Scalar d0 = normal_offset(start.position, frame);
  const Scalar d1 = normal_offset(end.position, frame);
  std::pair<Scalar, Scalar> peak =
      d0 >= d1 ? std::pair{d0, Scalar(0)} : std::pair{d1, duration};
  if (u == 0) return peak;

  // offset(phi) = A + rho sin(phi - alpha) along a circular arc.
  const Scalar rho = params.min_turn_radius() / u;
  const Scalar rate = u * params.max_turn_rate();
  const Scalar alpha = frame.normal_angle();
  const Scalar crit = alpha + (rho > 0 ? kPi<Scalar> : -kPi<Scalar>) / 2;
  const Scalar lo = std::min(start.heading, end.heading);
  const Scalar hi = std::max(start.heading, end.heading);
  const Scalar k = std::ceil((lo - crit) / kTwoPi<Scalar>);
  const Scalar phi = crit + k * kTwoPi<Scalar>;
  if (phi <= hi) {
    const Vector2<Scalar> center =
        start.position -
        rho * Vector2<Scalar>(std::sin(start.heading), -std::cos(start.heading));
    const Scalar value = normal_offset(center, frame) + std::abs(rho);
    if (value > peak.first) peak = {value, (phi - start.heading) / rate};
  }
  return peak;
}

}  // namespace detail

// Forward-propagates the winning schedule and checks that the vehicle stays
// in the closed polygon until t_f, sits on the winning edge's line at t_f
// and is moving outward there.
template <typename Scalar>
EscapeCertificate<Scalar> escape_certificate(
    const PolygonEscapeSolution<Scalar>& solution,
    const GlobalPose<Scalar>& pose, const VehicleParams<Scalar>& params,
    const ConvexPolygon<Scalar>& polygon) {
  const Scalar eps = polygon.eps_geom();
  EscapeCertificate<Scalar> cert;
  auto fail = [&](std::string what, Scalar t, std::size_t edge) {
    if (!cert.passed) return;
    cert.passed = false;
    cert.violation = std::move(what);
    cert.violation_time = t;
    cert.violation_edge = edge;
  };

  std::vector<EdgeFrame<Scalar>> frames;
  for (std::size_t i = 0; i < polygon.edge_count(); ++i) {
    frames.push_back(edge_frame(polygon, i));
  }

  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Scalar value = normal_offset(pose.position, frames[i]);
    cert.max_offset = std::max(cert.max_offset, value);
    if (value > eps) fail("containment: start outside polygon", 0, i);
  }

  PlanarPose<Scalar> phase_start = planar_pose(pose);
  Scalar elapsed = 0;
  for (const auto& phase : solution.schedule.phases) {
    const Scalar duration =
        std::clamp(solution.t_f - elapsed, Scalar(0), phase.duration);
    Scalar first_time = std::numeric_limits<Scalar>::infinity();
    std::size_t first_edge = 0;
    Scalar first_value = 0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const auto [value, t] = detail::phase_max_offset(phase_start, phase.u,
                                                       duration, frames[i],
                                                       params);
      cert.max_offset = std::max(cert.max_offset, value);
      if (value > eps && elapsed + t < first_time) {
        first_time = elapsed + t;
        first_edge = i;
        first_value = value;
      }
    }
    if (std::isfinite(first_time)) {
      fail("containment: offset " + std::to_string(first_value) +
               " beyond edge " + std::to_string(first_edge),
           first_time, first_edge);
    }
    phase_start = advance(phase_start, phase.u, duration, params);
    elapsed += duration;
  }

  const std::size_t win = solution.best.edge_index;
  const PlanarPose<Scalar> terminal =
      pose_at(planar_pose(pose), params, solution.schedule, solution.t_f);
  cert.terminal_offset = normal_offset(terminal.position, frames[win]);
  if (std::abs(cert.terminal_offset) > eps) {
    fail("boundary: final position is " + std::to_string(cert.terminal_offset) +
             " from edge " + std::to_string(win),
         solution.t_f, win);
  }
  cert.exit_normal_speed =
      params.speed() * Vector2<Scalar>(std::cos(terminal.heading),
                                       std::sin(terminal.heading))
                           .dot(frames[win].outward_normal);
  const bool outward = solution.t_f > 0 ? cert.exit_normal_speed > 0
                                        : cert.exit_normal_speed >= 0;
  if (!outward) {
    fail("direction: crossing is not outward", solution.t_f, win);
  }
  return cert;
}

using EdgeReportd = EdgeReport<double>;
using PolygonEscapeSolutiond = PolygonEscapeSolution<double>;
using EscapeCertificated = EscapeCertificate<double>;

}  // namespace dubins_escape

#endif  // DUBINS_ESCAPE_POLYGON_ESCAPE_HPP_
