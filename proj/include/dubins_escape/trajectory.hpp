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

#ifndef DUBINS_ESCAPE_TRAJECTORY_HPP_
#define DUBINS_ESCAPE_TRAJECTORY_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "dubins_escape/control.hpp"
#include "dubins_escape/error.hpp"
#include "dubins_escape/geometry.hpp"

namespace dubins_escape {

// Planar pose with an unwrapped heading, used while integrating.
template <typename Scalar>
struct PlanarPose {
  Vector2<Scalar> position = Vector2<Scalar>::Zero();
  Scalar heading = 0;
};

// A line-local state is the pose ((x, 0), theta) in the line frame.
template <typename Scalar>
PlanarPose<Scalar> planar_pose(const LineLocalState<Scalar>& state) {
  return {Vector2<Scalar>(state.x, 0), state.theta};
}

template <typename Scalar>
PlanarPose<Scalar> planar_pose(const GlobalPose<Scalar>& pose) {
  return {pose.position, pose.heading};
}

// Exact flow of x' = v cos h, y' = v sin h, h' = (v / R) u for time dt.
// A negative dt integrates the retrograde system.
template <typename Scalar>
PlanarPose<Scalar> advance(const PlanarPose<Scalar>& pose, Scalar u, Scalar dt,
                           const VehicleParams<Scalar>& params) {
  const Scalar v = params.speed();
  PlanarPose<Scalar> out;
  if (u == 0) {
    out.heading = pose.heading;
    out.position = pose.position + v * dt *
                                       Vector2<Scalar>(std::cos(pose.heading),
                                                       std::sin(pose.heading));
    return out;
  }
  const Scalar delta = u * params.max_turn_rate() * dt;
  const Scalar rho = params.min_turn_radius() / u;
  // sin(h1) - sin(h0) and cos(h0) - cos(h1) in product form, which keeps
  // short arcs accurate.
  const Scalar mid = pose.heading + delta / 2;
  const Scalar half = 2 * std::sin(delta / 2);
  out.heading = pose.heading + delta;
  out.position = pose.position +
                 rho * half * Vector2<Scalar>(std::cos(mid), std::sin(mid));
  return out;
}

template <typename Scalar>
struct PathSample {
  Scalar t = 0;
  Vector2<Scalar> position = Vector2<Scalar>::Zero();
  // Wrapped to (-pi, pi].
  Scalar heading = 0;
  Scalar u = 0;
};

// Pose reached after following the schedule for time t (clamped to the
// schedule's total duration).
template <typename Scalar>
PlanarPose<Scalar> pose_at(const PlanarPose<Scalar>& start,
                           const VehicleParams<Scalar>& params,
                           const ControlSchedule<Scalar>& schedule, Scalar t) {
  PlanarPose<Scalar> pose = start;
  Scalar elapsed = 0;
  for (const auto& phase : schedule.phases) {
    if (t <= elapsed + phase.duration) {
      return advance(pose, phase.u, std::max(Scalar(0), t - elapsed), params);
    }
    pose = advance(pose, phase.u, phase.duration, params);
    elapsed += phase.duration;
  }
  return pose;
}

// Samples the path at every multiple of sample_dt plus the exact phase
// endpoints. Each sample is evaluated in closed form from its phase start.
template <typename Scalar>
std::vector<PathSample<Scalar>> propagate(
    const PlanarPose<Scalar>& start, const VehicleParams<Scalar>& params,
    const ControlSchedule<Scalar>& schedule, Scalar sample_dt) {
  if (!(sample_dt > 0) || !std::isfinite(sample_dt)) {
    throw EscapeError(ErrorCode::kInvalidArgument,
                      "sample_dt must be finite and positive");
  }
  for (const auto& phase : schedule.phases) {
    if (!(phase.duration >= 0) || !std::isfinite(phase.duration) ||
        !(std::abs(phase.u) <= 1)) {
      throw EscapeError(ErrorCode::kInvalidArgument, "invalid control phase");
    }
  }
  const Scalar merge_tol = Scalar(1e-9) * sample_dt;
  std::vector<PathSample<Scalar>> samples;
  auto push = [&](Scalar t, const PlanarPose<Scalar>& pose, Scalar u) {
    if (!samples.empty() && t - samples.back().t <= merge_tol) {
      // Coincident with the previous sample; keep the exact endpoint.
      samples.back().t = t;
      samples.back().position = pose.position;
      samples.back().heading = wrap_angle(pose.heading);
      return;
    }
    samples.push_back({t, pose.position, wrap_angle(pose.heading), u});
  };

  const Scalar first_u =
      schedule.phases.empty() ? Scalar(0) : schedule.phases.front().u;
  push(Scalar(0), start, first_u);
  PlanarPose<Scalar> phase_start = start;
  Scalar t0 = 0;
  std::size_t k = 1;
  for (const auto& phase : schedule.phases) {
    const Scalar t1 = t0 + phase.duration;
    for (; static_cast<Scalar>(k) * sample_dt < t1 - merge_tol; ++k) {
      const Scalar t = static_cast<Scalar>(k) * sample_dt;
      if (t <= t0) continue;
      push(t, advance(phase_start, phase.u, t - t0, params), phase.u);
    }
    phase_start = advance(phase_start, phase.u, phase.duration, params);
    push(t1, phase_start, phase.u);
    t0 = t1;
  }
  return samples;
}

template <typename Scalar>
std::vector<PathSample<Scalar>> propagate(
    const LineLocalState<Scalar>& start, const VehicleParams<Scalar>& params,
    const ControlSchedule<Scalar>& schedule, Scalar sample_dt) {
  return propagate(planar_pose(start), params, schedule, sample_dt);
}

template <typename Scalar>
std::vector<PathSample<Scalar>> propagate(
    const GlobalPose<Scalar>& start, const VehicleParams<Scalar>& params,
    const ControlSchedule<Scalar>& schedule, Scalar sample_dt) {
  return propagate(planar_pose(start), params, schedule, sample_dt);
}

// Integrates the retrograde system backwards through the schedule, starting
// from the terminal pose.
template <typename Scalar>
PlanarPose<Scalar> retrograde(const PlanarPose<Scalar>& terminal,
                              const VehicleParams<Scalar>& params,
                              const ControlSchedule<Scalar>& schedule) {
  PlanarPose<Scalar> pose = terminal;
  for (auto it = schedule.phases.rbegin(); it != schedule.phases.rend(); ++it) {
    pose = advance(pose, it->u, -it->duration, params);
  }
  return pose;
}

template <typename Scalar>
struct LineCrossing {
  Scalar t = 0;
  Scalar y = 0;
  Scalar heading = 0;
};

namespace detail {

// Earliest outward crossing of x = 0 within one constant-control phase.
template <typename Scalar>
std::optional<LineCrossing<Scalar>> phase_crossing(
    const PlanarPose<Scalar>& pose, Scalar u, Scalar duration,
    const VehicleParams<Scalar>& params) {
  const Scalar x0 = pose.position.x();
  const Scalar y0 = pose.position.y();
  const Scalar h0 = pose.heading;
  const Scalar v = params.speed();
  if (x0 > 0 || (x0 == 0 && std::cos(h0) > 0)) {
    return LineCrossing<Scalar>{0, y0, h0};
  }
  const Scalar slack = Scalar(1e-9) * std::max(Scalar(1), duration);
  if (u == 0) {
    const Scalar c = std::cos(h0);
    if (!(c > 0)) return std::nullopt;
    const Scalar t = -x0 / (v * c);
    if (t > duration + slack) return std::nullopt;
    return LineCrossing<Scalar>{t, y0 + v * std::sin(h0) * t, h0};
  }
  const Scalar rho = params.min_turn_radius() / u;
  const Scalar cx = x0 - rho * std::sin(h0);
  const Scalar cy = y0 + rho * std::cos(h0);
  const Scalar target = -cx / rho;
  if (std::abs(target) > 1) return std::nullopt;
  // Upward crossings have cos(phi) >= 0.
  const Scalar phi = std::asin(target);
  const Scalar turn_sign = u > 0 ? Scalar(1) : Scalar(-1);
  Scalar sweep = std::fmod(turn_sign * (phi - h0), kTwoPi<Scalar>);
  if (sweep < 0) sweep += kTwoPi<Scalar>;
  if (sweep >= kTwoPi<Scalar> - Scalar(1e-12)) sweep = 0;
  const Scalar t = sweep / (std::abs(u) * params.max_turn_rate());
  if (t > duration + slack) return std::nullopt;
  return LineCrossing<Scalar>{t, cy - rho * std::cos(phi),
                              h0 + turn_sign * sweep};
}

}  // namespace detail

// Earliest crossing of the line x = 0 (line-local frame) by the scheduled
// path, solved analytically per phase.
template <typename Scalar>
LineCrossing<Scalar> line_crossing(const PlanarPose<Scalar>& start,
                                   const VehicleParams<Scalar>& params,
                                   const ControlSchedule<Scalar>& schedule) {
  PlanarPose<Scalar> pose = start;
  Scalar elapsed = 0;
  for (const auto& phase : schedule.phases) {
    if (auto hit = detail::phase_crossing(pose, phase.u, phase.duration,
                                          params)) {
      return {elapsed + hit->t, hit->y, wrap_angle(hit->heading)};
    }
    pose = advance(pose, phase.u, phase.duration, params);
    elapsed += phase.duration;
  }
  if (pose.position.x() >= 0 && schedule.phases.empty() &&
      std::cos(pose.heading) >= 0) {
    return {0, pose.position.y(), wrap_angle(pose.heading)};
  }
  throw EscapeError(ErrorCode::kNoCrossing,
                    "schedule ends before reaching the line");
}

template <typename Scalar>
LineCrossing<Scalar> line_crossing(const LineLocalState<Scalar>& start,
                                   const VehicleParams<Scalar>& params,
                                   const ControlSchedule<Scalar>& schedule) {
  return line_crossing(planar_pose(start), params, schedule);
}

template <typename Scalar>
struct OracleResult {
  Scalar t_best = 0;
  // -1 or +1 for the first hard turn, 0 when the best path starts straight.
  int first_turn_sign = 0;
  Scalar turn_duration = 0;
  // Bound on |t_best - t_true| from grid resolution and refinement.
  Scalar tolerance = 0;
};

// Brute-force minimum time to the line x = 0 over all single hard turn
// (either direction, any duration up to a full circle) optionally followed
// by a straight run. Uses only the vehicle kinematics, not the closed-form
// synthesis.
template <typename Scalar>
OracleResult<Scalar> oracle_min_time(const LineLocalState<Scalar>& state,
                                     const VehicleParams<Scalar>& params,
                                     int grid_n = 4096) {
  if (grid_n < 100) {
    throw EscapeError(ErrorCode::kInvalidArgument, "grid_n must be >= 100");
  }
  if (!(state.x <= 0)) {
    throw EscapeError(ErrorCode::kOutsideHalfPlane, "oracle needs x <= 0");
  }
  const Scalar v = params.speed();
  const Scalar radius = params.min_turn_radius();
  const Scalar horizon = kTwoPi<Scalar> * radius / v;
  const Scalar step = horizon / static_cast<Scalar>(grid_n - 1);
  constexpr Scalar kRefineTol = Scalar(1e-10);

  OracleResult<Scalar> best;
  best.tolerance = std::max(kRefineTol, v * step * step / (2 * radius));
  best.t_best = std::numeric_limits<Scalar>::infinity();

  const PlanarPose<Scalar> start = planar_pose(state);
  if (state.x == 0 && std::cos(state.theta) >= 0) {
    best.t_best = 0;
    return best;
  }

  auto consider = [&](Scalar t, int sign, Scalar tau) {
    if (t < best.t_best) {
      best.t_best = t;
      best.turn_duration = tau;
      best.first_turn_sign = tau > Scalar(1e-9) * horizon ? sign : 0;
    }
  };

  for (const int sign : {-1, 1}) {
    const Scalar u = static_cast<Scalar>(sign);
    auto arc_x = [&](Scalar tau) {
      return advance(start, u, tau, params).position.x();
    };
    // Arc, then straight to the line if still inside and heading outward.
    auto straight_time = [&](Scalar tau) {
      const PlanarPose<Scalar> p = advance(start, u, tau, params);
      const Scalar c = std::cos(p.heading);
      if (p.position.x() < 0 && c > 0) return tau - p.position.x() / (v * c);
      return std::numeric_limits<Scalar>::infinity();
    };

    std::size_t last = static_cast<std::size_t>(grid_n - 1);
    for (std::size_t k = 1; k < static_cast<std::size_t>(grid_n); ++k) {
      const Scalar tau = static_cast<Scalar>(k) * step;
      if (arc_x(tau) >= 0) {
        Scalar lo = static_cast<Scalar>(k - 1) * step;
        Scalar hi = tau;
        for (int it = 0; it < 200 && hi - lo > 0; ++it) {
          const Scalar mid = lo + (hi - lo) / 2;
          if (mid <= lo || mid >= hi) break;
          (arc_x(mid) < 0 ? lo : hi) = mid;
        }
        consider(hi, sign, hi);
        last = k;
        break;
      }
    }

    std::size_t k_best = 0;
    Scalar f_best = std::numeric_limits<Scalar>::infinity();
    for (std::size_t k = 0; k <= last; ++k) {
      const Scalar f = straight_time(static_cast<Scalar>(k) * step);
      if (f < f_best) {
        f_best = f;
        k_best = k;
      }
    }
    if (!std::isfinite(f_best)) continue;
    consider(f_best, sign, static_cast<Scalar>(k_best) * step);

    // Golden-section refinement around the best grid point.
    constexpr Scalar kInvPhi = Scalar(0.6180339887498948482);
    Scalar a = static_cast<Scalar>(k_best == 0 ? 0 : k_best - 1) * step;
    Scalar b = static_cast<Scalar>(std::min(k_best + 1, last)) * step;
    Scalar c = b - kInvPhi * (b - a);
    Scalar d = a + kInvPhi * (b - a);
    Scalar fc = straight_time(c);
    Scalar fd = straight_time(d);
    while (b - a > kRefineTol) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = straight_time(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = straight_time(d);
      }
    }
    consider(fc, sign, c);
    consider(fd, sign, d);
  }
  return best;
}

using PathSampled = PathSample<double>;
using OracleResultd = OracleResult<double>;

}  // namespace dubins_escape

#endif  // DUBINS_ESCAPE_TRAJECTORY_HPP_
