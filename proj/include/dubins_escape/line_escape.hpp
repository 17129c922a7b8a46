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

#ifndef DUBINS_ESCAPE_LINE_ESCAPE_HPP_
#define DUBINS_ESCAPE_LINE_ESCAPE_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

#include "dubins_escape/control.hpp"
#include "dubins_escape/error.hpp"
#include "dubins_escape/geometry.hpp"

// Closed-form minimum-time synthesis for a Dubins vehicle reaching an
// infinite straight line. The target line is x = 0 in LineLocalState
// coordinates and the vehicle approaches from x < 0.
//
// The state space splits into
//   UP   x = 0, |theta| <= pi/2      already escaping, t_f = 0
//   UL   x < 0, theta = 0            drive straight, t_f = -x / v
//   DL   x < 0, theta = pi           both hard turns are optimal
//   R_T  x >= -R sin|theta|          hard turn only
//   R_TS x <  -R sin|theta|          hard turn until theta = 0, then straight
// and every optimal turn uses u = -sign(theta).

namespace dubins_escape {

enum class StrategyType { kStraightOnly, kTurnOnly, kTurnStraight };

struct StrategyKind {
  StrategyType type = StrategyType::kStraightOnly;
  // -1 or +1 for turning strategies, 0 for straight-only.
  int direction = 0;

  static StrategyKind straight_only() { return {StrategyType::kStraightOnly, 0}; }
  static StrategyKind turn_only(int dir) { return {StrategyType::kTurnOnly, dir}; }
  static StrategyKind turn_straight(int dir) {
    return {StrategyType::kTurnStraight, dir};
  }

  StrategyKind mirrored() const { return {type, -direction}; }

  friend bool operator==(const StrategyKind&, const StrategyKind&) = default;
};

constexpr std::string_view to_string(StrategyType type) {
  switch (type) {
    case StrategyType::kStraightOnly:
      return "straight-only";
    case StrategyType::kTurnOnly:
      return "turn-only";
    case StrategyType::kTurnStraight:
      return "turn-straight";
  }
  return "unknown";
}

enum class Region {
  kUsablePart,
  kUniversalLine,
  kDispersalLine,
  kTurnOnly,
  kTurnStraight,
};

constexpr std::string_view to_string(Region region) {
  switch (region) {
    case Region::kUsablePart:
      return "UP";
    case Region::kUniversalLine:
      return "UL";
    case Region::kDispersalLine:
      return "DL";
    case Region::kTurnOnly:
      return "R_T";
    case Region::kTurnStraight:
      return "R_TS";
  }
  return "unknown";
}

template <typename Scalar>
struct LineTolerances {
  // Absolute distance under which x counts as on the line.
  Scalar eps_geom = kDefaultGeomEps<Scalar>;
  // Heading band around 0 (universal line) and pi (dispersal line).
  Scalar heading_eps = Scalar(1e-9);
  // Round-off slack on the asin argument of the turn-only exit heading.
  Scalar asin_slack = Scalar(1e-12);
};

template <typename Scalar>
struct LineEscapeSolution {
  StrategyKind strategy;
  Scalar t_f = 0;
  Scalar theta_f = 0;
  // Exit offset along the line tangent, relative to the vehicle's own
  // tangential coordinate.
  Scalar y_f = 0;
  ControlSchedule<Scalar> schedule;
  Region region = Region::kUsablePart;
};

template <typename Scalar>
struct LineEscapeResult {
  LineEscapeSolution<Scalar> primary;
  // Mirror-image solution, present only on the dispersal line.
  std::optional<LineEscapeSolution<Scalar>> alternate;
};

namespace detail {

template <typename Scalar>
void require_inside(const LineLocalState<Scalar>& state,
                    const LineTolerances<Scalar>& tol) {
  if (!std::isfinite(state.x) || !std::isfinite(state.theta)) {
    throw EscapeError(ErrorCode::kInvalidArgument, "state is not finite");
  }
  if (state.x > tol.eps_geom) {
    throw EscapeError(ErrorCode::kOutsideHalfPlane,
                      "vehicle is outside the half-plane (x > 0)");
  }
}

template <typename Scalar>
bool on_dispersal_heading(Scalar theta, const LineTolerances<Scalar>& tol) {
  return kPi<Scalar> - std::abs(theta) <= tol.heading_eps;
}

// Headings within the dispersal band are represented by +pi exactly.
template <typename Scalar>
LineLocalState<Scalar> canonical(const LineLocalState<Scalar>& state,
                                 const LineTolerances<Scalar>& tol) {
  LineLocalState<Scalar> out = state;
  out.x = std::min(state.x, Scalar(0));
  if (on_dispersal_heading(state.theta, tol)) out.theta = kPi<Scalar>;
  return out;
}

template <typename Scalar>
Scalar sign_of(Scalar theta) {
  return theta < 0 ? Scalar(-1) : Scalar(1);
}

template <typename Scalar>
Scalar turn_only_asin_argument(const LineLocalState<Scalar>& state,
                               const VehicleParams<Scalar>& params,
                               const LineTolerances<Scalar>& tol) {
  const Scalar radius = params.min_turn_radius();
  Scalar arg = (radius * std::sin(std::abs(state.theta)) + state.x) / radius;
  if (arg < -tol.asin_slack || arg > 1 + tol.asin_slack) {
    throw EscapeError(ErrorCode::kRegionViolation,
                      "turn-only exit heading undefined for this state");
  }
  return std::clamp(arg, Scalar(0), Scalar(1));
}

}  // namespace detail

template <typename Scalar>
Region classify(const LineLocalState<Scalar>& state,
                const VehicleParams<Scalar>& params,
                const LineTolerances<Scalar>& tol = {}) {
  detail::require_inside(state, tol);
  const Scalar abs_theta = std::abs(state.theta);
  const bool on_line = state.x >= -tol.eps_geom;
  if (on_line && abs_theta <= kPi<Scalar> / 2) return Region::kUsablePart;
  if (!on_line && abs_theta <= tol.heading_eps) return Region::kUniversalLine;
  if (!on_line && detail::on_dispersal_heading(state.theta, tol)) {
    return Region::kDispersalLine;
  }
  const auto s = detail::canonical(state, tol);
  if (s.x >= -params.min_turn_radius() * std::sin(std::abs(s.theta))) {
    return Region::kTurnOnly;
  }
  return Region::kTurnStraight;
}

// Heading, relative to the line normal, at which a turn-only path crosses.
template <typename Scalar>
Scalar final_heading(const LineLocalState<Scalar>& state,
                     const VehicleParams<Scalar>& params,
                     const LineTolerances<Scalar>& tol = {}) {
  const Scalar arg = detail::turn_only_asin_argument(state, params, tol);
  return detail::sign_of(state.theta) * std::asin(arg);
}

template <typename Scalar>
Scalar turn_only_time(const LineLocalState<Scalar>& state,
                      const VehicleParams<Scalar>& params,
                      const LineTolerances<Scalar>& tol = {}) {
  const Scalar abs_theta = std::abs(state.theta);
  const Scalar abs_final =
      std::asin(detail::turn_only_asin_argument(state, params, tol));
  if (abs_final > abs_theta + tol.asin_slack) {
    throw EscapeError(ErrorCode::kRegionViolation,
                      "turn-only exit heading exceeds the initial heading");
  }
  return params.min_turn_radius() / params.speed() * (abs_theta - abs_final);
}

template <typename Scalar>
Scalar turn_only_exit_offset(const LineLocalState<Scalar>& state,
                             const VehicleParams<Scalar>& params,
                             const LineTolerances<Scalar>& tol = {}) {
  const Scalar radius = params.min_turn_radius();
  const Scalar arg = detail::turn_only_asin_argument(state, params, tol);
  const Scalar chord = radius * arg;
  return detail::sign_of(state.theta) *
         (std::sqrt(std::max(Scalar(0), radius * radius - chord * chord)) -
          radius * std::cos(state.theta));
}

template <typename Scalar>
Scalar turn_straight_time(const LineLocalState<Scalar>& state,
                          const VehicleParams<Scalar>& params) {
  const Scalar radius = params.min_turn_radius();
  const Scalar abs_theta = std::abs(state.theta);
  return (radius * abs_theta - state.x - radius * std::sin(abs_theta)) /
         params.speed();
}

template <typename Scalar>
Scalar turn_straight_exit_offset(const LineLocalState<Scalar>& state,
                                 const VehicleParams<Scalar>& params) {
  return detail::sign_of(state.theta) * params.min_turn_radius() *
         (1 - std::cos(state.theta));
}

// Minimum escape time only; same branch logic as solve_line() without
// building schedules.
template <typename Scalar>
Scalar escape_time(const LineLocalState<Scalar>& state,
                   const VehicleParams<Scalar>& params,
                   const LineTolerances<Scalar>& tol = {}) {
  switch (classify(state, params, tol)) {
    case Region::kUsablePart:
      return 0;
    case Region::kUniversalLine:
      return -state.x / params.speed();
    default:
      break;
  }
  const auto s = detail::canonical(state, tol);
  if (s.x >= -params.min_turn_radius() * std::sin(std::abs(s.theta))) {
    return turn_only_time(s, params, tol);
  }
  return turn_straight_time(s, params);
}

namespace detail {

template <typename Scalar>
LineEscapeSolution<Scalar> mirror(const LineEscapeSolution<Scalar>& sol) {
  LineEscapeSolution<Scalar> out = sol;
  out.strategy = sol.strategy.mirrored();
  if (sol.theta_f != 0) out.theta_f = -sol.theta_f;
  if (sol.y_f != 0) out.y_f = -sol.y_f;
  out.schedule = negated(sol.schedule);
  return out;
}

}  // namespace detail

template <typename Scalar>
LineEscapeResult<Scalar> solve_line(const LineLocalState<Scalar>& state,
                                    const VehicleParams<Scalar>& params,
                                    const LineTolerances<Scalar>& tol = {}) {
  const Region region = classify(state, params, tol);
  const Scalar speed = params.speed();
  const Scalar radius = params.min_turn_radius();
  LineEscapeResult<Scalar> result;
  LineEscapeSolution<Scalar>& sol = result.primary;

  if (region == Region::kUsablePart) {
    sol.strategy = StrategyKind::straight_only();
    sol.theta_f = state.theta;
    sol.region = Region::kUsablePart;
    return result;
  }
  if (region == Region::kUniversalLine) {
    sol.strategy = StrategyKind::straight_only();
    sol.t_f = -state.x / speed;
    sol.region = Region::kUniversalLine;
    sol.schedule.phases.push_back({Scalar(0), sol.t_f});
    return result;
  }

  const auto s = detail::canonical(state, tol);
  const Scalar sign = detail::sign_of(s.theta);
  const Scalar abs_theta = std::abs(s.theta);
  const int direction = sign > 0 ? -1 : 1;
  if (s.x >= -radius * std::sin(abs_theta)) {
    sol.strategy = StrategyKind::turn_only(direction);
    sol.region = Region::kTurnOnly;
    sol.theta_f = final_heading(s, params, tol);
    sol.t_f = turn_only_time(s, params, tol);
    sol.y_f = turn_only_exit_offset(s, params, tol);
    sol.schedule.phases.push_back({-sign, sol.t_f});
  } else {
    sol.strategy = StrategyKind::turn_straight(direction);
    sol.region = Region::kTurnStraight;
    sol.theta_f = 0;
    sol.t_f = turn_straight_time(s, params);
    sol.y_f = turn_straight_exit_offset(s, params);
    const Scalar turn = abs_theta * radius / speed;
    sol.schedule.phases.push_back({-sign, turn});
    sol.schedule.phases.push_back({Scalar(0), sol.t_f - turn});
  }
  if (detail::on_dispersal_heading(state.theta, tol)) {
    result.alternate = detail::mirror(sol);
  }
  return result;
}

using LineEscapeSolutiond = LineEscapeSolution<double>;
using LineEscapeResultd = LineEscapeResult<double>;
using LineTolerancesd = LineTolerances<double>;

}  // namespace dubins_escape

#endif  // DUBINS_ESCAPE_LINE_ESCAPE_HPP_
