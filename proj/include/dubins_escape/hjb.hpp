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

#ifndef DUBINS_ESCAPE_HJB_HPP_
#define DUBINS_ESCAPE_HJB_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "dubins_escape/error.hpp"
#include "dubins_escape/geometry.hpp"
#include "dubins_escape/line_escape.hpp"

namespace dubins_escape {

// Uniform (x, theta) lattice with a common spacing on both axes.
template <typename Scalar>
struct HjbGrid {
  Scalar x_min = 0;
  Scalar x_max = 0;
  Scalar theta_min = 0;
  Scalar theta_max = 0;
  Scalar spacing = 0;
};

template <typename Scalar>
struct HjbOptions {
  // Coarser grids cannot resolve the value function's curvature.
  Scalar max_spacing = Scalar(1e-2);
  // Half-widths of the excluded bands around the singular lines theta = 0
  // and |theta| = pi.
  Scalar singular_band = Scalar(0.05);
  // Band around the R_T / R_TS boundary, in multiples of spacing * max(1, R).
  Scalar boundary_band_factor = Scalar(2);
};

template <typename Scalar>
struct HjbReport {
  Scalar max_residual = 0;
  Scalar argmax_x = 0;
  Scalar argmax_theta = 0;
  std::size_t points_checked = 0;
  std::size_t points_excluded = 0;
  // Points where dV/dx >= 0, contradicting a negative x-costate.
  std::size_t costate_sign_violations = 0;
  Scalar first_violation_x = 0;
  Scalar first_violation_theta = 0;

  bool passed(Scalar threshold) const {
    return points_checked > 0 && max_residual <= threshold &&
           costate_sign_violations == 0;
  }
};

// Central-difference check that a value function V(x, theta) solves
//   1 + min_u (V_x v cos(theta) + V_theta (v / R) u) = 0
// wherever the minimum escape time is smooth.
template <typename Scalar, typename ValueFn>
HjbReport<Scalar> hjb_residual(const HjbGrid<Scalar>& grid,
                               const VehicleParams<Scalar>& params,
                               ValueFn&& value,
                               const HjbOptions<Scalar>& options) {
  const Scalar h = grid.spacing;
  if (!(h > 0) || h > options.max_spacing) {
    throw EscapeError(ErrorCode::kInvalidGrid,
                      "grid spacing must be in (0, max_spacing]");
  }
  if (!(grid.x_min < grid.x_max) || !(grid.theta_min < grid.theta_max) ||
      grid.x_max > 0) {
    throw EscapeError(ErrorCode::kInvalidGrid,
                      "grid needs x_min < x_max <= 0 and theta_min < theta_max");
  }
  const Scalar v = params.speed();
  const Scalar radius = params.min_turn_radius();
  const auto nx = static_cast<std::size_t>(
      std::floor((grid.x_max - grid.x_min) / h + Scalar(1e-9))) + 1;
  const auto nt = static_cast<std::size_t>(
      std::floor((grid.theta_max - grid.theta_min) / h + Scalar(1e-9))) + 1;
  const Scalar boundary_band =
      options.boundary_band_factor * h * std::max(Scalar(1), radius);

  HjbReport<Scalar> report;
  for (std::size_t i = 0; i < nx; ++i) {
    const Scalar x = grid.x_min + static_cast<Scalar>(i) * h;
    for (std::size_t j = 0; j < nt; ++j) {
      const Scalar theta = wrap_angle(grid.theta_min + static_cast<Scalar>(j) * h);
      const Scalar abs_theta = std::abs(theta);
      const bool excluded =
          abs_theta < options.singular_band ||
          kPi<Scalar> - abs_theta < options.singular_band ||
          std::abs(x + radius * std::sin(abs_theta)) < boundary_band ||
          x + h > -kDefaultGeomEps<Scalar>;
      if (excluded) {
        ++report.points_excluded;
        continue;
      }
      const Scalar v_x = (value(x + h, theta) - value(x - h, theta)) / (2 * h);
      const Scalar v_theta =
          (value(x, theta + h) - value(x, theta - h)) / (2 * h);
      const Scalar hamiltonian = 1 + v_x * v * std::cos(theta) -
                                 std::abs(v_theta) * v / radius;
      const Scalar residual = std::abs(hamiltonian);
      ++report.points_checked;
      if (residual > report.max_residual) {
        report.max_residual = residual;
        report.argmax_x = x;
        report.argmax_theta = theta;
      }
      if (!(v_x < 0)) {
        if (report.costate_sign_violations == 0) {
          report.first_violation_x = x;
          report.first_violation_theta = theta;
        }
        ++report.costate_sign_violations;
      }
    }
  }
  return report;
}

// Residual of the closed-form minimum escape time.
template <typename Scalar>
HjbReport<Scalar> hjb_residual(const HjbGrid<Scalar>& grid,
                               const VehicleParams<Scalar>& params,
                               const HjbOptions<Scalar>& options = {}) {
  return hjb_residual(
      grid, params,
      [&params](Scalar x, Scalar theta) {
        return escape_time(LineLocalState<Scalar>(x, theta), params);
      },
      options);
}

using HjbGridd = HjbGrid<double>;
using HjbReportd = HjbReport<double>;

}  // namespace dubins_escape

#endif  // DUBINS_ESCAPE_HJB_HPP_
