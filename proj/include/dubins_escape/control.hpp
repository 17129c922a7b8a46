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

#ifndef DUBINS_ESCAPE_CONTROL_HPP_
#define DUBINS_ESCAPE_CONTROL_HPP_

#include <cmath>
#include <vector>

namespace dubins_escape {

// Constant normalized turn command u held for `duration`. u = +1 turns left
// at the minimum radius, u = -1 turns right, u = 0 drives straight.
template <typename Scalar>
struct ControlPhase {
  Scalar u = 0;
  Scalar duration = 0;

  friend bool operator==(const ControlPhase&, const ControlPhase&) = default;
};

template <typename Scalar>
struct ControlSchedule {
  std::vector<ControlPhase<Scalar>> phases;

  Scalar total_duration() const {
    Scalar total = 0;
    for (const auto& p : phases) total += p.duration;
    return total;
  }

  bool empty() const { return phases.empty(); }

  // At most two phases, each with u in {-1, 0, +1} and non-negative
  // duration; a two-phase schedule is a hard turn followed by a straight.
  bool is_bang_zero() const {
    if (phases.size() > 2) return false;
    for (const auto& p : phases) {
      if (!(p.duration >= 0) || !std::isfinite(p.duration)) return false;
      if (p.u != -1 && p.u != 0 && p.u != 1) return false;
    }
    if (phases.size() == 2) {
      return phases[0].u != 0 && phases[1].u == 0;
    }
    return true;
  }

  friend bool operator==(const ControlSchedule&,
                         const ControlSchedule&) = default;
};

template <typename Scalar>
ControlSchedule<Scalar> negated(ControlSchedule<Scalar> schedule) {
  for (auto& p : schedule.phases) {
    if (p.u != 0) p.u = -p.u;
  }
  return schedule;
}

using ControlPhased = ControlPhase<double>;
using ControlScheduled = ControlSchedule<double>;

}  // namespace dubins_escape

#endif  // DUBINS_ESCAPE_CONTROL_HPP_
