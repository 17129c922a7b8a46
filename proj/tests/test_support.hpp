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

#ifndef DUBINS_ESCAPE_TESTS_TEST_SUPPORT_HPP_
#define DUBINS_ESCAPE_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dubins_escape/dubins_escape.hpp"

namespace dubins_escape::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform in (-pi, pi].
inline double uniform_heading(Rng& rng) {
  return wrap_angle(uniform(rng, -kPi<double>, kPi<double>));
}

// Andrew's monotone chain, counter-clockwise, collinear points dropped.
inline std::vector<Vector2d> convex_hull(std::vector<Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vector2d& a, const Vector2d& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  std::vector<Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const Vector2d& o, const Vector2d& a, const Vector2d& b) {
    return cross2<double>(a - o, b - o);
  };
  for (const auto& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Random convex polygon with a vertex count in [min_vertices, max_vertices]:
// either an affine image of a random inscribed polygon or the hull of a
// random point cloud.
inline std::vector<Vector2d> random_convex_polygon(Rng& rng, int min_vertices,
                                                   int max_vertices) {
  const Vector2d center(uniform(rng, -20, 20), uniform(rng, -20, 20));
  const double scale = std::exp(uniform(rng, std::log(0.5), std::log(30.0)));
  for (int attempt = 0; attempt < 50 && (rng() & 1); ++attempt) {
    std::vector<Vector2d> cloud;
    const int count = std::uniform_int_distribution<int>(8, 60)(rng);
    for (int i = 0; i < count; ++i) {
      cloud.emplace_back(uniform(rng, -1, 1), uniform(rng, -1, 1));
    }
    auto hull = convex_hull(cloud);
    if (static_cast<int>(hull.size()) >= min_vertices &&
        static_cast<int>(hull.size()) <= max_vertices) {
      for (auto& p : hull) p = center + scale * p;
      return hull;
    }
  }
  const int n = std::uniform_int_distribution<int>(min_vertices, max_vertices)(rng);
  std::vector<double> angles;
  for (int i = 0; i < n; ++i) angles.push_back(uniform(rng, 0, kTwoPi<double>));
  std::sort(angles.begin(), angles.end());
  // Keep vertices apart so no edge is degenerate.
  for (int i = 1; i < n; ++i) {
    angles[i] = std::max(angles[i], angles[i - 1] + 0.05);
  }
  const double rot = uniform(rng, -kPi<double>, kPi<double>);
  const double ax = uniform(rng, 0.3, 1.0);
  const double ay = uniform(rng, 0.3, 1.0);
  std::vector<Vector2d> out;
  for (double a : angles) {
    if (a >= kTwoPi<double> - 0.05 && !out.empty()) break;
    const Vector2d local(ax * std::cos(a), ay * std::sin(a));
    const Vector2d rotated(std::cos(rot) * local.x() - std::sin(rot) * local.y(),
                           std::sin(rot) * local.x() + std::cos(rot) * local.y());
    out.push_back(center + scale * rotated);
  }
  if (static_cast<int>(out.size()) < min_vertices) {
    return random_convex_polygon(rng, min_vertices, max_vertices);
  }
  return out;
}

// Random strictly interior point: convex combination with positive weights.
inline Vector2d random_interior_point(Rng& rng, const ConvexPolygond& polygon) {
  Vector2d acc = Vector2d::Zero();
  double total = 0;
  for (const auto& v : polygon.vertices()) {
    const double w = std::exponential_distribution<double>(1.0)(rng) + 1e-3;
    acc += w * v;
    total += w;
  }
  return acc / total;
}

inline Vector2d rotate(const Vector2d& p, double angle) {
  return {std::cos(angle) * p.x() - std::sin(angle) * p.y(),
          std::sin(angle) * p.x() + std::cos(angle) * p.y()};
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

inline std::vector<Vector2d> unit_square() {
  return {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
}

inline std::vector<Vector2d> regular_polygon(int n, double circumradius) {
  std::vector<Vector2d> out;
  for (int k = 0; k < n; ++k) {
    const double a = kTwoPi<double> * k / n;
    out.emplace_back(circumradius * std::cos(a), circumradius * std::sin(a));
  }
  return out;
}

}  // namespace dubins_escape::testing

#endif  // DUBINS_ESCAPE_TESTS_TEST_SUPPORT_HPP_
