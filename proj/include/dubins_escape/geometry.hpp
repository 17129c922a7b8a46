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

#ifndef DUBINS_ESCAPE_GEOMETRY_HPP_
#define DUBINS_ESCAPE_GEOMETRY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dubins_escape/error.hpp"

namespace dubins_escape {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

template <typename Scalar>
inline constexpr Scalar kTwoPi = Scalar(2) * std::numbers::pi_v<Scalar>;

// Relative geometric tolerance; scaled by polygon diameter where one exists.
template <typename Scalar>
inline constexpr Scalar kDefaultGeomEps = Scalar(1e-9);

template <typename Scalar>
Scalar cross2(const Vector2<Scalar>& a, const Vector2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Wraps an angle into (-pi, pi]. Odd multiples of pi map to +pi.
template <typename Scalar>
Scalar wrap_angle(Scalar angle) {
  if (!std::isfinite(angle)) {
    throw EscapeError(ErrorCode::kInvalidArgument, "angle is not finite");
  }
  Scalar r = std::remainder(angle, kTwoPi<Scalar>);
  // remainder() is exact, but the input multiple of pi is not; snap values
  // within a few ulps of the cut onto +pi.
  const Scalar snap = Scalar(8) * std::numeric_limits<Scalar>::epsilon() *
                      std::max(Scalar(1), std::abs(angle));
  if (std::abs(std::abs(r) - kPi<Scalar>) <= snap) return kPi<Scalar>;
  if (r <= -kPi<Scalar>) r += kTwoPi<Scalar>;
  return r;
}

// Speed v and minimum turning radius R of the vehicle.
template <typename Scalar>
class VehicleParams {
 public:
  VehicleParams(Scalar speed, Scalar min_turn_radius)
      : speed_(speed), min_turn_radius_(min_turn_radius) {
    if (!(std::isfinite(speed) && speed > 0)) {
      throw EscapeError(ErrorCode::kInvalidArgument,
                        "speed must be finite and positive");
    }
    if (!(std::isfinite(min_turn_radius) && min_turn_radius > 0)) {
      throw EscapeError(ErrorCode::kInvalidArgument,
                        "min_turn_radius must be finite and positive");
    }
  }

  Scalar speed() const { return speed_; }
  Scalar min_turn_radius() const { return min_turn_radius_; }
  // Maximum heading rate v / R.
  Scalar max_turn_rate() const { return speed_ / min_turn_radius_; }

 private:
  Scalar speed_;
  Scalar min_turn_radius_;
};

template <typename Scalar>
struct GlobalPose {
  GlobalPose(const Vector2<Scalar>& position_in, Scalar heading_in)
      : position(position_in), heading(wrap_angle(heading_in)) {}
  GlobalPose(Scalar x, Scalar y, Scalar heading_in)
      : GlobalPose(Vector2<Scalar>(x, y), heading_in) {}

  Vector2<Scalar> position;
  Scalar heading;
};

// Reduced state relative to a target line: x is the signed offset along the
// outward normal (negative inside) and theta the heading measured from the
// outward normal.
template <typename Scalar>
struct LineLocalState {
  LineLocalState() = default;
  LineLocalState(Scalar x_in, Scalar theta_in)
      : x(x_in), theta(wrap_angle(theta_in)) {}

  Scalar x = 0;
  Scalar theta = 0;
};

// Supporting line of an edge (or a free-standing target line).
template <typename Scalar>
struct EdgeFrame {
  Vector2<Scalar> origin;
  Vector2<Scalar> outward_normal;
  // outward_normal rotated by +90 degrees.
  Vector2<Scalar> tangent;

  Scalar normal_angle() const {
    return std::atan2(outward_normal.y(), outward_normal.x());
  }
};

template <typename Scalar>
EdgeFrame<Scalar> make_line_frame(const Vector2<Scalar>& point,
                                  const Vector2<Scalar>& outward_normal) {
  const Scalar norm = outward_normal.norm();
  if (!point.allFinite() || !outward_normal.allFinite() || !(norm > 0)) {
    throw EscapeError(ErrorCode::kInvalidArgument,
                      "line needs a finite point and a non-zero normal");
  }
  EdgeFrame<Scalar> frame;
  frame.origin = point;
  frame.outward_normal = outward_normal / norm;
  frame.tangent = Vector2<Scalar>(-frame.outward_normal.y(),
                                  frame.outward_normal.x());
  return frame;
}

enum class Containment { kInterior, kBoundary, kExterior };

// Convex polygon stored counter-clockwise. Only constructible through
// validate_polygon().
template <typename Scalar>
class ConvexPolygon {
 public:
  using Edge = std::pair<Vector2<Scalar>, Vector2<Scalar>>;

  const std::vector<Vector2<Scalar>>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  std::size_t edge_count() const { return vertices_.size(); }

  Edge edge(std::size_t i) const {
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t i = 0; i < edge_count(); ++i) out.push_back(edge(i));
    return out;
  }

  Scalar diameter() const { return diameter_; }
  // Absolute tolerance used for convexity, degeneracy and boundary tests.
  Scalar eps_geom() const { return eps_geom_; }

  // Area centroid.
  Vector2<Scalar> centroid() const {
    Scalar area2 = 0;
    Vector2<Scalar> acc = Vector2<Scalar>::Zero();
    const Vector2<Scalar>& ref = vertices_.front();
    for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
      const Vector2<Scalar> a = vertices_[i] - ref;
      const Vector2<Scalar> b = vertices_[i + 1] - ref;
      const Scalar w = cross2(a, b);
      area2 += w;
      acc += w * (a + b) / Scalar(3);
    }
    return ref + acc / area2;
  }

  Scalar signed_area() const {
    Scalar area2 = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      area2 += cross2(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
    }
    return area2 / 2;
  }

 private:
  template <typename S>
  friend ConvexPolygon<S> validate_polygon(std::span<const Vector2<S>>, S);

  std::vector<Vector2<Scalar>> vertices_;
  Scalar diameter_ = 0;
  Scalar eps_geom_ = 0;
};

// Validates a convex polygon and normalizes it to counter-clockwise order.
// relative_eps is scaled by the polygon diameter.
template <typename Scalar>
ConvexPolygon<Scalar> validate_polygon(
    std::span<const Vector2<Scalar>> vertices,
    Scalar relative_eps = kDefaultGeomEps<Scalar>) {
  const std::size_t n = vertices.size();
  if (n < 3) {
    throw EscapeError(ErrorCode::kTooFewVertices,
                      "polygon needs at least 3 vertices, got " +
                          std::to_string(n));
  }
  for (const auto& v : vertices) {
    if (!v.allFinite()) {
      throw EscapeError(ErrorCode::kInvalidArgument,
                        "polygon vertex is not finite");
    }
  }

  ConvexPolygon<Scalar> poly;
  poly.vertices_.assign(vertices.begin(), vertices.end());
  Scalar diameter = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      diameter = std::max(diameter, (vertices[i] - vertices[j]).norm());
    }
  }
  poly.diameter_ = diameter;
  const Scalar eps = relative_eps * (diameter > 0 ? diameter : Scalar(1));
  poly.eps_geom_ = eps;

  for (std::size_t i = 0; i < n; ++i) {
    if ((vertices[(i + 1) % n] - vertices[i]).norm() <= eps) {
      throw EscapeError(ErrorCode::kDegenerateEdge,
                        "vertices " + std::to_string(i) + " and " +
                            std::to_string((i + 1) % n) + " coincide");
    }
  }

  if (poly.signed_area() < 0) {
    std::reverse(poly.vertices_.begin(), poly.vertices_.end());
  }

  // Turn test at each vertex: signed distance of the next vertex from the
  // previous edge's supporting line.
  const auto& vs = poly.vertices_;
  std::size_t strictly_convex = 0;
  Scalar total_turn = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector2<Scalar> prev = vs[i] - vs[(i + n - 1) % n];
    const Vector2<Scalar> next = vs[(i + 1) % n] - vs[i];
    const Scalar offset = cross2(prev, next) / prev.norm();
    if (offset < -eps) {
      throw EscapeError(ErrorCode::kNonConvex,
                        "reflex vertex at index " + std::to_string(i));
    }
    if (offset > eps) ++strictly_convex;
    total_turn += std::atan2(cross2(prev, next), prev.dot(next));
  }
  if (strictly_convex < 3) {
    throw EscapeError(ErrorCode::kNonConvex, "polygon has zero area");
  }
  // Rejects self-intersecting star shapes whose turns are all left.
  if (std::abs(total_turn - kTwoPi<Scalar>) > Scalar(1e-6)) {
    throw EscapeError(ErrorCode::kNonConvex, "polygon winds more than once");
  }
  return poly;
}

template <typename Scalar>
ConvexPolygon<Scalar> validate_polygon(
    const std::vector<Vector2<Scalar>>& vertices,
    Scalar relative_eps = kDefaultGeomEps<Scalar>) {
  return validate_polygon(std::span<const Vector2<Scalar>>(vertices),
                          relative_eps);
}

template <typename Scalar>
EdgeFrame<Scalar> edge_frame(const ConvexPolygon<Scalar>& polygon,
                             std::size_t edge_index) {
  if (edge_index >= polygon.edge_count()) {
    throw EscapeError(ErrorCode::kIndexOutOfRange,
                      "edge index " + std::to_string(edge_index) +
                          " out of range");
  }
  const auto [start, end] = polygon.edge(edge_index);
  EdgeFrame<Scalar> frame;
  frame.origin = start;
  frame.tangent = (end - start).normalized();
  frame.outward_normal = Vector2<Scalar>(frame.tangent.y(), -frame.tangent.x());
  return frame;
}

template <typename Scalar>
Scalar normal_offset(const Vector2<Scalar>& point,
                     const EdgeFrame<Scalar>& frame) {
  return (point - frame.origin).dot(frame.outward_normal);
}

template <typename Scalar>
Scalar tangential_offset(const Vector2<Scalar>& point,
                         const EdgeFrame<Scalar>& frame) {
  return (point - frame.origin).dot(frame.tangent);
}

template <typename Scalar>
LineLocalState<Scalar> to_edge_frame(const GlobalPose<Scalar>& pose,
                                     const EdgeFrame<Scalar>& frame) {
  return LineLocalState<Scalar>(normal_offset(pose.position, frame),
                                pose.heading - frame.normal_angle());
}

template <typename Scalar>
Vector2<Scalar> from_edge_frame(const EdgeFrame<Scalar>& frame, Scalar x,
                                Scalar y) {
  return frame.origin + x * frame.outward_normal + y * frame.tangent;
}

// Heading in the world frame of a heading measured from the frame's normal.
template <typename Scalar>
Scalar world_heading(const EdgeFrame<Scalar>& frame, Scalar local_heading) {
  return wrap_angle(local_heading + frame.normal_angle());
}

template <typename Scalar>
Containment contains(const ConvexPolygon<Scalar>& polygon,
                     const Vector2<Scalar>& point) {
  Scalar max_offset = -std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 0; i < polygon.edge_count(); ++i) {
    max_offset = std::max(max_offset,
                          normal_offset(point, edge_frame(polygon, i)));
  }
  const Scalar eps = polygon.eps_geom();
  if (max_offset > eps) return Containment::kExterior;
  if (max_offset >= -eps) return Containment::kBoundary;
  return Containment::kInterior;
}

using Vector2d = Vector2<double>;
using VehicleParamsd = VehicleParams<double>;
using GlobalPosed = GlobalPose<double>;
using LineLocalStated = LineLocalState<double>;
using EdgeFramed = EdgeFrame<double>;
using ConvexPolygond = ConvexPolygon<double>;

}  // namespace dubins_escape

#endif  // DUBINS_ESCAPE_GEOMETRY_HPP_
