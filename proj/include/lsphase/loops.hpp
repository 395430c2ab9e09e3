// Copyright 2026 The lsphase Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lsphase/qops.hpp"

namespace lsphase::loops {

struct SpherePoint {
  double theta;
  double phi;
};

inline Eigen::Vector3d to_unit(const SpherePoint& p) {
  return {std::sin(p.theta) * std::cos(p.phi), std::sin(p.theta) * std::sin(p.phi), std::cos(p.theta)};
}

inline SpherePoint to_angles(const Eigen::Vector3d& v) {
  return {std::atan2(std::hypot(v.x(), v.y()), v.z()), std::atan2(v.y(), v.x())};
}

inline double arc_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

inline Eigen::Vector3d slerp(const Eigen::Vector3d& a, const Eigen::Vector3d& b, double t) {
  const double ang = arc_distance(a, b);
  if (ang < 1e-14) return a;
  return (std::sin((1.0 - t) * ang) * a + std::sin(t * ang) * b) / std::sin(ang);
}

inline double circle_solid_angle(double theta0) { return 2.0 * std::numbers::pi * (1.0 - std::cos(theta0)); }

namespace detail {

inline double triangle_excess(const Eigen::Vector3d& p, const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  const double a = arc_distance(u, v);
  const double b = arc_distance(p, u);
  const double c = arc_distance(p, v);
  const double s = 0.5 * (a + b + c);
  const double t = std::tan(s / 2) * std::tan((s - a) / 2) * std::tan((s - b) / 2) * std::tan((s - c) / 2);
  const double excess = 4.0 * std::atan(std::sqrt(std::max(t, 0.0)));  // l'Huilier
  const double orient = p.dot(u.cross(v));
  if (orient == 0.0) return 0.0;
  return orient > 0.0 ? excess : -excess;
}

inline Eigen::Vector3d fan_apex(const std::vector<Eigen::Vector3d>& verts) {
  std::vector<Eigen::Vector3d> candidates;
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& v : verts) centroid += v;
  if (centroid.norm() > 1e-6) candidates.push_back(centroid.normalized());
  candidates.push_back({0, 0, 1});
  candidates.push_back({1, 0, 0});
  candidates.push_back({0, 1, 0});
  candidates.push_back({0, 0, -1});
  for (const auto& c : candidates) {
    bool ok = true;
    for (const auto& v : verts) {
      if (arc_distance(c, v) > std::numbers::pi - 1e-9) { ok = false; break; }
    }
    if (ok) return c;
  }
  throw std::invalid_argument("polygon_loop: could not place a fan apex (vertices span antipodes)");
}

}  // namespace detail

/// Oriented solid angle of the geodesic polygon through the given unit
/// vectors: signed l'Huilier excess summed over a triangle fan.
inline double polygon_solid_angle(const std::vector<Eigen::Vector3d>& verts) {
  const Eigen::Vector3d apex = detail::fan_apex(verts);
  double omega = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    omega += detail::triangle_excess(apex, verts[i], verts[(i + 1) % verts.size()]);
  }
  return omega;
}

/// Closed loop of the field direction on the parameter sphere. Samples are
/// ordered with first == last; the solid angle is oriented, positive for a
/// counterclockwise sweep seen from +z, and lies in (-4 pi, 4 pi).
class SphereLoop {
 public:
  enum class Kind { Circle, Polygon };

  /// Circle of colatitude theta0, phi swept 0 -> 2 pi; Omega = 2 pi (1 - cos theta0).
  static SphereLoop circle(double theta0, int n_samples) {
    if (!(theta0 > 0.0 && theta0 < std::numbers::pi)) {
      throw std::invalid_argument("circle_loop: theta0 at a pole gives a degenerate loop");
    }
    if (n_samples < 8) throw std::invalid_argument("circle_loop: need at least 8 samples");
    SphereLoop loop;
    loop.kind_ = Kind::Circle;
    loop.theta0_ = theta0;
    loop.n_ = n_samples;
    loop.direction_ = 1;
    loop.rebuild();
    return loop;
  }

  /// Geodesic polygon; vertices are normalized, adjacent antipodal pairs are
  /// rejected (ambiguous geodesic).
  static SphereLoop polygon(std::vector<Eigen::Vector3d> vertices, int n_per_edge) {
    if (vertices.size() < 3) throw std::invalid_argument("polygon_loop: need at least 3 vertices");
    if (n_per_edge < 1) throw std::invalid_argument("polygon_loop: n_per_edge must be >= 1");
    for (auto& v : vertices) {
      const double n = v.norm();
      if (n < 1e-12) throw std::invalid_argument("polygon_loop: zero vertex");
      v /= n;
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& a = vertices[i];
      const auto& b = vertices[(i + 1) % vertices.size()];
      const double arc = arc_distance(a, b);
      if (arc > std::numbers::pi - 1e-9) throw std::invalid_argument("polygon_loop: adjacent antipodal vertices");
      if (arc < 1e-12) throw std::invalid_argument("polygon_loop: duplicate adjacent vertices");
    }
    SphereLoop loop;
    loop.kind_ = Kind::Polygon;
    loop.vertices_ = std::move(vertices);
    loop.n_ = n_per_edge;
    loop.direction_ = 1;
    loop.rebuild();
    return loop;
  }

  Kind kind() const { return kind_; }
  const std::vector<SpherePoint>& samples() const { return samples_; }
  double solid_angle() const { return solid_angle_; }

  SphereLoop reversed() const {
    SphereLoop loop = *this;
    if (kind_ == Kind::Circle) {
      loop.direction_ = -direction_;
    } else {
      std::reverse(loop.vertices_.begin() + 1, loop.vertices_.end());  // keep the start vertex
    }
    loop.rebuild();
    return loop;
  }

  SphereLoop resampled(int factor) const {
    if (factor < 1) throw std::invalid_argument("resampled: factor must be >= 1");
    SphereLoop loop = *this;
    loop.n_ = n_ * factor;
    loop.rebuild();
    return loop;
  }

  /// Arc-length-uniform parametrization, u in [0, 1]; point_at(0) == point_at(1).
  Eigen::Vector3d point_at(double u) const {
    if (kind_ == Kind::Circle) {
      return to_unit(angles_at(u));
    }
    const double total = arc_lengths_.back();
    double s = std::clamp(u, 0.0, 1.0) * total;
    const auto it = std::upper_bound(arc_lengths_.begin(), arc_lengths_.end(), s);
    std::size_t edge = std::min<std::size_t>(it - arc_lengths_.begin() - 1, vertices_.size() - 1);
    const double s0 = arc_lengths_[edge];
    const double len = arc_lengths_[edge + 1] - s0;
    const double t = len > 0.0 ? (s - s0) / len : 0.0;
    return slerp(vertices_[edge], vertices_[(edge + 1) % vertices_.size()], t);
  }

  SpherePoint angles_at(double u) const {
    if (kind_ == Kind::Circle) {
      return {theta0_, direction_ * 2.0 * std::numbers::pi * std::clamp(u, 0.0, 1.0)};
    }
    return to_angles(point_at(u));
  }

 private:
  void rebuild() {
    samples_.clear();
    if (kind_ == Kind::Circle) {
      samples_.reserve(n_ + 1);
      for (int k = 0; k <= n_; ++k) {
        samples_.push_back({theta0_, direction_ * 2.0 * std::numbers::pi * k / n_});
      }
      solid_angle_ = direction_ * circle_solid_angle(theta0_);
    } else {
      samples_.reserve(vertices_.size() * n_ + 1);
      arc_lengths_.assign(1, 0.0);
      for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& a = vertices_[i];
        const auto& b = vertices_[(i + 1) % vertices_.size()];
        arc_lengths_.push_back(arc_lengths_.back() + arc_distance(a, b));
        for (int k = 0; k < n_; ++k) {
          samples_.push_back(to_angles(slerp(a, b, static_cast<double>(k) / n_)));
        }
      }
      samples_.push_back(samples_.front());
      solid_angle_ = polygon_solid_angle(vertices_);
    }
    validate();
  }

  void validate() const {
    for (std::size_t k = 0; k + 1 < samples_.size(); ++k) {
      const double d = arc_distance(to_unit(samples_[k]), to_unit(samples_[k + 1]));
      if (d >= std::numbers::pi / 2) {
        throw std::invalid_argument("sphere loop: adjacent samples farther apart than pi/2; increase sampling");
      }
    }
    if (!(std::abs(solid_angle_) < 4.0 * std::numbers::pi)) {
      throw std::invalid_argument("sphere loop: solid angle outside (-4 pi, 4 pi)");
    }
  }

  Kind kind_ = Kind::Circle;
  double theta0_ = 0.0;
  int direction_ = 1;
  int n_ = 0;
  std::vector<Eigen::Vector3d> vertices_;
  std::vector<double> arc_lengths_;  // cumulative, polygons only
  std::vector<SpherePoint> samples_;
  double solid_angle_ = 0.0;
};

inline SphereLoop circle_loop(double theta0, int n_samples) { return SphereLoop::circle(theta0, n_samples); }

inline SphereLoop polygon_loop(std::vector<Eigen::Vector3d> vertices, int n_per_edge) {
  return SphereLoop::polygon(std::move(vertices), n_per_edge);
}

inline std::vector<qops::GaugePatch> section_assignment(const SphereLoop& loop, const qops::GaugeChoice& gauge) {
  std::vector<qops::GaugePatch> tags;
  tags.reserve(loop.samples().size());
  for (const auto& p : loop.samples()) tags.push_back(qops::patch_at(gauge, p.theta));
  return tags;
}

/// Instantaneous eigenvectors along the loop under the chosen section:
/// frame_k = U(theta_k, phi_k) |reference>.
inline std::vector<ComplexVector> section_frames(const SphereLoop& loop, const qops::RotationPlan& plan,
                                                 const qops::GaugeChoice& gauge, const ComplexVector& reference) {
  if (std::abs(reference.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("section_frames: reference must be a unit vector");
  }
  std::vector<ComplexVector> frames;
  frames.reserve(loop.samples().size());
  for (const auto& p : loop.samples()) frames.push_back(plan.apply(p.theta, p.phi, gauge, reference));
  return frames;
}

inline std::vector<ComplexVector> section_frames(const SphereLoop& loop, const qops::AngMomTriple& ops,
                                                 const qops::GaugeChoice& gauge, const ComplexVector& reference) {
  return section_frames(loop, qops::RotationPlan::for_operators(ops), gauge, reference);
}

}  // namespace lsphase::loops
