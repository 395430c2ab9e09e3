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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "lsphase/halfint.hpp"
#include "lsphase/matrix.hpp"

namespace lsphase::qops {

/// Angular momentum operator triple for a single spin j, in the basis
/// |j, m> ordered m = j, j-1, ..., -j (so z is diagonal descending).
struct AngMomTriple {
  HalfInt j;
  ComplexMatrix x, y, z;

  Eigen::Index dimension() const { return z.rows(); }
};

/// Standard ladder-operator construction. Rejects negative j.
inline AngMomTriple build_angmom(HalfInt j) {
  if (j.twice() < 0) throw std::invalid_argument("build_angmom: j must be >= 0, got " + j.str());
  const Eigen::Index n = j.twice() + 1;
  const double jv = j.value();
  ComplexMatrix plus = ComplexMatrix::Zero(n, n);
  ComplexMatrix z = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double m = jv - static_cast<double>(k);
    z(k, k) = m;
    if (k > 0) plus(k - 1, k) = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));  // raises |j,m> -> |j,m+1>
  }
  ComplexMatrix minus = plus.adjoint();
  AngMomTriple t;
  t.j = j;
  t.x = (plus + minus) / 2.0;
  t.y = (plus - minus) / Complex(0.0, 2.0);
  t.z = std::move(z);
  return t;
}

inline ComplexMatrix ladder_plus(const AngMomTriple& t) { return t.x + Complex(0, 1) * t.y; }
inline ComplexMatrix ladder_minus(const AngMomTriple& t) { return t.x - Complex(0, 1) * t.y; }

/// Tensor-product embedding onto the |l,m>|s> product basis, orbital factor
/// major. Both operators must be square.
inline ComplexMatrix embed(const ComplexMatrix& op_orbital, const ComplexMatrix& op_spin) {
  if (op_orbital.rows() != op_orbital.cols() || op_spin.rows() != op_spin.cols()) {
    throw std::invalid_argument("embed: operators must be square");
  }
  return kron(op_orbital, op_spin);
}

enum class GaugePatch { North, South };

/// Eigenvector section on the parameter sphere. North uses U_X, South the
/// variant with the opposite sign on the rightmost z rotation, Patched the
/// globally well-defined combination switching at a colatitude in (0, pi).
struct GaugeChoice {
  enum class Kind { North, South, Patched };
  Kind kind = Kind::North;
  double theta_switch = std::numbers::pi / 2;

  static GaugeChoice north() { return {Kind::North, std::numbers::pi / 2}; }
  static GaugeChoice south() { return {Kind::South, std::numbers::pi / 2}; }
  static GaugeChoice patched(double theta_switch = std::numbers::pi / 2) {
    if (!(theta_switch > 0.0 && theta_switch < std::numbers::pi)) {
      throw std::invalid_argument("patched gauge: theta_switch must lie strictly inside (0, pi)");
    }
    return {Kind::Patched, theta_switch};
  }
};

/// Patch in effect at colatitude theta. At theta == theta_switch exactly the
/// North patch wins (deterministic tie-break).
inline GaugePatch patch_at(const GaugeChoice& gauge, double theta) {
  switch (gauge.kind) {
    case GaugeChoice::Kind::North: return GaugePatch::North;
    case GaugeChoice::Kind::South: return GaugePatch::South;
    case GaugeChoice::Kind::Patched: return theta <= gauge.theta_switch ? GaugePatch::North : GaugePatch::South;
  }
  return GaugePatch::North;
}

namespace detail {
inline void check_theta(double theta) {
  if (!(theta >= -1e-12 && theta <= std::numbers::pi + 1e-12)) {
    throw std::domain_error("rotation: theta must lie in [0, pi]");
  }
}
}  // namespace detail

/// Precomputed spectral data for the rotation operators of one generator
/// pair: a diagonal z and a Hermitian y. Used on hot paths (per-sample
/// section frames) so the y eigendecomposition happens once per loop.
class RotationPlan {
 public:
  RotationPlan(RealVector z_diag, const ComplexMatrix& y) : zdiag_(std::move(z_diag)) {
    if (y.rows() != y.cols() || y.rows() != zdiag_.size()) {
      throw std::invalid_argument("RotationPlan: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(y);
    if (es.info() != Eigen::Success) throw numeric_error("RotationPlan: eigendecomposition failed");
    evecs_ = es.eigenvectors();
    lambda_ = es.eigenvalues();
  }

  static RotationPlan for_operators(const AngMomTriple& t) {
    return RotationPlan(t.z.diagonal().real(), t.y);
  }

  /// Plan for the total angular momentum J = L x 1 + 1 x S acting on the
  /// product space (a reducible generator set; z stays diagonal).
  static RotationPlan for_product(const AngMomTriple& l, const AngMomTriple& s) {
    const Eigen::Index dl = l.dimension(), ds = s.dimension();
    ComplexMatrix jy = kron(l.y, ComplexMatrix::Identity(ds, ds)) + kron(ComplexMatrix::Identity(dl, dl), s.y);
    RealVector jz(dl * ds);
    for (Eigen::Index a = 0; a < dl; ++a)
      for (Eigen::Index b = 0; b < ds; ++b)
        jz(a * ds + b) = l.z(a, a).real() + s.z(b, b).real();
    return RotationPlan(std::move(jz), jy);
  }

  Eigen::Index dimension() const { return zdiag_.size(); }

  /// e^{-i phi z} e^{-i theta y} e^{+/- i phi z}, sign per gauge patch.
  ComplexMatrix unitary(double theta, double phi, const GaugeChoice& gauge = {}) const {
    detail::check_theta(theta);
    const double inner = patch_at(gauge, theta) == GaugePatch::North ? phi : -phi;
    const Eigen::Index n = dimension();
    ComplexVector right(n), left(n), mid(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      right(k) = std::polar(1.0, inner * zdiag_(k));
      left(k) = std::polar(1.0, -phi * zdiag_(k));
    }
    for (Eigen::Index k = 0; k < n; ++k) mid(k) = std::polar(1.0, -theta * lambda_(k));
    ComplexMatrix ry = evecs_ * mid.asDiagonal() * evecs_.adjoint();
    return left.asDiagonal() * ry * right.asDiagonal();
  }

  /// The rotation applied to a single reference vector; O(dim^2).
  ComplexVector apply(double theta, double phi, const GaugeChoice& gauge, const ComplexVector& ref) const {
    detail::check_theta(theta);
    if (ref.size() != dimension()) throw std::invalid_argument("RotationPlan::apply: dimension mismatch");
    const double inner = patch_at(gauge, theta) == GaugePatch::North ? phi : -phi;
    const Eigen::Index n = dimension();
    ComplexVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(k) = std::polar(1.0, inner * zdiag_(k)) * ref(k);
    ComplexVector w = evecs_.adjoint() * v;
    for (Eigen::Index k = 0; k < n; ++k) w(k) *= std::polar(1.0, -theta * lambda_(k));
    v.noalias() = evecs_ * w;
    for (Eigen::Index k = 0; k < n; ++k) v(k) *= std::polar(1.0, -phi * zdiag_(k));
    return v;
  }

 private:
  RealVector zdiag_;
  ComplexMatrix evecs_;
  RealVector lambda_;
};

/// Rotation operator carrying the north-pole eigenframe to direction
/// (theta, phi). Exact spectral exponentials, unitary to machine precision.
inline ComplexMatrix rotation(const AngMomTriple& t, double theta, double phi, const GaugeChoice& gauge = {}) {
  return RotationPlan::for_operators(t).unitary(theta, phi, gauge);
}

}  // namespace lsphase::qops
