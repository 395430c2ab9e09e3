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
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lsphase/qops.hpp"

namespace lsphase::spin_orbit {

enum class Branch { Plus, Minus, Extremal };

/// Block eigenstate label (l, mu, branch). Interior blocks carry a +/-
/// branch; the two extremal product states |l,+l>|+> and |l,-l>|-> are
/// labeled Extremal with the sign carried by mu itself.
struct QuantumNumbers {
  int l = 0;
  HalfInt mu;
  Branch branch = Branch::Extremal;

  static QuantumNumbers interior(int l, HalfInt mu, Branch branch) {
    validate_common(l, mu);
    if (branch == Branch::Extremal) throw std::invalid_argument("interior state cannot carry the extremal branch tag");
    if (mu.abs().twice() == 2 * l + 1) {
      throw std::invalid_argument("|mu| = l + 1/2 labels an extremal singlet, not an interior block");
    }
    return {l, mu, branch};
  }

  static QuantumNumbers extremal(int l, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("extremal sign must be +1 or -1");
    HalfInt mu = HalfInt::from_twice(sign * (2 * l + 1));
    validate_common(l, mu);
    return {l, mu, Branch::Extremal};
  }

  static QuantumNumbers make(int l, HalfInt mu, Branch branch) {
    if (mu.abs().twice() == 2 * l + 1) {
      if (branch != Branch::Extremal) throw std::invalid_argument("|mu| = l + 1/2 requires the extremal branch");
      return extremal(l, mu.sign());
    }
    return interior(l, mu, branch);
  }

  bool is_extremal() const { return branch == Branch::Extremal; }

  /// Upper/lower sign of the branch label; for extremal states the paper's
  /// +/- is the sign of mu.
  int branch_sign() const {
    if (branch == Branch::Plus) return 1;
    if (branch == Branch::Minus) return -1;
    return mu.sign();
  }

 private:
  static void validate_common(int l, HalfInt mu) {
    if (l < 0) throw std::invalid_argument("l must be >= 0");
    if (mu.twice() % 2 == 0) throw std::invalid_argument("mu must be half-odd for integer l: " + mu.str());
    if (mu.abs().twice() > 2 * l + 1) throw std::invalid_argument("|mu| must not exceed l + 1/2");
  }
};

/// Zeeman-LS strength ratio. g = 0 is the singular decoupling point and is
/// rejected; magnitudes are capped (default 1e6) to keep the Paschen-Back
/// checks well-conditioned.
class CouplingRatio {
 public:
  explicit CouplingRatio(double g, double cap = 1e6) : g_(g) {
    if (!std::isfinite(g)) throw std::invalid_argument("coupling ratio must be finite");
    if (g == 0.0) throw std::invalid_argument("g = 0 is a singular decoupling point");
    if (std::abs(g) > cap) throw std::invalid_argument("|g| exceeds the validity cap");
  }
  double value() const { return g_; }

 private:
  double g_;
};

/// Analytic data of one interior 2x2 block: mean energy E, half-splitting
/// Delta E > 0 and the mixing cosine.
struct BlockParams {
  double energy;
  double splitting;
  double cos_alpha;
};

/// Index of |l,m>|s> in the product basis; m runs l, l-1, ..., -l (major)
/// and the spin factor is ordered (+, -).
inline Eigen::Index basis_index(int l, HalfInt m, bool spin_down) {
  if (m.abs().twice() > 2 * l || !m.is_integer()) throw std::invalid_argument("invalid orbital label m = " + m.str());
  return static_cast<Eigen::Index>(l - m.twice() / 2) * 2 + (spin_down ? 1 : 0);
}

/// 2 L.S assembled from ladder matrices: 2 Lz Sz + L+ S- + L- S+.
inline ComplexMatrix twice_ls_coupling(const qops::AngMomTriple& lops, const qops::AngMomTriple& sops) {
  return 2.0 * qops::embed(lops.z, sops.z) +
         qops::embed(qops::ladder_plus(lops), qops::ladder_minus(sops)) +
         qops::embed(qops::ladder_minus(lops), qops::ladder_plus(sops));
}

/// H = g n.(L + 2S) + 2 L.S on the 2(2l+1)-dimensional product space,
/// assembled directly from the field direction (no rotation operators).
inline ComplexMatrix hamiltonian(int l, const CouplingRatio& g, double theta, double phi) {
  if (l < 0) throw std::invalid_argument("l must be >= 0");
  const auto lops = qops::build_angmom(HalfInt::integer(l));
  const auto sops = qops::build_angmom(HalfInt::from_twice(1));
  const Eigen::Index dl = lops.dimension(), ds = 2;
  const ComplexMatrix il = ComplexMatrix::Identity(dl, dl), is = ComplexMatrix::Identity(ds, ds);
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  ComplexMatrix zeeman =
      nx * (qops::embed(lops.x, is) + 2.0 * qops::embed(il, sops.x)) +
      ny * (qops::embed(lops.y, is) + 2.0 * qops::embed(il, sops.y)) +
      nz * (qops::embed(lops.z, is) + 2.0 * qops::embed(il, sops.z));
  return g.value() * zeeman + twice_ls_coupling(lops, sops);
}

inline ComplexMatrix hamiltonian_z(int l, const CouplingRatio& g) { return hamiltonian(l, g, 0.0, 0.0); }

struct Block {
  HalfInt mu;
  std::vector<Eigen::Index> indices;  // (m = mu-1/2, +) first, (m = mu+1/2, -) second
  bool extremal;
};

/// Blocks of H_z by the J_z eigenvalue mu, descending. Two extremal
/// singletons plus 2l two-dimensional blocks; the index sets partition the
/// product basis.
inline std::vector<Block> block_decompose(int l) {
  if (l < 0) throw std::invalid_argument("l must be >= 0");
  std::vector<Block> blocks;
  for (int tmu = 2 * l + 1; tmu >= -(2 * l + 1); tmu -= 2) {
    const HalfInt mu = HalfInt::from_twice(tmu);
    Block b{mu, {}, mu.abs().twice() == 2 * l + 1};
    if (b.extremal) {
      b.indices = {basis_index(l, HalfInt::integer(mu.sign() * l), mu.sign() < 0)};
    } else {
      b.indices = {basis_index(l, HalfInt::from_twice(tmu - 1), false),
                   basis_index(l, HalfInt::from_twice(tmu + 1), true)};
    }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

namespace detail {
inline void require_interior(int l, HalfInt mu) {
  if (l < 0) throw std::invalid_argument("l must be >= 0");
  if (mu.twice() % 2 == 0) throw std::invalid_argument("mu must be half-odd");
  if (mu.abs().twice() > 2 * l - 1) {
    throw std::invalid_argument("no 2x2 block for mu = " + mu.str() + " at l = " + std::to_string(l));
  }
}
}  // namespace detail

/// E, Delta E and cos(alpha) of an interior block. The radicand
/// g^2 + 4 g mu + (2l+1)^2 is analytically positive for |mu| <= l - 1/2.
inline BlockParams block_params(int l, HalfInt mu, const CouplingRatio& g) {
  detail::require_interior(l, mu);
  const double gv = g.value();
  const double muv = mu.value();
  const double radicand = gv * gv + 4.0 * gv * muv + double(2 * l + 1) * double(2 * l + 1);
  assert(radicand > 0.0);
  const double root = std::sqrt(radicand);
  return {gv * muv - 0.5, 0.5 * root, (2.0 * muv + gv) / root};
}

/// Eigenvector coefficients on the mu block basis, + branch first. Interior
/// blocks give the orthonormal pair (cos a/2, sin a/2), (-sin a/2, cos a/2)
/// with alpha the principal arccos (sin alpha >= 0 matches the positive
/// off-diagonal element in this basis ordering). Extremal blocks give the
/// single product vector.
inline std::vector<Eigen::VectorXd> eigenvectors(int l, HalfInt mu, const CouplingRatio& g) {
  if (mu.abs().twice() == 2 * l + 1) {
    Eigen::VectorXd one(1);
    one << 1.0;
    return {one};
  }
  const BlockParams p = block_params(l, mu, g);
  const double alpha = std::acos(std::clamp(p.cos_alpha, -1.0, 1.0));
  Eigen::VectorXd plus(2), minus(2);
  plus << std::cos(alpha / 2), std::sin(alpha / 2);
  minus << -std::sin(alpha / 2), std::cos(alpha / 2);
  return {plus, minus};
}

/// Full-space H_z eigenvector for the labeled state (real coefficients in
/// the product basis).
inline ComplexVector eigenstate(const QuantumNumbers& qn, const CouplingRatio& g) {
  const Eigen::Index dim = 2 * (2 * qn.l + 1);
  ComplexVector v = ComplexVector::Zero(dim);
  if (qn.is_extremal()) {
    v(basis_index(qn.l, HalfInt::integer(qn.mu.sign() * qn.l), qn.mu.sign() < 0)) = 1.0;
    return v;
  }
  const auto coeffs = eigenvectors(qn.l, qn.mu, g);
  const Eigen::VectorXd& c = qn.branch == Branch::Plus ? coeffs[0] : coeffs[1];
  v(basis_index(qn.l, HalfInt::from_twice(qn.mu.twice() - 1), false)) = c(0);
  v(basis_index(qn.l, HalfInt::from_twice(qn.mu.twice() + 1), true)) = c(1);
  return v;
}

inline double energy(const QuantumNumbers& qn, const CouplingRatio& g) {
  if (qn.is_extremal()) {
    return qn.mu.sign() * g.value() * (qn.l + 1.0) + qn.l;  // H_z |l,+/-l>|+/-> eigenvalue
  }
  const BlockParams p = block_params(qn.l, qn.mu, g);
  return p.energy + qn.branch_sign() * p.splitting;
}

/// All 2(2l+1) analytic eigenvalues (with multiplicity), labeled order:
/// blocks descending in mu, + branch before - within a block.
inline std::vector<double> analytic_spectrum(int l, const CouplingRatio& g) {
  std::vector<double> out;
  for (const Block& b : block_decompose(l)) {
    if (b.extremal) {
      out.push_back(energy(QuantumNumbers::extremal(l, b.mu.sign()), g));
    } else {
      const BlockParams p = block_params(l, b.mu, g);
      out.push_back(p.energy + p.splitting);
      out.push_back(p.energy - p.splitting);
    }
  }
  return out;
}

/// Distance from the labeled level to the nearest other level of H_z
/// (the spectrum is direction-independent, so this is loop-global).
inline double spectral_gap(const QuantumNumbers& qn, const CouplingRatio& g) {
  const double e0 = energy(qn, g);
  double gap = std::numeric_limits<double>::infinity();
  for (const Block& b : block_decompose(qn.l)) {
    for (int bs : {1, -1}) {
      if (b.extremal && bs < 0) continue;
      QuantumNumbers other = b.extremal ? QuantumNumbers::extremal(qn.l, b.mu.sign())
                                        : QuantumNumbers::interior(qn.l, b.mu, bs > 0 ? Branch::Plus : Branch::Minus);
      if (other.mu == qn.mu && other.branch == qn.branch) continue;
      gap = std::min(gap, std::abs(energy(other, g) - e0));
    }
  }
  return gap;
}

}  // namespace lsphase::spin_orbit
