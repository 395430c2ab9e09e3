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
#include <complex>
#include <numbers>
#include <stdexcept>

#include "lsphase/spin_orbit.hpp"

namespace lsphase::phases {

using spin_orbit::Branch;
using spin_orbit::CouplingRatio;
using spin_orbit::QuantumNumbers;

enum class Subsystem { L, S, J };
enum class Provenance { Analytic, Bargmann, Tdse };

/// Tolerances separating analytic degeneracies and nodal points from
/// roundoff. A marginal phase is reported undefined when the marginal
/// eigenvalues are closer than `degeneracy` (|cos alpha| test) or the
/// visibility falls below `visibility`.
struct Tolerances {
  double degeneracy = 1e-12;
  double visibility = 1e-12;
};

struct PhaseResult {
  double value = 0.0;       // radians, principal branch (-pi, pi]
  double visibility = 1.0;  // in [0, 1]
  bool defined = true;      // value is meaningless when false
  Provenance provenance = Provenance::Analytic;
};

/// Reduce an angle into the principal branch (-pi, pi].
inline double principal(double angle) {
  double r = std::remainder(angle, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

/// Principal argument of a nonzero complex number (the phase functional
/// z -> z/|z| in angle form). z = 0 has no phase and is rejected.
inline double phase_of(Complex z) {
  if (z == Complex(0.0, 0.0)) throw std::domain_error("phase_of: zero has no phase");
  return std::arg(z);
}

/// Pure-state geometric phase of the followed block eigenstate: -mu Omega,
/// independent of the coupling ratio (which is why there is no g argument).
inline PhaseResult total_phase(const QuantumNumbers& qn, double omega) {
  return {principal(-qn.mu.value() * omega), 1.0, true, Provenance::Analytic};
}

namespace detail {
inline int require_marginal(Subsystem sub) {
  if (sub == Subsystem::J) throw std::invalid_argument("marginal phase: subsystem must be L or S");
  return 0;
}
}  // namespace detail

/// Weighted interference sum whose argument is the marginal geometric phase
/// and whose magnitude is the visibility. Interior blocks combine the two
/// marginal eigenstate phase factors with weights (1 +/- cos alpha)/2;
/// extremal product states give a pure phase factor of magnitude one.
inline Complex marginal_interference(Subsystem sub, const QuantumNumbers& qn, const CouplingRatio& g, double omega) {
  detail::require_marginal(sub);
  const int bs = qn.branch_sign();
  if (qn.is_extremal()) {
    if (sub == Subsystem::S) return std::polar(1.0, -bs * omega / 2.0);
    return std::polar(1.0, -bs * qn.l * omega);
  }
  const double c = spin_orbit::block_params(qn.l, qn.mu, g).cos_alpha;
  const double half = omega / 2.0;
  if (sub == Subsystem::S) {
    return {std::cos(half), -bs * c * std::sin(half)};
  }
  const double mu = qn.mu.value();
  return 0.5 * ((1.0 + bs * c) * std::polar(1.0, -(mu - 0.5) * omega) +
                (1.0 - bs * c) * std::polar(1.0, -(mu + 0.5) * omega));
}

/// Interference-fringe visibility of either marginal (identical for L and S
/// by construction; shared implementation keeps them bit-identical).
inline double visibility(const QuantumNumbers& qn, const CouplingRatio& g, double omega) {
  if (qn.is_extremal()) throw std::invalid_argument("visibility: extremal marginals are pure (visibility 1)");
  const double c = spin_orbit::block_params(qn.l, qn.mu, g).cos_alpha;
  return std::abs(Complex(std::cos(omega / 2.0), -c * std::sin(omega / 2.0)));
}

/// Marginal geometric phase from the exact interference sum (never the
/// arctan closed form, which is branch-ambiguous past Omega = pi).
/// Undefined when the marginal eigenvalues are degenerate or the
/// visibility vanishes; extremal labels give the g-independent product
/// values -sign(mu) l Omega (L) and -sign(mu) Omega/2 (S).
inline PhaseResult marginal_phase(Subsystem sub, const QuantumNumbers& qn, const CouplingRatio& g, double omega,
                                  const Tolerances& tol = {}) {
  detail::require_marginal(sub);
  const Complex w = marginal_interference(sub, qn, g, omega);
  if (qn.is_extremal()) {
    return {principal(std::arg(w)), 1.0, true, Provenance::Analytic};
  }
  const double c = spin_orbit::block_params(qn.l, qn.mu, g).cos_alpha;
  const double vis = visibility(qn, g, omega);
  const bool defined = std::abs(c) >= tol.degeneracy && vis >= tol.visibility;
  const double value = std::abs(w) > 0.0 ? principal(std::arg(w)) : 0.0;
  return {value, vis, defined, Provenance::Analytic};
}

/// Gamma_L + Gamma_S - Gamma_J reduced into (-pi, pi]; analytically zero.
/// Undefined marginals propagate as an undefined result.
inline PhaseResult sum_rule_residual(const QuantumNumbers& qn, const CouplingRatio& g, double omega,
                                     const Tolerances& tol = {}) {
  const PhaseResult gl = marginal_phase(Subsystem::L, qn, g, omega, tol);
  const PhaseResult gs = marginal_phase(Subsystem::S, qn, g, omega, tol);
  const PhaseResult gj = total_phase(qn, omega);
  PhaseResult out;
  out.value = principal(gl.value + gs.value - gj.value);
  out.visibility = std::min(gl.visibility, gs.visibility);
  out.defined = gl.defined && gs.defined;
  return out;
}

enum class Regime { PaschenBack, Zeeman };

/// Closed-form limit value used as an asymptote reference: Paschen-Back
/// replaces cos alpha by 1 (the g -> +infinity limit), Zeeman by
/// mu/(l + 1/2). Evaluated through the same interference sums so the
/// values stay on the principal branch for every Omega.
inline double limit_phase(Regime regime, Subsystem sub, const QuantumNumbers& qn, double omega) {
  detail::require_marginal(sub);
  if (qn.is_extremal()) throw std::invalid_argument("limit_phase: interior blocks only");
  const double c = regime == Regime::PaschenBack ? 1.0 : qn.mu.value() / (qn.l + 0.5);
  const int bs = qn.branch_sign();
  const double half = omega / 2.0;
  Complex w;
  if (sub == Subsystem::S) {
    w = {std::cos(half), -bs * c * std::sin(half)};
  } else {
    const double mu = qn.mu.value();
    w = 0.5 * ((1.0 + bs * c) * std::polar(1.0, -(mu - 0.5) * omega) +
               (1.0 - bs * c) * std::polar(1.0, -(mu + 0.5) * omega));
  }
  return principal(std::arg(w));
}

}  // namespace lsphase::phases
