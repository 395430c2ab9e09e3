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
#include <vector>

#include "lsphase/loops.hpp"
#include "lsphase/phases.hpp"

namespace lsphase::holonomy {

using phases::PhaseResult;
using phases::Provenance;
using phases::Subsystem;
using phases::Tolerances;
using spin_orbit::CouplingRatio;
using spin_orbit::QuantumNumbers;

/// Discrete geometric phase of a closed frame sequence: the negative
/// accumulated argument of the adjacent overlaps <f_k|f_{k+1}>, including
/// the overlap closing the cycle onto the first frame. Gauge-invariant
/// under per-frame phase changes. The value is accumulated continuously
/// (not reduced mod 2 pi), so for fine loops it converges to the Berry
/// phase without branch ambiguity.
inline double bargmann_phase(const std::vector<ComplexVector>& frames) {
  if (frames.size() < 2) throw std::invalid_argument("bargmann_phase: need at least two frames");
  double acc = 0.0;
  auto take = [&acc](const ComplexVector& a, const ComplexVector& b) {
    const Complex ov = a.dot(b);  // Eigen: conjugate-linear in a
    if (std::abs(ov) < 0.1) throw numeric_error("bargmann_phase: adjacent overlap below 0.1, refinement required");
    acc += std::arg(ov);
  };
  for (std::size_t k = 0; k + 1 < frames.size(); ++k) take(frames[k], frames[k + 1]);
  take(frames.back(), frames.front());
  return -acc;
}

inline double min_adjacent_overlap(const std::vector<ComplexVector>& frames) {
  double m = 1.0;
  for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
    m = std::min(m, std::abs(frames[k].dot(frames[k + 1])));
  }
  return m;
}

/// Marginal (reduced) state of one factor of a pure product-space state,
/// eigen-decomposed with descending eigenvalues.
struct MarginalState {
  ComplexMatrix rho;
  RealVector eigenvalues;     // descending
  ComplexMatrix eigenvectors; // columns, matching order

  double purity() const { return (rho * rho).trace().real(); }
};

inline MarginalState marginal_state(const ComplexVector& state, Subsystem sub, int l) {
  if (sub == Subsystem::J) throw std::invalid_argument("marginal_state: subsystem must be L or S");
  const Eigen::Index dl = 2 * l + 1;
  if (state.size() != 2 * dl) throw std::invalid_argument("marginal_state: state dimension must be 2(2l+1)");
  MarginalState out;
  out.rho = sub == Subsystem::L ? partial_trace_second(state, dl, 2) : partial_trace_first(state, dl, 2);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(out.rho);
  if (es.info() != Eigen::Success) throw numeric_error("marginal_state: eigendecomposition failed");
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  return out;
}

inline Complex interference_sum(const std::vector<double>& weights, const std::vector<double>& gammas) {
  if (weights.size() != gammas.size()) throw std::invalid_argument("interference_sum: size mismatch");
  Complex z = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) z += weights[k] * std::polar(1.0, gammas[k]);
  return z;
}

/// Mixed-state geometric phase: arg of the weighted sum of eigenstate phase
/// factors, with the weighted magnitude as visibility. Undefined when the
/// weights are degenerate or the interference sum vanishes.
inline PhaseResult mixed_phase_from_angles(const std::vector<double>& weights, const std::vector<double>& gammas,
                                           const Tolerances& tol = {}) {
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  if (std::abs(wsum - 1.0) > 1e-9) throw std::invalid_argument("mixed_phase: weights must sum to 1");
  const Complex z = interference_sum(weights, gammas);
  bool degenerate = false;
  for (std::size_t i = 0; i < weights.size(); ++i)
    for (std::size_t j = i + 1; j < weights.size(); ++j)
      degenerate = degenerate || std::abs(weights[i] - weights[j]) < tol.degeneracy;
  PhaseResult out;
  out.visibility = std::abs(z);
  out.defined = !degenerate && out.visibility >= tol.visibility;
  out.value = out.visibility > 0.0 ? phases::principal(std::arg(z)) : 0.0;
  out.provenance = Provenance::Bargmann;
  return out;
}

inline PhaseResult mixed_phase(const std::vector<double>& weights,
                               const std::vector<std::vector<ComplexVector>>& eigen_frame_loops,
                               const Tolerances& tol = {}) {
  if (weights.size() != eigen_frame_loops.size()) throw std::invalid_argument("mixed_phase: one loop per weight");
  std::vector<double> gammas;
  gammas.reserve(weights.size());
  for (const auto& frames : eigen_frame_loops) gammas.push_back(bargmann_phase(frames));
  return mixed_phase_from_angles(weights, gammas, tol);
}

namespace detail {

constexpr int kMaxRefineDepth = 12;
constexpr double kOverlapTarget = 0.9;  // below this the loop is resampled at double density

/// Frames for each reference vector, with the loop resampled at double
/// density while any adjacent overlap drops below the target.
inline std::vector<std::vector<ComplexVector>> refined_frames(const loops::SphereLoop& loop,
                                                              const qops::RotationPlan& plan,
                                                              const qops::GaugeChoice& gauge,
                                                              const std::vector<ComplexVector>& references) {
  loops::SphereLoop current = loop;
  for (int depth = 0; depth <= kMaxRefineDepth; ++depth) {
    std::vector<std::vector<ComplexVector>> all;
    all.reserve(references.size());
    double worst = 1.0;
    for (const auto& ref : references) {
      all.push_back(loops::section_frames(current, plan, gauge, ref));
      worst = std::min(worst, min_adjacent_overlap(all.back()));
    }
    if (worst >= kOverlapTarget) return all;
    current = current.resampled(2);
  }
  throw numeric_error("section frames: overlaps stayed below 0.9 after maximal resampling");
}

}  // namespace detail

/// Numerical-holonomy route to the marginal phase: partial-trace the block
/// eigenstate, transport each marginal eigenvector with the subsystem
/// rotation (the marginals evolve unitarily under it), take the discrete
/// phase of each transported loop and interfere them with the marginal
/// eigenvalues as weights. Independent of the closed-form route.
inline PhaseResult oracle_marginal_phase(Subsystem sub, const QuantumNumbers& qn, const CouplingRatio& g,
                                         const loops::SphereLoop& loop, const qops::GaugeChoice& gauge = {},
                                         const Tolerances& tol = {}) {
  const ComplexVector psi = spin_orbit::eigenstate(qn, g);
  const MarginalState ms = marginal_state(psi, sub, qn.l);
  std::vector<double> weights;
  std::vector<ComplexVector> refs;
  for (Eigen::Index k = 0; k < ms.eigenvalues.size(); ++k) {
    if (ms.eigenvalues(k) > 1e-12) {
      weights.push_back(ms.eigenvalues(k));
      refs.push_back(ms.eigenvectors.col(k));
    }
  }
  const auto ops = qops::build_angmom(sub == Subsystem::L ? HalfInt::integer(qn.l) : HalfInt::from_twice(1));
  const auto plan = qops::RotationPlan::for_operators(ops);
  const auto frame_loops = detail::refined_frames(loop, plan, gauge, refs);
  return mixed_phase(weights, frame_loops, tol);
}

/// Discrete holonomy of the transported block eigenstate itself; converges
/// to the total geometric phase -mu Omega (accumulated, not reduced).
inline double oracle_total_phase(const QuantumNumbers& qn, const CouplingRatio& g, const loops::SphereLoop& loop,
                                 const qops::GaugeChoice& gauge = {}) {
  const auto lops = qops::build_angmom(HalfInt::integer(qn.l));
  const auto sops = qops::build_angmom(HalfInt::from_twice(1));
  const auto plan = qops::RotationPlan::for_product(lops, sops);
  const auto frames = detail::refined_frames(loop, plan, gauge, {spin_orbit::eigenstate(qn, g)});
  return bargmann_phase(frames.front());
}

/// Outcome of one time-dependent Schroedinger evolution along a loop
/// schedule. total_phase is arg<psi(0)|psi(T)>; dynamic_phase is the phase
/// -Int <H> dt accumulated by the energy expectation; geometric_phase is
/// their difference mod 2 pi. leakage is the maximum population outside the
/// followed instantaneous eigenvector over the ramp (checked at the end and
/// at intermediate checkpoints).
struct EvolutionReport {
  double total_phase = 0.0;
  double dynamic_phase = 0.0;
  double geometric_phase = 0.0;
  double leakage = 0.0;
  double norm_drift = 0.0;
  bool adiabatic_warning = false;
};

/// Step count keeping the RK4 norm drift comfortably below 1e-8 for a ramp
/// of the given length; never below the 1e4 default.
inline int suggested_steps(int l, const CouplingRatio& g, double ramp_time) {
  double emax = 0.0;
  for (double e : spin_orbit::analytic_spectrum(l, g)) emax = std::max(emax, std::abs(e));
  const double action = std::max(emax * ramp_time, 1.0);
  return std::max(10000, static_cast<int>(std::ceil(std::pow(action, 1.25) / 0.02)));
}

/// Fixed-step RK4 integration of i d|psi>/dt = H(t)|psi> with H following
/// the loop at arc-length-uniform speed over [0, T]. The state is
/// renormalized each step; the accumulated pre-renormalization drift is
/// reported. Leakage above 0.1 raises the non-adiabatic warning flag but is
/// not an error.
inline EvolutionReport tdse_evolve(const QuantumNumbers& qn, const CouplingRatio& g, const loops::SphereLoop& loop,
                                   double ramp_time, int steps) {
  if (!(ramp_time > 0.0)) throw std::invalid_argument("tdse_evolve: ramp time must be positive");
  if (steps < 2) throw std::invalid_argument("tdse_evolve: need at least 2 steps");
  const int l = qn.l;
  const auto lops = qops::build_angmom(HalfInt::integer(l));
  const auto sops = qops::build_angmom(HalfInt::from_twice(1));
  const Eigen::Index dl = lops.dimension();
  const ComplexMatrix il = ComplexMatrix::Identity(dl, dl), is = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix kx = qops::embed(lops.x, is) + 2.0 * qops::embed(il, sops.x);
  const ComplexMatrix ky = qops::embed(lops.y, is) + 2.0 * qops::embed(il, sops.y);
  const ComplexMatrix kz = qops::embed(lops.z, is) + 2.0 * qops::embed(il, sops.z);
  const ComplexMatrix lscoupling = spin_orbit::twice_ls_coupling(lops, sops);
  const double gv = g.value();
  auto hamiltonian_at = [&](double u) -> ComplexMatrix {
    const Eigen::Vector3d n = loop.point_at(u);
    return gv * (n.x() * kx + n.y() * ky + n.z() * kz) + lscoupling;
  };

  const auto plan = qops::RotationPlan::for_product(lops, sops);
  const ComplexVector ref = spin_orbit::eigenstate(qn, g);
  auto frame_at = [&](double u) -> ComplexVector {
    const auto p = loop.angles_at(u);
    return plan.apply(p.theta, p.phi, qops::GaugeChoice::north(), ref);
  };

  ComplexVector psi = frame_at(0.0);
  const ComplexVector start = psi;
  const double h = ramp_time / steps;
  const Complex mi(0.0, -1.0);

  ComplexMatrix h_curr = hamiltonian_at(0.0);
  double energy_prev = psi.dot(h_curr * psi).real();
  double dynamic_integral = 0.0;
  double drift = 0.0;
  double leakage = 0.0;
  const int check_every = std::max(1, steps / 128);

  for (int k = 0; k < steps; ++k) {
    const double um = (k + 0.5) / steps;
    const double u1 = static_cast<double>(k + 1) / steps;
    const ComplexMatrix h_mid = hamiltonian_at(um);
    const ComplexMatrix h_next = hamiltonian_at(u1);
    const ComplexVector k1 = mi * (h_curr * psi);
    const ComplexVector k2 = mi * (h_mid * (psi + 0.5 * h * k1));
    const ComplexVector k3 = mi * (h_mid * (psi + 0.5 * h * k2));
    const ComplexVector k4 = mi * (h_next * (psi + h * k3));
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double nrm = psi.norm();
    drift += std::abs(nrm - 1.0);
    psi /= nrm;
    h_curr = h_next;

    const double energy_now = psi.dot(h_curr * psi).real();
    dynamic_integral += 0.5 * h * (energy_prev + energy_now);  // trapezoid
    energy_prev = energy_now;

    if ((k + 1) % check_every == 0 || k + 1 == steps) {
      const ComplexVector chi = frame_at(u1);
      const double overlap = std::abs(chi.dot(psi));
      leakage = std::max(leakage, 1.0 - overlap * overlap);
    }
  }

  EvolutionReport report;
  report.total_phase = std::arg(start.dot(psi));
  report.dynamic_phase = -dynamic_integral;
  report.geometric_phase = phases::principal(report.total_phase - report.dynamic_phase);
  report.leakage = leakage;
  report.norm_drift = drift;
  report.adiabatic_warning = leakage > 0.1;
  return report;
}

}  // namespace lsphase::holonomy
