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

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace lsphase {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thrown when an adaptive numerical procedure cannot reach its target
/// (refinement limits, ill-conditioned overlaps). Distinct from input
/// validation errors so callers can map it to a diagnostic exit code.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) < tol;
}

inline bool is_unitary(const ComplexMatrix& m, double tol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix gram = m.adjoint() * m;
  gram -= ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs(gram) < tol;
}

/// Kronecker product with the first factor major:
/// kron(A, B)[(i*rb + k), (j*cb + l)] = A(i, j) * B(k, l).
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Apply (A ⊗ I_db) + contraction-free structure is not needed here; for a
/// pure state on a da*db product space, these return the reduced density
/// matrices of the first/second factor.
inline ComplexMatrix partial_trace_second(const ComplexVector& psi, Eigen::Index da, Eigen::Index db) {
  if (psi.size() != da * db) throw std::invalid_argument("partial_trace: dimension mismatch");
  Eigen::Map<const ComplexMatrix> m(psi.data(), db, da);  // column a holds the db-block of a
  ComplexMatrix rho = m.transpose() * m.conjugate();      // rho_A[a,b] = sum_s psi[a,s] conj(psi[b,s])
  return rho;
}

inline ComplexMatrix partial_trace_first(const ComplexVector& psi, Eigen::Index da, Eigen::Index db) {
  if (psi.size() != da * db) throw std::invalid_argument("partial_trace: dimension mismatch");
  Eigen::Map<const ComplexMatrix> m(psi.data(), db, da);
  ComplexMatrix rho = m * m.adjoint();                    // rho_B[s,t] = sum_a psi[a,s] conj(psi[a,t])
  return rho;
}

}  // namespace lsphase
