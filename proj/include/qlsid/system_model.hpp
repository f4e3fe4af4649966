// Copyright 2026 The qlsid Authors
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

#pragma once

#include "qlsid/core_linalg.hpp"

namespace qls {

/// A quantum linear system (S, C, Ω) with n modes and m channels. The mode
/// count may be zero (the trivial system, Ξ = S).
class QlsSystem {
 public:
  QlsSystem() = default;

  /// Throws ShapeMismatch, InvalidArgument (Ω₋ not Hermitian or Ω₊ not
  /// symmetric) or NotSymplectic (S).
  QlsSystem(DoubledUpMatrix S, DoubledUpMatrix C, DoubledUpMatrix Omega,
            double tol = kDefaultTol);

  /// Trivial scattering.
  static QlsSystem FromBlocks(const CMatrix& c_minus, const CMatrix& c_plus,
                              const CMatrix& omega_minus,
                              const CMatrix& omega_plus);
  static QlsSystem Trivial(Index m);

  Index n_modes() const { return C_.half_cols(); }
  Index n_channels() const { return C_.half_rows(); }

  const DoubledUpMatrix& S() const { return S_; }
  const DoubledUpMatrix& C() const { return C_; }
  const DoubledUpMatrix& Omega() const { return Omega_; }
  const CMatrix& c_minus() const { return C_.upper_left(); }
  const CMatrix& c_plus() const { return C_.upper_right(); }
  const CMatrix& omega_minus() const { return Omega_.upper_left(); }
  const CMatrix& omega_plus() const { return Omega_.upper_right(); }

  bool has_trivial_scattering(double tol = kDefaultTol) const;

 private:
  DoubledUpMatrix S_;
  DoubledUpMatrix C_;
  DoubledUpMatrix Omega_;
};

/// Gaussian input field state with covariance V(N, M).
class GaussianInput {
 public:
  GaussianInput() = default;
  /// Throws NotACovariance when N is not Hermitian, M not symmetric or
  /// V(N, M) is not positive semidefinite.
  GaussianInput(CMatrix N, CMatrix M, double tol = kDefaultTol);

  static GaussianInput Vacuum(Index m);
  /// Single-channel pure squeezed state with real M = sqrt(N(N+1)).
  static GaussianInput Squeezed(double N);

  Index n_channels() const { return N_.rows(); }
  const CMatrix& N() const { return N_; }
  const CMatrix& M() const { return M_; }
  CMatrix V() const { return covariance_matrix(N_, M_); }
  bool is_vacuum(double tol = kDefaultTol) const;
  bool is_pure(double tol = 1e-6) const;

 private:
  CMatrix N_;
  CMatrix M_;
};

/// (A, B, C, D) with Ξ(s) = D + C (s - A)⁻¹ B.
struct StateSpace {
  DoubledUpMatrix A;
  DoubledUpMatrix B;
  DoubledUpMatrix C;
  DoubledUpMatrix D;

  CMatrix transfer(Complex s) const;
};

/// A = -½ C♭C - i J Ω.
DoubledUpMatrix drift(const QlsSystem& sys);
/// (A₋, A₊) from the componentwise formula.
std::pair<CMatrix, CMatrix> drift_components(const QlsSystem& sys);

/// (A, -C♭ S, C, S).
StateSpace state_space(const QlsSystem& sys);

/// A + A♭ + C♭C = 0 and B = -C♭ D within tol (relative to the data scale).
bool is_physically_realizable(const StateSpace& ss, double tol = kDefaultTol);
/// Residual max of the two conditions above.
double physical_realizability_residual(const StateSpace& ss);

CMatrix observability_matrix(const QlsSystem& sys);
/// [B, AB, ..., A^{2n-1} B] of (A, -C♭).
CMatrix controllability_matrix(const QlsSystem& sys);
bool is_minimal(const QlsSystem& sys, double tol = 1e-10);
bool is_hurwitz(const QlsSystem& sys);
CVector drift_eigenvalues(const QlsSystem& sys);
bool one_mode_hurwitz_closed_form(Complex c_minus, Complex c_plus,
                                  double omega_minus, Complex omega_plus);

/// g2 ◁ g1: the output of g1 drives g2. Modes ordered g1 first. Throws
/// ChannelMismatch, InvalidArgument for nontrivial scattering.
QlsSystem series_product(const QlsSystem& g2, const QlsSystem& g1);

/// C' = C T♭, J Ω' = T J Ω T♭. Throws NotSymplectic.
QlsSystem apply_symplectic(const QlsSystem& sys, const DoubledUpMatrix& t);

bool is_passive(const QlsSystem& sys, double tol = kDefaultTol);

/// Ω = i J (A + ½ C♭C), used to rebuild Hamiltonians from drifts.
DoubledUpMatrix hamiltonian_from_drift(const DoubledUpMatrix& a,
                                       const DoubledUpMatrix& c);

/// Max-entry distance between two systems of equal shape.
double system_distance(const QlsSystem& a, const QlsSystem& b);

}  // namespace qls
