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

#include "qlsid/physical_realization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace qls {

CMatrix solve_lom(const DoubledUpMatrix& a0, const DoubledUpMatrix& c0) {
  const CMatrix a = a0.dense();
  const CMatrix c = c0.dense();
  const CMatrix q = c.adjoint() * j_matrix(c0.half_rows()) * c;
  return solve_lyapunov(a.adjoint(), q);
}

double symplectic_residual(const DoubledUpMatrix& t) {
  const CMatrix d = t.dense();
  const CMatrix f = flat_dense(d);
  const CMatrix eye = CMatrix::Identity(d.rows(), d.cols());
  return std::max(max_abs(f * d - eye), max_abs(d * f - eye));
}

PhysicalizationTrace physicalize(const TransferFunctionSISO& tf_in) {
  const TransferFunctionSISO tf = tf_in.reduced();
  PhysicalizationTrace tr;
  const auto grid = log_grid(1e-2, 1e2, 50);
  if (tf.xi_minus.poles.empty() && tf.xi_plus.is_zero()) {
    tr.result = QlsSystem::Trivial(1);
    tr.gilbert = state_space(tr.result);
    return tr;
  }
  try {
    tr.gilbert = gilbert_realization(tf);
  } catch (const Error& e) {
    const bool fallback = (e.kind() == ErrorKind::kRealPole ||
                           e.kind() == ErrorKind::kRepeatedPole ||
                           e.kind() == ErrorKind::kResidueRankExceedsOne) &&
                          tf.xi_plus.is_zero();
    if (!fallback) throw;
    tr.result = series_chain(passive_cascade(tf));
    tr.gilbert = state_space(tr.result);
    tr.residuals.transfer = transfer_grid_gap(tf_rational(tr.result), tf, grid);
    return tr;
  }
  const DoubledUpMatrix& a0 = tr.gilbert.A;
  const DoubledUpMatrix& c0 = tr.gilbert.C;
  const Index n = a0.half_rows();
  tr.Q = solve_lom(a0, c0);
  const CMatrix j = j_matrix(n);
  const CMatrix lom = tr.Q * a0.dense() + a0.dense().adjoint() * tr.Q +
                      c0.dense().adjoint() * j_matrix(1) * c0.dense();
  tr.residuals.lom = max_abs(lom);
  const CMatrix jq = j * tr.Q;
  if (condition_number(jq) > 1e12) {
    throw Error(ErrorKind::kSingularTransform, "T♭T is numerically singular");
  }
  tr.TflatT = DoubledUpMatrix::Project(jq);
  const SymplecticEigenData eig = symplectic_canonical_form(tr.TflatT, 1e-6);
  const SqueezeFactor sq = symplectic_square_root(eig);
  tr.W = eig.W;
  tr.Tbar = sq.Nbar;
  tr.T = tr.Tbar * tr.W.flat();
  tr.residuals.canonical = max_abs(
      (tr.W * sq.Nbar.flat() * sq.Nbar * tr.W.flat()).dense() - jq);
  tr.residuals.flat_t = max_abs((tr.T.flat() * tr.T).dense() - jq);
  const DoubledUpMatrix tinv = tr.W * tr.Tbar.inverse();
  const DoubledUpMatrix c = c0 * tinv;
  const DoubledUpMatrix a = tr.T * a0 * tinv;
  tr.residuals.input = max_abs((tr.T * tr.gilbert.B + c.flat()).dense());
  const DoubledUpMatrix omega = hamiltonian_from_drift(a, c);
  const double oscale = std::max(1.0, max_abs(omega.dense()));
  try {
    tr.result = QlsSystem(DoubledUpMatrix::Identity(1), c, omega, 1e-6 * oscale);
  } catch (const Error& e) {
    throw Error(ErrorKind::kNonPhysical, e.what());
  }
  const StateSpace ss{a, tr.T * tr.gilbert.B, c, tr.gilbert.D};
  tr.residuals.realizable = physical_realizability_residual(ss);
  tr.residuals.transfer = transfer_grid_gap(tf_rational(tr.result), tf, grid);
  const double scale = std::max({1.0, max_abs(a.dense()), max_abs(c.dense())});
  if (tr.residuals.realizable > 1e-6 * scale || tr.residuals.input > 1e-6 * scale) {
    throw Error(ErrorKind::kNonPhysical,
                "realization violates the physical realizability conditions");
  }
  return tr;
}

namespace {

std::optional<DoubledUpMatrix> Validate(const QlsSystem& sys1,
                                        const QlsSystem& sys2,
                                        const CMatrix& t, double tol) {
  if (!t.allFinite()) return std::nullopt;
  const DoubledUpMatrix td = DoubledUpMatrix::Project(t);
  const double scale = std::max(1.0, max_abs(t));
  if (doubled_up_defect(t) > 1e-6 * scale) return std::nullopt;
  if (symplectic_residual(td) > 1e-6 * scale * scale) return std::nullopt;
  const QlsSystem moved = apply_symplectic(sys1, td);
  const double sscale = std::max(
      {1.0, max_abs(sys2.C().dense()), max_abs(sys2.Omega().dense())});
  if (system_distance(moved, sys2) > std::max(tol, 1e-7) * sscale * scale) {
    return std::nullopt;
  }
  return td;
}

}  // namespace

std::optional<DoubledUpMatrix> equivalence_check(const QlsSystem& sys1,
                                                 const QlsSystem& sys2,
                                                 double tol) {
  for (const QlsSystem* s : {&sys1, &sys2}) {
    if (!is_hurwitz(*s)) throw Error(ErrorKind::kNotHurwitz, "equivalence_check");
    if (!is_minimal(*s)) throw Error(ErrorKind::kNotMinimal, "equivalence_check");
  }
  if (sys1.n_modes() != sys2.n_modes() ||
      sys1.n_channels() != sys2.n_channels()) {
    return std::nullopt;
  }
  if (max_abs(sys1.S().dense() - sys2.S().dense()) > 1e-7) return std::nullopt;
  const Index n2 = 2 * sys1.n_modes();
  if (n2 == 0) return DoubledUpMatrix::Identity(0);
  const CMatrix a1 = drift(sys1).dense();
  const CMatrix a2 = drift(sys2).dense();
  Eigen::ComplexEigenSolver<CMatrix> e1(a1), e2(a2);
  const CVector l1 = e1.eigenvalues();
  const CVector l2 = e2.eigenvalues();
  const double scale = std::max({1.0, l1.cwiseAbs().maxCoeff(),
                                 l2.cwiseAbs().maxCoeff()});
  std::vector<Index> match(n2, -1);
  std::vector<bool> used(n2, false);
  for (Index i = 0; i < n2; ++i) {
    Index best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < n2; ++k) {
      const double d = std::abs(l1(i) - l2(k));
      if (!used[k] && d < bd) bd = d, best = k;
    }
    if (bd > 1e-7 * scale) return std::nullopt;
    used[best] = true;
    match[i] = best;
  }
  bool distinct = true;
  for (Index i = 0; i < n2 && distinct; ++i) {
    for (Index k = i + 1; k < n2; ++k) {
      if (std::abs(l1(i) - l1(k)) <= 1e-6 * scale) {
        distinct = false;
        break;
      }
    }
  }
  const CMatrix c1 = sys1.C().dense();
  const CMatrix c2 = sys2.C().dense();
  CMatrix t;
  if (distinct) {
    const CMatrix x1 = e1.eigenvectors();
    CMatrix x2(n2, n2);
    for (Index i = 0; i < n2; ++i) x2.col(i) = e2.eigenvectors().col(match[i]);
    const CMatrix g1 = c1 * x1;
    const CMatrix g2 = c2 * x2;
    CVector d(n2);
    for (Index i = 0; i < n2; ++i) {
      const Complex den = g2.col(i).squaredNorm();
      if (std::abs(den) == 0.0) return std::nullopt;
      d(i) = g2.col(i).dot(g1.col(i)) / den;
    }
    t = x2 * d.asDiagonal() * x1.inverse();
  } else {
    // C₂ A₂^k T = C₁ A₁^k.
    const Index m2 = c1.rows();
    CMatrix o1(m2 * n2, n2), o2(m2 * n2, n2);
    CMatrix b1 = c1, b2 = c2;
    for (Index k = 0; k < n2; ++k) {
      o1.middleRows(k * m2, m2) = b1;
      o2.middleRows(k * m2, m2) = b2;
      b1 = b1 * a1;
      b2 = b2 * a2;
    }
    t = o2.completeOrthogonalDecomposition().solve(o1);
  }
  return Validate(sys1, sys2, t, tol);
}

}  // namespace qls
