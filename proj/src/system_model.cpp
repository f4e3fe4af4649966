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

#include "qlsid/system_model.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qls {

QlsSystem::QlsSystem(DoubledUpMatrix S, DoubledUpMatrix C,
                     DoubledUpMatrix Omega, double tol)
    : S_(std::move(S)), C_(std::move(C)), Omega_(std::move(Omega)) {
  const Index n = C_.half_cols();
  const Index m = C_.half_rows();
  if (S_.half_rows() != m || S_.half_cols() != m) {
    throw Error(ErrorKind::kShapeMismatch, "S must be 2m x 2m");
  }
  if (Omega_.half_rows() != n || Omega_.half_cols() != n) {
    throw Error(ErrorKind::kShapeMismatch, "Omega must be 2n x 2n");
  }
  const CMatrix& om = Omega_.upper_left();
  const CMatrix& op = Omega_.upper_right();
  const double scale = std::max(1.0, max_abs(Omega_.dense()));
  if (max_abs(om - om.adjoint()) > tol * scale) {
    throw Error(ErrorKind::kInvalidArgument, "Omega_minus is not Hermitian");
  }
  if (max_abs(op - op.transpose()) > tol * scale) {
    throw Error(ErrorKind::kInvalidArgument, "Omega_plus is not symmetric");
  }
  Omega_ = DoubledUpMatrix(0.5 * (om + om.adjoint()),
                           0.5 * (op + op.transpose()));
  const double sscale = std::max(1.0, max_abs(S_.dense()));
  if (!is_symplectic(S_, tol * sscale * sscale)) {
    throw Error(ErrorKind::kNotSymplectic, "scattering matrix S");
  }
}

QlsSystem QlsSystem::FromBlocks(const CMatrix& c_minus, const CMatrix& c_plus,
                                const CMatrix& omega_minus,
                                const CMatrix& omega_plus) {
  return QlsSystem(DoubledUpMatrix::Identity(c_minus.rows()),
                   DoubledUpMatrix(c_minus, c_plus),
                   DoubledUpMatrix(omega_minus, omega_plus));
}

QlsSystem QlsSystem::Trivial(Index m) {
  return QlsSystem(DoubledUpMatrix::Identity(m), DoubledUpMatrix::Zero(m, 0),
                   DoubledUpMatrix::Zero(0, 0));
}

bool QlsSystem::has_trivial_scattering(double tol) const {
  return max_abs(S_.dense() - CMatrix::Identity(S_.rows(), S_.cols())) <= tol;
}

GaussianInput::GaussianInput(CMatrix N, CMatrix M, double tol)
    : N_(std::move(N)), M_(std::move(M)) {
  if (N_.rows() != N_.cols() || M_.rows() != N_.rows() ||
      M_.cols() != N_.cols()) {
    throw Error(ErrorKind::kShapeMismatch, "N and M must be m x m");
  }
  const double scale = std::max(1.0, std::max(max_abs(N_), max_abs(M_)));
  if (max_abs(N_ - N_.adjoint()) > tol * scale) {
    throw Error(ErrorKind::kNotACovariance, "N is not Hermitian");
  }
  if (max_abs(M_ - M_.transpose()) > tol * scale) {
    throw Error(ErrorKind::kNotACovariance, "M is not symmetric");
  }
  N_ = 0.5 * (N_ + N_.adjoint());
  M_ = 0.5 * (M_ + M_.transpose());
  if (N_.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(V());
    if (es.eigenvalues()(0) < -tol * scale) {
      throw Error(ErrorKind::kNotACovariance, "V(N, M) is not positive");
    }
  }
}

GaussianInput GaussianInput::Vacuum(Index m) {
  return GaussianInput(CMatrix::Zero(m, m), CMatrix::Zero(m, m));
}

GaussianInput GaussianInput::Squeezed(double N) {
  CMatrix n(1, 1), m(1, 1);
  n(0, 0) = N;
  m(0, 0) = std::sqrt(N * (N + 1.0));
  return GaussianInput(n, m);
}

bool GaussianInput::is_vacuum(double tol) const {
  return max_abs(N_) <= tol && max_abs(M_) <= tol;
}

bool GaussianInput::is_pure(double tol) const {
  const auto w = williamson(V());
  for (double t : w.thermal_numbers) {
    if (t >= tol) return false;
  }
  return true;
}

CMatrix StateSpace::transfer(Complex s) const {
  const Index n2 = A.rows();
  const CMatrix res = s * CMatrix::Identity(n2, n2) - A.dense();
  return D.dense() + C.dense() * res.partialPivLu().solve(B.dense());
}

DoubledUpMatrix drift(const QlsSystem& sys) {
  const DoubledUpMatrix cfc = sys.C().flat() * sys.C();
  const Complex i(0.0, 1.0);
  return DoubledUpMatrix(-0.5 * cfc.upper_left() - i * sys.omega_minus(),
                         -0.5 * cfc.upper_right() - i * sys.omega_plus());
}

std::pair<CMatrix, CMatrix> drift_components(const QlsSystem& sys) {
  const CMatrix& cm = sys.c_minus();
  const CMatrix& cp = sys.c_plus();
  const Complex i(0.0, 1.0);
  CMatrix am = -0.5 * (cm.adjoint() * cm - cp.transpose() * cp.conjugate()) -
               i * sys.omega_minus();
  CMatrix ap = -0.5 * (cm.adjoint() * cp - cp.transpose() * cm.conjugate()) -
               i * sys.omega_plus();
  return {am, ap};
}

StateSpace state_space(const QlsSystem& sys) {
  return {drift(sys), -(sys.C().flat() * sys.S()), sys.C(), sys.S()};
}

double physical_realizability_residual(const StateSpace& ss) {
  const CMatrix a = ss.A.dense();
  const CMatrix c = ss.C.dense();
  const CMatrix r1 = a + flat_dense(a) + flat_dense(c) * c;
  const CMatrix r2 = ss.B.dense() + flat_dense(c) * ss.D.dense();
  return std::max(max_abs(r1), max_abs(r2));
}

bool is_physically_realizable(const StateSpace& ss, double tol) {
  if (ss.A.half_rows() != ss.A.half_cols()) return false;
  const double scale =
      std::max({1.0, max_abs(ss.A.dense()), max_abs(ss.C.dense())});
  return physical_realizability_residual(ss) <= tol * scale;
}

CMatrix observability_matrix(const QlsSystem& sys) {
  const Index n2 = 2 * sys.n_modes();
  const Index m2 = 2 * sys.n_channels();
  const CMatrix jo = j_matrix(sys.n_modes()) * sys.Omega().dense();
  CMatrix out(m2 * n2, n2);
  CMatrix block = sys.C().dense();
  for (Index k = 0; k < n2; ++k) {
    out.middleRows(k * m2, m2) = block;
    block = block * jo;
  }
  return out;
}

CMatrix controllability_matrix(const QlsSystem& sys) {
  const Index n2 = 2 * sys.n_modes();
  const Index m2 = 2 * sys.n_channels();
  const CMatrix a = drift(sys).dense();
  CMatrix out(n2, m2 * n2);
  CMatrix block = -flat_dense(sys.C().dense());
  for (Index k = 0; k < n2; ++k) {
    out.middleCols(k * m2, m2) = block;
    block = a * block;
  }
  return out;
}

bool is_minimal(const QlsSystem& sys, double tol) {
  const Index n2 = 2 * sys.n_modes();
  if (n2 == 0) return true;
  return numeric_rank(observability_matrix(sys), tol) == n2;
}

CVector drift_eigenvalues(const QlsSystem& sys) {
  if (sys.n_modes() == 0) return CVector(0);
  Eigen::ComplexEigenSolver<CMatrix> es(drift(sys).dense(), false);
  return es.eigenvalues();
}

bool is_hurwitz(const QlsSystem& sys) {
  if (sys.n_modes() == 0) return true;
  return drift_eigenvalues(sys).real().maxCoeff() < 0.0;
}

bool one_mode_hurwitz_closed_form(Complex c_minus, Complex c_plus,
                                  double omega_minus, Complex omega_plus) {
  const double cm = std::abs(c_minus);
  const double cp = std::abs(c_plus);
  const double wm = std::abs(omega_minus);
  const double wp = std::abs(omega_plus);
  if (cm > cp && wm >= wp) return true;
  return wp > wm && std::sqrt(wp * wp - wm * wm) < 0.5 * (cm * cm - cp * cp);
}

DoubledUpMatrix hamiltonian_from_drift(const DoubledUpMatrix& a,
                                       const DoubledUpMatrix& c) {
  const DoubledUpMatrix x = a + (c.flat() * c) * 0.5;
  const Complex i(0.0, 1.0);
  return DoubledUpMatrix(i * x.upper_left(), i * x.upper_right());
}

QlsSystem series_product(const QlsSystem& g2, const QlsSystem& g1) {
  if (g1.n_channels() != g2.n_channels()) {
    throw Error(ErrorKind::kChannelMismatch, "series product channel counts");
  }
  if (!g1.has_trivial_scattering() || !g2.has_trivial_scattering()) {
    throw Error(ErrorKind::kInvalidArgument,
                "series product requires trivial scattering");
  }
  const Index m = g1.n_channels();
  const Index n1 = g1.n_modes();
  const Index n2 = g2.n_modes();
  const Index n = n1 + n2;
  const auto [a1m, a1p] = drift_components(g1);
  const auto [a2m, a2p] = drift_components(g2);
  const DoubledUpMatrix x = g2.C().flat() * g1.C();
  CMatrix am = CMatrix::Zero(n, n);
  CMatrix ap = CMatrix::Zero(n, n);
  am.topLeftCorner(n1, n1) = a1m;
  ap.topLeftCorner(n1, n1) = a1p;
  am.bottomRightCorner(n2, n2) = a2m;
  ap.bottomRightCorner(n2, n2) = a2p;
  am.bottomLeftCorner(n2, n1) = -x.upper_left();
  ap.bottomLeftCorner(n2, n1) = -x.upper_right();
  CMatrix cm(m, n), cp(m, n);
  cm << g1.c_minus(), g2.c_minus();
  cp << g1.c_plus(), g2.c_plus();
  const DoubledUpMatrix c(cm, cp);
  const DoubledUpMatrix omega =
      hamiltonian_from_drift(DoubledUpMatrix(am, ap), c);
  return QlsSystem(DoubledUpMatrix::Identity(m), c, omega);
}

QlsSystem apply_symplectic(const QlsSystem& sys, const DoubledUpMatrix& t) {
  const Index n = sys.n_modes();
  if (t.half_rows() != n || t.half_cols() != n) {
    throw Error(ErrorKind::kShapeMismatch, "T must be 2n x 2n");
  }
  const double scale = std::max(1.0, max_abs(t.dense()));
  if (!is_symplectic(t, kDefaultTol * scale * scale)) {
    throw Error(ErrorKind::kNotSymplectic, "change of coordinates");
  }
  const DoubledUpMatrix tf = t.flat();
  const CMatrix j = j_matrix(n);
  const CMatrix jo = t.dense() * j * sys.Omega().dense() * tf.dense();
  const DoubledUpMatrix omega = DoubledUpMatrix::Project(j * jo);
  return QlsSystem(sys.S(), sys.C() * tf, omega,
                   std::max(kDefaultTol, 1e-10 * scale * scale * scale));
}

bool is_passive(const QlsSystem& sys, double tol) {
  return max_abs(sys.c_plus()) <= tol && max_abs(sys.omega_plus()) <= tol;
}

double system_distance(const QlsSystem& a, const QlsSystem& b) {
  if (a.n_modes() != b.n_modes() || a.n_channels() != b.n_channels()) {
    return INFINITY;
  }
  return std::max({max_abs(a.S().dense() - b.S().dense()),
                   max_abs(a.C().dense() - b.C().dense()),
                   max_abs(a.Omega().dense() - b.Omega().dense())});
}

}  // namespace qls
