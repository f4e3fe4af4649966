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

#include "qlsid/freq_domain.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qls {

CMatrix eval_transfer(const QlsSystem& sys, Complex s) {
  const Index m = sys.n_channels();
  const Index n2 = 2 * sys.n_modes();
  if (n2 == 0) return sys.S().dense();
  const CMatrix a = drift(sys).dense();
  const CMatrix res = s * CMatrix::Identity(n2, n2) - a;
  Eigen::JacobiSVD<CMatrix> svd(res);
  const double smin = svd.singularValues()(n2 - 1);
  if (smin <= 1e-12 * std::max(1.0, std::abs(s) + max_abs(a))) {
    throw Error(ErrorKind::kPoleHit, "s is an eigenvalue of the drift");
  }
  const CMatrix c = sys.C().dense();
  const CMatrix x = res.partialPivLu().solve(flat_dense(c));
  return (CMatrix::Identity(2 * m, 2 * m) - c * x) * sys.S().dense();
}

namespace {

Roots ToRoots(const CVector& v) { return Roots(v.data(), v.data() + v.size()); }

Roots Eigenvalues(const CMatrix& m) {
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  return ToRoots(es.eigenvalues());
}

// Zeros and gain of -c (s - a)⁻¹ b.
RationalFn StrictlyProper(const CMatrix& a, const CVector& b,
                          const Eigen::RowVectorXcd& c, const Roots& poles) {
  const Index n = a.rows();
  const double an = std::max(1.0, a.operatorNorm());
  const double base = std::max(1e-300, b.norm() * c.norm());
  CVector akb = b;
  Index r = -1;
  Complex h = 0.0;
  for (Index k = 0; k < n; ++k) {
    const Complex hk = (c * akb)(0);
    if (std::abs(hk) > 1e-10 * base * std::pow(an, static_cast<double>(k))) {
      r = k;
      h = hk;
      break;
    }
    akb = a * akb;
  }
  if (r < 0) return RationalFn::ZeroFn();
  RationalFn out;
  out.gain = -h;
  out.poles = poles;
  Eigen::MatrixXcd obs(r + 1, n);
  Eigen::RowVectorXcd row = c;
  for (Index k = 0; k <= r; ++k) {
    obs.row(k) = row;
    row = row * a;
  }
  // row now holds c A^{r+1}.
  const CMatrix at = a - b * (row / h);
  Eigen::JacobiSVD<CMatrix> svd(obs, Eigen::ComputeFullV);
  const CMatrix k = svd.matrixV().rightCols(n - r - 1);
  out.zeros = Eigenvalues(k.adjoint() * at * k);
  return out.reduced();
}

}  // namespace

TransferFunctionSISO tf_rational(const QlsSystem& sys) {
  if (sys.n_channels() != 1) {
    throw Error(ErrorKind::kInvalidArgument, "tf_rational needs one channel");
  }
  const DoubledUpMatrix s = sys.S();
  TransferFunctionSISO scatter{RationalFn::Constant(s.upper_left()(0, 0)),
                               RationalFn::Constant(s.upper_right()(0, 0))};
  if (sys.n_modes() == 0) return scatter;
  if (!is_hurwitz(sys)) {
    throw Error(ErrorKind::kNotHurwitz, "transfer function of unstable system");
  }
  TransferFunctionSISO tf;
  if (is_passive(sys, 1e-14)) {
    const auto [am, ap] = drift_components(sys);
    tf.xi_minus.poles = Eigenvalues(am);
    for (const Complex& p : tf.xi_minus.poles) {
      tf.xi_minus.zeros.push_back(-std::conj(p));
    }
    tf.xi_minus = tf.xi_minus.reduced();
    tf.xi_plus = RationalFn::ZeroFn();
  } else {
    const CMatrix a = drift(sys).dense();
    Eigen::ComplexEigenSolver<CMatrix> es(a);
    const Roots poles = ToRoots(es.eigenvalues());
    const double scale = std::max(1.0, max_abs(a));
    for (size_t i = 0; i < poles.size(); ++i) {
      for (size_t j = i + 1; j < poles.size(); ++j) {
        if (std::abs(poles[i] - poles[j]) <= 1e-8 * scale) {
          CMatrix v = es.eigenvectors();
          for (Index c = 0; c < v.cols(); ++c) v.col(c).normalize();
          if (condition_number(v) > 1e8) {
            throw Error(ErrorKind::kDegenerateSpectrum,
                        "colliding drift eigenvalues");
          }
        }
      }
    }
    const CMatrix c = sys.C().dense();
    const CMatrix cf = flat_dense(c);
    const CVector b1 = cf.col(0);
    const CVector b2 = cf.col(1);
    const Eigen::RowVectorXcd c1 = c.row(0);
    tf.xi_minus.poles = poles;
    tf.xi_minus.zeros = Eigenvalues(a + b1 * c1);
    tf.xi_minus = tf.xi_minus.reduced();
    tf.xi_plus = StrictlyProper(a, b2, c1, poles);
  }
  if (sys.has_trivial_scattering(1e-14)) return tf;
  return tf * scatter;
}

Complex CascadeFactor::omega_plus() const {
  const double mag2 = std::real(y * y) + theta * theta;
  return std::polar(std::sqrt(std::max(0.0, mag2)), phi);
}

void CascadeFactor::validate() const {
  if (!(x > 0.0)) throw Error(ErrorKind::kInvalidArgument, "factor x <= 0");
  if (y.real() != 0.0 && y.imag() != 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "factor y must be real or imaginary");
  }
  if (std::real(y * y) + theta * theta < -1e-12) {
    throw Error(ErrorKind::kInvalidArgument, "factor y^2 + theta^2 < 0");
  }
}

CascadeFactor factor_from_system(const QlsSystem& sys) {
  if (sys.n_modes() != 1 || sys.n_channels() != 1 ||
      max_abs(sys.c_plus()) > 1e-12) {
    throw Error(ErrorKind::kInvalidArgument,
                "cascade factor needs a one-mode system with C_plus = 0");
  }
  const Complex c = sys.c_minus()(0, 0);
  CascadeFactor f;
  f.x = 0.5 * std::norm(c);
  f.theta = sys.omega_minus()(0, 0).real();
  const Complex wp = sys.omega_plus()(0, 0);
  f.phi = std::arg(wp) + 2.0 * std::arg(c);
  const double d = std::norm(wp) - f.theta * f.theta;
  f.y = d >= 0 ? Complex(std::sqrt(d), 0.0) : Complex(0.0, std::sqrt(-d));
  return f;
}

TransferFunctionSISO factor_tf(const CascadeFactor& f) {
  f.validate();
  const Complex i(0.0, 1.0);
  const Complex top = f.x * f.x + f.y * f.y - 2.0 * i * f.x * f.theta;
  const Complex r = std::sqrt(top);
  TransferFunctionSISO tf;
  tf.xi_minus.zeros = {r, -r};
  tf.xi_minus.poles = {-f.x - f.y, -f.x + f.y};
  tf.xi_minus = tf.xi_minus.reduced();
  const Complex wp = f.omega_plus();
  if (std::abs(wp) == 0.0) {
    tf.xi_plus = RationalFn::ZeroFn();
  } else {
    tf.xi_plus.gain = 2.0 * i * f.x * wp;
    tf.xi_plus.poles = {-f.x - f.y, -f.x + f.y};
  }
  return tf;
}

TransferFunctionSISO cascade_factors(const std::vector<CascadeFactor>& factors) {
  TransferFunctionSISO tf{RationalFn::Constant(1.0), RationalFn::ZeroFn()};
  for (const auto& f : factors) tf = factor_tf(f) * tf;
  return tf;
}

QlsSystem factor_to_system(const CascadeFactor& f) {
  f.validate();
  CMatrix cm(1, 1), cp = CMatrix::Zero(1, 1), om(1, 1), op(1, 1);
  cm(0, 0) = std::sqrt(2.0 * f.x);
  om(0, 0) = f.theta;
  op(0, 0) = f.omega_plus();
  return QlsSystem::FromBlocks(cm, cp, om, op);
}

QlsSystem cascade_system(const std::vector<CascadeFactor>& factors) {
  std::vector<QlsSystem> parts;
  for (const auto& f : factors) parts.push_back(factor_to_system(f));
  return series_chain(parts);
}

QlsSystem series_chain(const std::vector<QlsSystem>& systems) {
  if (systems.empty()) return QlsSystem::Trivial(1);
  QlsSystem out = systems.front();
  for (size_t k = 1; k < systems.size(); ++k) {
    out = series_product(systems[k], out);
  }
  return out;
}

std::vector<QlsSystem> passive_cascade(const TransferFunctionSISO& tf) {
  if (!tf.xi_plus.is_zero()) {
    throw Error(ErrorKind::kNotPassive, "Xi_plus is not identically zero");
  }
  std::vector<QlsSystem> out;
  for (const Complex& z : tf.xi_minus.poles) {
    if (z.real() >= 0.0) {
      throw Error(ErrorKind::kNotStable, "pole outside the open left half-plane");
    }
    CMatrix cm(1, 1), zero = CMatrix::Zero(1, 1), om(1, 1);
    cm(0, 0) = std::sqrt(-2.0 * z.real());
    om(0, 0) = -z.imag();
    out.push_back(QlsSystem::FromBlocks(cm, zero, om, zero));
  }
  return out;
}

namespace {

Complex Residue(const RationalFn& f, Complex lam, double tol) {
  if (f.is_zero()) return 0.0;
  Complex v = f.gain;
  bool hit = false;
  for (const Complex& p : f.poles) {
    if (!hit && std::abs(p - lam) <= tol) {
      hit = true;
      continue;
    }
    v /= (lam - p);
  }
  if (!hit) return 0.0;
  for (const Complex& z : f.zeros) v *= (lam - z);
  return v;
}

}  // namespace

StateSpace gilbert_realization(const TransferFunctionSISO& tf_in) {
  const TransferFunctionSISO tf = tf_in.reduced();
  // Poles of the doubled-up Ξ: those of Ξ₋, Ξ₊ and their mirrors.
  Roots poles = tf.xi_minus.poles;
  auto add = [&poles](const Complex& p) {
    if (multiplicity(poles, p, 1e-7 * std::max(1.0, std::abs(p))) == 0) {
      poles.push_back(p);
    }
  };
  for (const Complex& p : tf.xi_plus.poles) add(p);
  const Roots own = poles;
  for (const Complex& p : own) add(std::conj(p));
  double scale = 1.0;
  for (const Complex& p : poles) scale = std::max(scale, std::abs(p));
  for (size_t i = 0; i < poles.size(); ++i) {
    if (std::abs(poles[i].imag()) <= 1e-8 * scale) {
      throw Error(ErrorKind::kRealPole, "pole with zero imaginary part");
    }
    for (size_t j = i + 1; j < poles.size(); ++j) {
      if (std::abs(poles[i] - poles[j]) <= 1e-7 * scale) {
        throw Error(ErrorKind::kRepeatedPole, "poles are not distinct");
      }
    }
  }
  Roots lower;
  for (const Complex& p : poles) {
    if (p.imag() < 0) lower.push_back(p);
  }
  if (2 * lower.size() != poles.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "pole set is not closed under conjugation");
  }
  std::sort(lower.begin(), lower.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  const Index n = static_cast<Index>(lower.size());
  const double ptol = 1e-7 * scale;
  CMatrix a = CMatrix::Zero(n, n);
  CMatrix cu(1, n), cv(1, n), bu(n, 1), bv(n, 1);
  for (Index i = 0; i < n; ++i) {
    const Complex lam = lower[i];
    if (multiplicity(poles, std::conj(lam), 1e-6 * scale) != 1) {
      throw Error(ErrorKind::kInvalidArgument, "missing mirror pole");
    }
    a(i, i) = lam;
    CMatrix r(2, 2);
    r(0, 0) = Residue(tf.xi_minus, lam, ptol);
    r(0, 1) = Residue(tf.xi_plus, lam, ptol);
    r(1, 0) = Residue(tf.xi_plus.vee(), lam, ptol);
    r(1, 1) = Residue(tf.xi_minus.vee(), lam, ptol);
    Eigen::JacobiSVD<CMatrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0) {
      throw Error(ErrorKind::kInvalidArgument, "zero residue at a pole");
    }
    if (sv(1) > 1e-6 * sv(0)) {
      throw Error(ErrorKind::kResidueRankExceedsOne, "residue has rank two");
    }
    const CVector ci = svd.matrixU().col(0) * std::sqrt(sv(0));
    const Eigen::RowVectorXcd bi =
        std::sqrt(sv(0)) * svd.matrixV().col(0).adjoint();
    // C₀ = Δ(cu, cv): row 0 holds (C_i(0), C_i(1)#).
    cu(0, i) = ci(0);
    cv(0, i) = std::conj(ci(1));
    // B₀ = Δ(bu, bv): row i holds B_i itself.
    bu(i, 0) = bi(0);
    bv(i, 0) = bi(1);
  }
  StateSpace ss;
  ss.A = DoubledUpMatrix(a, CMatrix::Zero(n, n));
  ss.B = DoubledUpMatrix(bu, bv);
  ss.C = DoubledUpMatrix(cu, cv);
  ss.D = DoubledUpMatrix::Identity(1);
  return ss;
}

double transfer_grid_gap(const TransferFunctionSISO& a,
                         const TransferFunctionSISO& b,
                         const std::vector<double>& omegas) {
  double worst = 0.0;
  for (double w : omegas) {
    const Complex s(0.0, -w);
    worst = std::max(worst, max_abs(a(s) - b(s)));
  }
  return worst;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out.push_back(lo * std::pow(hi / lo, t));
  }
  return out;
}

}  // namespace qls
