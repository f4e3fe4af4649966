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

#include "qlsid/core_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace qls {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kNotHurwitz: return "NotHurwitz";
    case ErrorKind::kNotDoubledUp: return "NotDoubledUp";
    case ErrorKind::kNonSemisimple: return "NonSemisimple";
    case ErrorKind::kNotACovariance: return "NotACovariance";
    case ErrorKind::kNotSymplectic: return "NotSymplectic";
    case ErrorKind::kChannelMismatch: return "ChannelMismatch";
    case ErrorKind::kPoleHit: return "PoleHit";
    case ErrorKind::kDegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::kNotPassive: return "NotPassive";
    case ErrorKind::kNotStable: return "NotStable";
    case ErrorKind::kRealPole: return "RealPole";
    case ErrorKind::kRepeatedPole: return "RepeatedPole";
    case ErrorKind::kResidueRankExceedsOne: return "ResidueRankExceedsOne";
    case ErrorKind::kSingularTransform: return "SingularTransform";
    case ErrorKind::kNonPhysical: return "NonPhysical";
    case ErrorKind::kNotMinimal: return "NotMinimal";
    case ErrorKind::kNotPure: return "NotPure";
    case ErrorKind::kVacuumInput: return "VacuumInput";
    case ErrorKind::kNotGloballyMinimal: return "NotGloballyMinimal";
    case ErrorKind::kInconsistent: return "Inconsistent";
    case ErrorKind::kSingularInput: return "SingularInput";
    case ErrorKind::kIllConditioned: return "IllConditioned";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kRangeError: return "RangeError";
  }
  return "Unknown";
}

DoubledUpMatrix::DoubledUpMatrix(CMatrix upper_left, CMatrix upper_right)
    : upper_left_(std::move(upper_left)), upper_right_(std::move(upper_right)) {
  if (upper_left_.rows() != upper_right_.rows() ||
      upper_left_.cols() != upper_right_.cols()) {
    throw Error(ErrorKind::kShapeMismatch,
                "doubled-up blocks must have equal shapes");
  }
}

DoubledUpMatrix DoubledUpMatrix::Identity(Index n) {
  return DoubledUpMatrix(CMatrix::Identity(n, n), CMatrix::Zero(n, n));
}

DoubledUpMatrix DoubledUpMatrix::Zero(Index n, Index m) {
  return DoubledUpMatrix(CMatrix::Zero(n, m), CMatrix::Zero(n, m));
}

double doubled_up_defect(const CMatrix& m) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0) return INFINITY;
  const Index n = m.rows() / 2;
  const Index k = m.cols() / 2;
  if (n == 0 || k == 0) return 0.0;
  const double d1 = max_abs(m.bottomLeftCorner(n, k) -
                            m.topRightCorner(n, k).conjugate());
  const double d2 = max_abs(m.bottomRightCorner(n, k) -
                            m.topLeftCorner(n, k).conjugate());
  return std::max(d1, d2);
}

DoubledUpMatrix DoubledUpMatrix::FromDense(const CMatrix& dense, double tol) {
  if (dense.rows() % 2 != 0 || dense.cols() % 2 != 0) {
    throw Error(ErrorKind::kNotDoubledUp, "odd dimension");
  }
  const double scale = std::max(1.0, max_abs(dense));
  if (doubled_up_defect(dense) > tol * scale) {
    throw Error(ErrorKind::kNotDoubledUp,
                "lower blocks do not mirror the upper blocks");
  }
  return Project(dense);
}

DoubledUpMatrix DoubledUpMatrix::Project(const CMatrix& dense) {
  const Index n = dense.rows() / 2;
  const Index k = dense.cols() / 2;
  CMatrix a = 0.5 * (dense.topLeftCorner(n, k) +
                     dense.bottomRightCorner(n, k).conjugate());
  CMatrix b = 0.5 * (dense.topRightCorner(n, k) +
                     dense.bottomLeftCorner(n, k).conjugate());
  return DoubledUpMatrix(std::move(a), std::move(b));
}

CMatrix DoubledUpMatrix::dense() const {
  const Index n = half_rows();
  const Index k = half_cols();
  CMatrix out(2 * n, 2 * k);
  out.topLeftCorner(n, k) = upper_left_;
  out.topRightCorner(n, k) = upper_right_;
  out.bottomLeftCorner(n, k) = upper_right_.conjugate();
  out.bottomRightCorner(n, k) = upper_left_.conjugate();
  return out;
}

DoubledUpMatrix DoubledUpMatrix::flat() const {
  return DoubledUpMatrix(upper_left_.adjoint(), -upper_right_.transpose());
}

DoubledUpMatrix DoubledUpMatrix::adjoint() const {
  return DoubledUpMatrix(upper_left_.adjoint(), upper_right_.transpose());
}

DoubledUpMatrix DoubledUpMatrix::inverse() const {
  if (half_rows() != half_cols()) {
    throw Error(ErrorKind::kShapeMismatch, "inverse of a non-square matrix");
  }
  Eigen::PartialPivLU<CMatrix> lu(dense());
  return Project(lu.inverse());
}

DoubledUpMatrix DoubledUpMatrix::operator*(const DoubledUpMatrix& o) const {
  if (half_cols() != o.half_rows()) {
    throw Error(ErrorKind::kShapeMismatch, "product dimensions disagree");
  }
  CMatrix a = upper_left_ * o.upper_left_ +
              upper_right_ * o.upper_right_.conjugate();
  CMatrix b = upper_left_ * o.upper_right_ +
              upper_right_ * o.upper_left_.conjugate();
  return DoubledUpMatrix(std::move(a), std::move(b));
}

DoubledUpMatrix DoubledUpMatrix::operator+(const DoubledUpMatrix& o) const {
  if (half_rows() != o.half_rows() || half_cols() != o.half_cols()) {
    throw Error(ErrorKind::kShapeMismatch, "sum dimensions disagree");
  }
  return DoubledUpMatrix(upper_left_ + o.upper_left_,
                         upper_right_ + o.upper_right_);
}

DoubledUpMatrix DoubledUpMatrix::operator-(const DoubledUpMatrix& o) const {
  return *this + (-o);
}

DoubledUpMatrix DoubledUpMatrix::operator-() const {
  return DoubledUpMatrix(-upper_left_, -upper_right_);
}

DoubledUpMatrix DoubledUpMatrix::operator*(double scalar) const {
  return DoubledUpMatrix(scalar * upper_left_, scalar * upper_right_);
}

DoubledUpMatrix delta(const CMatrix& a, const CMatrix& b) {
  return DoubledUpMatrix(a, b);
}

DoubledUpMatrix flat(const DoubledUpMatrix& z) { return z.flat(); }

CMatrix j_matrix(Index n) {
  CMatrix j = CMatrix::Identity(2 * n, 2 * n);
  j.bottomRightCorner(n, n) *= -1.0;
  return j;
}

CMatrix flat_dense(const CMatrix& z) {
  return j_matrix(z.cols() / 2) * z.adjoint() * j_matrix(z.rows() / 2);
}

DoubledUpMatrix sigma_matrix(Index n) {
  return DoubledUpMatrix(CMatrix::Zero(n, n), CMatrix::Identity(n, n));
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_flat_unitary(const CMatrix& s, double tol) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
  const CMatrix sf = flat_dense(s);
  const CMatrix eye = CMatrix::Identity(s.rows(), s.cols());
  return max_abs(sf * s - eye) <= tol && max_abs(s * sf - eye) <= tol;
}

bool is_flat_unitary(const DoubledUpMatrix& s, double tol) {
  return is_flat_unitary(s.dense(), tol);
}

bool is_symplectic(const CMatrix& s, double tol) {
  return doubled_up_defect(s) <= tol && is_flat_unitary(s, tol);
}

bool is_symplectic(const DoubledUpMatrix& s, double tol) {
  return is_symplectic(s.dense(), tol);
}

CMatrix solve_sylvester(const CMatrix& a, const CMatrix& b, const CMatrix& q) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || q.rows() != a.rows() ||
      q.cols() != b.rows()) {
    throw Error(ErrorKind::kShapeMismatch, "sylvester dimensions disagree");
  }
  const Index n = a.rows();
  const Index k = b.rows();
  if (n == 0 || k == 0) return CMatrix::Zero(n, k);
  Eigen::ComplexSchur<CMatrix> sa(a);
  Eigen::ComplexSchur<CMatrix> sb(b);
  const CMatrix& ta = sa.matrixT();
  const CMatrix& ua = sa.matrixU();
  const CMatrix& tb = sb.matrixT();
  const CMatrix& ub = sb.matrixU();
  const CMatrix qt = ua.adjoint() * q * ub;
  const double scale = std::max(max_abs(ta), max_abs(tb)) + 1e-300;
  CMatrix x = CMatrix::Zero(n, k);
  for (Index j = 0; j < k; ++j) {
    CVector rhs = -qt.col(j);
    for (Index l = 0; l < j; ++l) rhs -= tb(l, j) * x.col(l);
    CMatrix m = ta;
    for (Index i = 0; i < n; ++i) {
      m(i, i) += tb(j, j);
      if (std::abs(m(i, i)) <= 1e-14 * scale) {
        throw Error(ErrorKind::kSingularInput,
                    "sylvester operator is singular");
      }
    }
    x.col(j) = m.triangularView<Eigen::Upper>().solve(rhs);
  }
  return ua * x * ub.adjoint();
}

CMatrix solve_lyapunov(const CMatrix& a, const CMatrix& q) {
  if (a.rows() != a.cols() || q.rows() != a.rows() || q.cols() != a.cols()) {
    throw Error(ErrorKind::kShapeMismatch, "lyapunov dimensions disagree");
  }
  if (a.rows() == 0) return CMatrix::Zero(0, 0);
  Eigen::ComplexEigenSolver<CMatrix> es(a, false);
  if (es.eigenvalues().real().maxCoeff() >= 0.0) {
    throw Error(ErrorKind::kNotHurwitz,
                "drift has an eigenvalue with nonnegative real part");
  }
  const CMatrix p = solve_sylvester(a, a.adjoint(), q);
  return 0.5 * (p + p.adjoint());
}

Index numeric_rank(const CMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * sv(0)) ++r;
  }
  return r;
}

double condition_number(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 1.0;
  const double smin = sv(sv.size() - 1);
  return smin == 0.0 ? INFINITY : sv(0) / smin;
}

CMatrix covariance_matrix(const CMatrix& n, const CMatrix& m) {
  const Index k = n.rows();
  CMatrix v(2 * k, 2 * k);
  v.topLeftCorner(k, k) = n.transpose() + CMatrix::Identity(k, k);
  v.topRightCorner(k, k) = m;
  v.bottomLeftCorner(k, k) = m.adjoint();
  v.bottomRightCorner(k, k) = n;
  return v;
}

CMatrix thermal_covariance(const std::vector<double>& thermal_numbers) {
  const Index k = static_cast<Index>(thermal_numbers.size());
  CMatrix v = CMatrix::Zero(2 * k, 2 * k);
  for (Index i = 0; i < k; ++i) {
    v(i, i) = thermal_numbers[i] + 1.0;
    v(k + i, k + i) = thermal_numbers[i];
  }
  return v;
}

namespace {

// Orthonormal basis of the k-dimensional near-null space of m.
CMatrix NearNullSpace(const CMatrix& m, Index k) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(k);
}

double NearNullGap(const CMatrix& m, Index k) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - k);
}

// Groups indices whose values lie within tol of each other (single linkage).
std::vector<std::vector<Index>> Cluster(const CVector& values, double tol) {
  const Index n = values.size();
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(values(i) - values(j)) <= tol) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<Index>> groups;
  std::vector<Index> slot(n, -1);
  for (Index i = 0; i < n; ++i) {
    const Index r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Index>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

Complex Mean(const CVector& values, const std::vector<Index>& idx) {
  Complex s = 0.0;
  for (Index i : idx) s += values(i);
  return s / static_cast<double>(idx.size());
}

CVector Mirror(const CVector& w) {
  const Index n = w.size() / 2;
  CVector out(w.size());
  out.head(n) = w.tail(n).conjugate();
  out.tail(n) = w.head(n).conjugate();
  return out;
}

// Rotates the J-orthonormal columns of b (first-half mode vectors) by a
// unitary so that their upper halves become lower-trapezoidal with a
// positive diagonal. Identity-like inputs map to identity columns.
CMatrix AlignModes(const CMatrix& b) {
  const Index n = b.rows() / 2;
  const Index r = b.cols();
  const CMatrix kt = b.topRows(n).adjoint();
  Eigen::HouseholderQR<CMatrix> qr(kt);
  CMatrix q = qr.householderQ() * CMatrix::Identity(r, r);
  const CMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < std::min(r, n); ++i) {
    const double mag = std::abs(rr(i, i));
    if (mag > 1e-12) q.col(i) *= rr(i, i) / mag;
  }
  return b * q;
}

// J-orthonormal vectors w (w†Jw = 1) spanning, together with their mirrors,
// the space spanned by the orthonormal columns of e.
CMatrix JPositiveBasis(const CMatrix& e) {
  const Index dim = e.rows();
  const Index n = dim / 2;
  const CMatrix j = j_matrix(n);
  const Index pairs = e.cols() / 2;
  CMatrix basis = e;
  CMatrix out(dim, pairs);
  for (Index p = 0; p < pairs; ++p) {
    const CMatrix g = basis.adjoint() * j * basis;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (g + g.adjoint()));
    const Index top = g.rows() - 1;
    const double gmax = es.eigenvalues()(top);
    if (gmax <= 0.0) {
      throw Error(ErrorKind::kNonSemisimple,
                  "eigenspace has no J-positive direction");
    }
    const CVector w = basis * es.eigenvectors().col(top) / std::sqrt(gmax);
    const CVector wm = Mirror(w);
    out.col(p) = w;
    if (p + 1 == pairs) break;
    CMatrix proj = basis;
    for (Index c = 0; c < basis.cols(); ++c) {
      const CVector x = basis.col(c);
      proj.col(c) = x - w * (w.adjoint() * j * x)(0) +
                    wm * (wm.adjoint() * j * x)(0);
    }
    Eigen::JacobiSVD<CMatrix> svd(proj, Eigen::ComputeThinU);
    basis = svd.matrixU().leftCols(basis.cols() - 2);
  }
  return out;
}

}  // namespace

DoubledUpMatrix SymplecticEigenData::canonical() const {
  const Index n = this->n();
  CMatrix a = CMatrix::Zero(n, n);
  CMatrix b = CMatrix::Zero(n, n);
  Index i = 0;
  for (double l : lambda_plus) a(i, i) = l, ++i;
  for (double l : lambda_minus) a(i, i) = l, ++i;
  for (const auto& [mu, nu] : complex_pairs) {
    a(i, i) = mu;
    a(i + 1, i + 1) = mu;
    b(i, i + 1) = Complex(0.0, nu);
    b(i + 1, i) = Complex(0.0, -nu);
    i += 2;
  }
  return DoubledUpMatrix(a, b);
}

SymplecticEigenData symplectic_canonical_form(const DoubledUpMatrix& script_n,
                                              double tol) {
  const Index n = script_n.half_rows();
  if (script_n.half_cols() != n) {
    throw Error(ErrorKind::kShapeMismatch, "canonical form needs square input");
  }
  SymplecticEigenData out;
  if (n == 0) {
    out.W = DoubledUpMatrix::Identity(0);
    return out;
  }
  const CMatrix m = script_n.dense();
  const double scale = std::max(1.0, max_abs(m));
  if (max_abs(m - flat_dense(m)) > tol * scale * 1e2) {
    throw Error(ErrorKind::kInvalidArgument,
                "matrix is not flat-self-adjoint, so not of the form N♭N");
  }
  Eigen::ComplexEigenSolver<CMatrix> es(m);
  CMatrix vecs = es.eigenvectors();
  for (Index c = 0; c < vecs.cols(); ++c) vecs.col(c).normalize();
  if (condition_number(vecs) > 1e8) {
    throw Error(ErrorKind::kNonSemisimple,
                "eigenvector matrix is numerically singular");
  }
  const CVector ev = es.eigenvalues();
  const double radius = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double ctol = 1e-7 * radius;
  auto groups = Cluster(ev, ctol);

  const CMatrix j = j_matrix(n);
  struct Block {
    int kind;  // 0 positive real, 1 negative real, 2 complex pair
    double key;
    CMatrix cols;  // first-half mode columns
    std::pair<double, double> mu_nu;
  };
  std::vector<Block> blocks;
  for (const auto& g : groups) {
    const Complex lam = Mean(ev, g);
    const Index k = static_cast<Index>(g.size());
    if (std::abs(lam.imag()) <= ctol) {
      if (k % 2 != 0) {
        throw Error(ErrorKind::kNonSemisimple,
                    "real eigenvalue with odd multiplicity");
      }
      const double l = lam.real();
      if (std::abs(l) <= ctol) {
        throw Error(ErrorKind::kSingularTransform, "zero eigenvalue");
      }
      const CMatrix shifted = m - l * CMatrix::Identity(2 * n, 2 * n);
      if (NearNullGap(shifted, k) > 1e-5 * radius) {
        throw Error(ErrorKind::kNonSemisimple, "defective real eigenvalue");
      }
      CMatrix w = AlignModes(JPositiveBasis(NearNullSpace(shifted, k)));
      // Rayleigh values per mode.
      std::vector<double> vals;
      for (Index c = 0; c < w.cols(); ++c) {
        vals.push_back((w.col(c).adjoint() * j * m * w.col(c))(0).real());
      }
      for (Index c = 0; c < w.cols(); ++c) {
        Block b;
        b.kind = l > 0 ? 0 : 1;
        b.key = vals[c];
        b.cols = w.col(c);
        blocks.push_back(std::move(b));
      }
    } else if (lam.imag() > 0) {
      if (k % 2 != 0) {
        throw Error(ErrorKind::kNonSemisimple,
                    "complex eigenvalue with odd multiplicity");
      }
      const CMatrix shifted = m - lam * CMatrix::Identity(2 * n, 2 * n);
      if (NearNullGap(shifted, k) > 1e-5 * radius) {
        throw Error(ErrorKind::kNonSemisimple, "defective complex eigenvalue");
      }
      CMatrix e = NearNullSpace(shifted, k);
      // Symplectic Gram-Schmidt for ω(u, v) = u^T J Σ v.
      const CMatrix js = j * sigma_matrix(n).dense();
      std::vector<CVector> pool;
      for (Index c = 0; c < k; ++c) pool.push_back(e.col(c));
      while (!pool.empty()) {
        // Pick the pair with the largest |ω| for stability.
        Index bi = 0, bj = 1;
        double best = -1.0;
        for (size_t a = 0; a < pool.size(); ++a) {
          for (size_t c = a + 1; c < pool.size(); ++c) {
            const double v =
                std::abs((pool[a].transpose() * js * pool[c])(0));
            if (v > best) best = v, bi = a, bj = c;
          }
        }
        if (pool.size() < 2 || best <= 1e-10) {
          throw Error(ErrorKind::kNonSemisimple,
                      "degenerate symplectic form on eigenspace");
        }
        CVector x1 = pool[bi];
        CVector x2 = pool[bj];
        const Complex w12 = (x1.transpose() * js * x2)(0);
        x2 *= -1.0 / w12;
        std::vector<CVector> rest;
        for (size_t a = 0; a < pool.size(); ++a) {
          if (static_cast<Index>(a) == bi || static_cast<Index>(a) == bj) {
            continue;
          }
          CVector u = pool[a];
          // Remove components so that ω(x1,u) = ω(x2,u) = 0.
          const Complex a1 = (x1.transpose() * js * u)(0);
          const Complex a2 = (x2.transpose() * js * u)(0);
          u = u + a2 * x1 - a1 * x2;
          rest.push_back(u.normalized());
        }
        pool = std::move(rest);
        const CVector y1 = -Mirror(x2);
        const CVector y2 = Mirror(x1);
        CMatrix cols(2 * n, 2);
        cols.col(0) = (x1 + y1) / std::sqrt(2.0);
        cols.col(1) = (x2 + y2) / std::sqrt(2.0);
        Block b;
        b.kind = 2;
        b.key = lam.real();
        b.cols = cols;
        b.mu_nu = {lam.real(), lam.imag()};
        blocks.push_back(std::move(b));
      }
    }
  }
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& a, const Block& b) {
                     if (a.kind != b.kind) return a.kind < b.kind;
                     if (a.key != b.key) return a.key > b.key;
                     if (a.kind == 2) return a.mu_nu.second > b.mu_nu.second;
                     return false;
                   });
  CMatrix first(2 * n, n);
  Index c = 0;
  for (const auto& b : blocks) {
    first.middleCols(c, b.cols.cols()) = b.cols;
    c += b.cols.cols();
    if (b.kind == 0) out.lambda_plus.push_back(b.key);
    if (b.kind == 1) out.lambda_minus.push_back(b.key);
    if (b.kind == 2) out.complex_pairs.push_back(b.mu_nu);
  }
  if (c != n) {
    throw Error(ErrorKind::kNonSemisimple,
                "eigenvalues do not pair into a canonical form");
  }
  CMatrix w(2 * n, 2 * n);
  w.leftCols(n) = first;
  for (Index i = 0; i < n; ++i) w.col(n + i) = Mirror(first.col(i));
  out.W = DoubledUpMatrix::Project(w);
  if (!is_symplectic(out.W, 1e-6)) {
    throw Error(ErrorKind::kNonSemisimple,
                "eigenbasis could not be made symplectic");
  }
  return out;
}

SqueezeFactor symplectic_square_root(const SymplecticEigenData& nhat) {
  const Index n = nhat.n();
  CMatrix a = CMatrix::Zero(n, n);
  CMatrix b = CMatrix::Zero(n, n);
  SqueezeFactor out;
  Index i = 0;
  for (double l : nhat.lambda_plus) {
    if (l <= 0) throw Error(ErrorKind::kInvalidArgument, "lambda_plus <= 0");
    a(i, i) = std::sqrt(l);
    ++i;
  }
  for (double l : nhat.lambda_minus) {
    if (l >= 0) throw Error(ErrorKind::kInvalidArgument, "lambda_minus >= 0");
    b(i, i) = std::sqrt(-l);
    ++i;
  }
  for (const auto& [mu, nu] : nhat.complex_pairs) {
    if (nu <= 0) throw Error(ErrorKind::kInvalidArgument, "nu <= 0");
    double alpha, beta, x;
    if (mu > 0) {
      x = 0.5 * std::asinh(nu / mu);
      alpha = std::sqrt(mu) * std::cosh(x);
      beta = std::sqrt(mu) * std::sinh(x);
    } else if (mu < 0) {
      x = 0.5 * std::asinh(nu / -mu);
      alpha = std::sqrt(-mu) * std::sinh(x);
      beta = std::sqrt(-mu) * std::cosh(x);
    } else {
      x = 0.0;
      alpha = beta = std::sqrt(nu / 2.0);
    }
    out.alphas.push_back(alpha);
    out.betas.push_back(beta);
    out.xs.push_back(x);
    a(i, i) = alpha;
    a(i + 1, i + 1) = alpha;
    // -β σ with σ = [[0, -i], [i, 0]].
    b(i, i + 1) = Complex(0.0, beta);
    b(i + 1, i) = Complex(0.0, -beta);
    i += 2;
  }
  out.Nbar = DoubledUpMatrix(a, b);
  return out;
}

WilliamsonResult williamson(const CMatrix& v, double tol) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0) {
    throw Error(ErrorKind::kNotACovariance, "covariance must be 2m x 2m");
  }
  const Index m = v.rows() / 2;
  WilliamsonResult out;
  if (m == 0) {
    out.S_in = DoubledUpMatrix::Identity(0);
    return out;
  }
  const double scale = std::max(1.0, max_abs(v));
  if (max_abs(v - v.adjoint()) > tol * scale) {
    throw Error(ErrorKind::kNotACovariance, "covariance is not Hermitian");
  }
  const CMatrix j = j_matrix(m);
  const CMatrix vs = 0.5 * (v + v.adjoint()) - 0.5 * j;
  if (doubled_up_defect(vs) > tol * scale) {
    throw Error(ErrorKind::kNotACovariance,
                "N is not Hermitian or M is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> psd(0.5 * (v + v.adjoint()));
  if (psd.eigenvalues()(0) < -tol * scale) {
    throw Error(ErrorKind::kNotACovariance, "covariance is not positive");
  }
  const CMatrix k = DoubledUpMatrix::Project(vs).dense() * j;
  Eigen::ComplexEigenSolver<CMatrix> es(k, false);
  const CVector ev = es.eigenvalues();
  const double radius = std::max(1.0, ev.cwiseAbs().maxCoeff());
  auto groups = Cluster(ev, 1e-7 * radius);
  struct Mode {
    double d;
    CVector w;
  };
  std::vector<Mode> modes;
  for (const auto& g : groups) {
    const Complex d = Mean(ev, g);
    if (d.real() <= 0) continue;
    const Index kk = static_cast<Index>(g.size());
    const CMatrix shifted = k - d.real() * CMatrix::Identity(2 * m, 2 * m);
    const CMatrix e = NearNullSpace(shifted, kk);
    const CMatrix gram = e.adjoint() * j * e;
    Eigen::SelfAdjointEigenSolver<CMatrix> gs(0.5 * (gram + gram.adjoint()));
    if (gs.eigenvalues()(0) <= 0) {
      throw Error(ErrorKind::kNotACovariance,
                  "symplectic eigenspace is not J-positive");
    }
    const CMatrix w = AlignModes(e * gs.operatorInverseSqrt());
    for (Index c = 0; c < w.cols(); ++c) {
      const double dd = (w.col(c).adjoint() * j * k * w.col(c))(0).real();
      modes.push_back({dd, w.col(c)});
    }
  }
  if (static_cast<Index>(modes.size()) != m) {
    throw Error(ErrorKind::kNotACovariance,
                "symplectic spectrum does not split into mirror pairs");
  }
  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& a, const Mode& b) { return a.d < b.d; });
  CMatrix w(2 * m, 2 * m);
  for (Index i = 0; i < m; ++i) {
    w.col(i) = modes[i].w;
    w.col(m + i) = Mirror(modes[i].w);
    out.thermal_numbers.push_back(modes[i].d - 0.5);
  }
  out.S_in = DoubledUpMatrix::Project(w).flat();
  return out;
}

}  // namespace qls
