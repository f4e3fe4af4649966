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

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qlsid/identification.hpp"

namespace qls {

namespace {

// Least squares with column equilibration.
CVector SolveLs(const CMatrix& a, const CVector& b) {
  Eigen::VectorXd scale(a.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    const double nrm = a.col(j).norm();
    scale(j) = nrm > 0 ? 1.0 / nrm : 1.0;
  }
  const CMatrix as = a * scale.asDiagonal();
  Eigen::ColPivHouseholderQR<CMatrix> qr(as);
  if (qr.rank() < a.cols()) {
    throw Error(ErrorKind::kIllConditioned, "rank-deficient fitting system");
  }
  CVector x = qr.solve(b);
  x = scale.asDiagonal() * x;
  if (!x.allFinite()) {
    throw Error(ErrorKind::kIllConditioned, "non-finite fitting solution");
  }
  return x;
}

struct Residues {
  CVector r;
  Complex d;
};

Residues FitResidues(const CVector& s, const CVector& f, const CVector& a) {
  const Index k = s.size();
  const Index n = a.size();
  CMatrix m(k, n + 1);
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = 1.0 / (s(i) - a(j));
    m(i, n) = 1.0;
  }
  const CVector x = SolveLs(m, f);
  return {x.head(n), x(n)};
}

double RmsOnSamples(const RationalFn& fn, const CVector& s, const CVector& f) {
  double sq = 0.0;
  for (Index i = 0; i < s.size(); ++i) sq += std::norm(fn(s(i)) - f(i));
  return std::sqrt(sq / static_cast<double>(s.size()));
}

// Pole-residue form d + Σ r_j / (s - a_j) converted to zero-pole-gain.
RationalFn ToZpk(const CVector& a, const Residues& res, double fmax) {
  const Index m = a.size();
  RationalFn fn;
  fn.poles.assign(a.data(), a.data() + m);
  if (std::abs(res.d) > 1e-10 * std::max(fmax, 1e-300)) {
    fn.gain = res.d;
    if (m > 0) {
      CMatrix h = a.asDiagonal();
      h -= CVector::Ones(m) * (res.r / res.d).transpose();
      Eigen::ComplexEigenSolver<CMatrix> es(h, false);
      fn.zeros.assign(es.eigenvalues().data(), es.eigenvalues().data() + m);
    }
    return fn.reduced(1e-7);
  }
  CVector num = CVector::Zero(std::max<Index>(m, 1));
  for (Index j = 0; j < m; ++j) {
    Roots others;
    for (Index i = 0; i < m; ++i) {
      if (i != j) others.push_back(a(i));
    }
    const CVector c = poly_from_roots(others);
    num.head(c.size()) += res.r(j) * c;
  }
  Index top = num.size() - 1;
  const double cmax = num.cwiseAbs().maxCoeff();
  while (top >= 0 && std::abs(num(top)) <= 1e-12 * cmax) --top;
  if (top < 0 || cmax == 0.0) return RationalFn::ZeroFn();
  fn.gain = num(top);
  fn.zeros = poly_roots(num.head(top + 1));
  return fn.reduced(1e-7);
}

RationalFit FitOrder(const CVector& s, const CVector& f, double fmax, Index n) {
  const Index k = s.size();
  RationalFit best;
  best.rms_residual = std::numeric_limits<double>::infinity();
  auto finish = [&](CVector a, int iterations) {
    Residues res = FitResidues(s, f, a);
    // Drop poles whose peak contribution is negligible.
    std::vector<Index> keep;
    for (Index j = 0; j < a.size(); ++j) {
      const double peak = std::abs(res.r(j)) / std::max(std::abs(a(j).real()), 1e-12);
      if (peak > 1e-9 * std::max(fmax, 1e-300)) keep.push_back(j);
    }
    if (static_cast<Index>(keep.size()) < a.size()) {
      CVector a2(static_cast<Index>(keep.size()));
      for (size_t j = 0; j < keep.size(); ++j) a2(j) = a(keep[j]);
      a = a2;
      res = FitResidues(s, f, a);
    }
    RationalFit out;
    out.fn = ToZpk(a, res, fmax);
    out.rms_residual = RmsOnSamples(out.fn, s, f);
    out.iterations = iterations;
    if (std::isfinite(out.rms_residual) && out.rms_residual < best.rms_residual) best = out;
  };
  CVector a(n);
  if (n == 0) {
    finish(a, 0);
    return best;
  }
  std::vector<double> im(k);
  for (Index i = 0; i < k; ++i) im[i] = s(i).imag();
  std::sort(im.begin(), im.end());
  const double spread = std::max(im.back() - im.front(), 1e-6);
  for (Index j = 0; j < n; ++j) {
    const double t = im[static_cast<size_t>(
        std::llround((k - 1) * (j + 0.5) / static_cast<double>(n)))];
    a(j) = Complex(-std::max(0.01 * std::abs(t), 0.01 * spread / n), t);
  }
  for (int it = 0; it < 50; ++it) {
    CMatrix m(k, 2 * n + 1);
    for (Index i = 0; i < k; ++i) {
      for (Index j = 0; j < n; ++j) {
        const Complex basis = 1.0 / (s(i) - a(j));
        m(i, j) = basis;
        m(i, n + 1 + j) = -f(i) * basis;
      }
      m(i, n) = 1.0;
    }
    const CVector x = SolveLs(m, f);
    CMatrix h = a.asDiagonal();
    h -= CVector::Ones(n) * x.tail(n).transpose();
    Eigen::ComplexEigenSolver<CMatrix> es(h, false);
    const CVector next = es.eigenvalues();
    if (!next.allFinite()) {
      throw Error(ErrorKind::kIllConditioned, "pole relocation diverged");
    }
    const Roots ra(a.data(), a.data() + n);
    const Roots rb(next.data(), next.data() + n);
    const double move = multiset_distance(ra, rb);
    a = next;
    // Noisy data can make the relocation wander; keep the best iterate.
    finish(a, it + 1);
    if (move <= 1e-13 * std::max(1.0, a.cwiseAbs().maxCoeff())) break;
  }
  return best;
}

}  // namespace

RationalFit fit_rational_from_samples(
    const std::vector<std::pair<double, Complex>>& samples, int degree_bound) {
  if (degree_bound < 0) {
    throw Error(ErrorKind::kInvalidArgument, "negative degree bound");
  }
  const Index n = degree_bound;
  const Index k = static_cast<Index>(samples.size());
  if (k < 2 * (2 * n + 1)) {
    throw Error(ErrorKind::kInvalidArgument, "too few samples for the degree");
  }
  CVector s(k), f(k);
  double fmax = 0.0;
  for (Index i = 0; i < k; ++i) {
    s(i) = Complex(0.0, -samples[i].first);
    f(i) = samples[i].second;
    fmax = std::max(fmax, std::abs(f(i)));
  }
  // Smallest order that reproduces the data to round-off, else the best.
  RationalFit best;
  best.rms_residual = std::numeric_limits<double>::infinity();
  for (Index order = 0; order <= n; ++order) {
    RationalFit fit;
    try {
      fit = FitOrder(s, f, fmax, order);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kIllConditioned || order == 0) throw;
      break;
    }
    if (fit.rms_residual < best.rms_residual) best = fit;
    if (fit.rms_residual <= 1e-10 * std::max(fmax, 1e-300)) break;
  }
  if (!std::isfinite(best.rms_residual)) {
    throw Error(ErrorKind::kIllConditioned, "fit is not finite on the samples");
  }
  return best;
}

}  // namespace qls
