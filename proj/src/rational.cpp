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

#include "qlsid/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qls {

RationalFn RationalFn::Constant(Complex c) {
  RationalFn f;
  f.gain = c;
  return f;
}

Complex RationalFn::operator()(Complex s) const {
  if (is_zero()) return 0.0;
  Complex v = gain;
  for (const Complex& z : zeros) v *= (s - z);
  for (const Complex& p : poles) v /= (s - p);
  return v;
}

RationalFn RationalFn::reduced(double tol) const {
  if (is_zero()) return ZeroFn();
  RationalFn out;
  out.gain = gain;
  std::vector<bool> used(poles.size(), false);
  for (const Complex& z : zeros) {
    size_t best = poles.size();
    double bd = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < poles.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(z - poles[j]);
      if (d <= tol * std::max(1.0, std::abs(poles[j])) && d < bd) {
        bd = d;
        best = j;
      }
    }
    if (best < poles.size()) {
      used[best] = true;
    } else {
      out.zeros.push_back(z);
    }
  }
  for (size_t j = 0; j < poles.size(); ++j) {
    if (!used[j]) out.poles.push_back(poles[j]);
  }
  return out;
}

RationalFn RationalFn::reflect() const {
  if (is_zero()) return ZeroFn();
  RationalFn out;
  for (const Complex& z : zeros) out.zeros.push_back(-z);
  for (const Complex& p : poles) out.poles.push_back(-p);
  const int k = static_cast<int>(zeros.size() + poles.size());
  out.gain = (k % 2 == 0) ? gain : -gain;
  return out;
}

RationalFn RationalFn::vee() const {
  if (is_zero()) return ZeroFn();
  RationalFn out;
  for (const Complex& z : zeros) out.zeros.push_back(std::conj(z));
  for (const Complex& p : poles) out.poles.push_back(std::conj(p));
  out.gain = std::conj(gain);
  return out;
}

RationalFn RationalFn::scaled(Complex c) const {
  if (c == Complex(0.0, 0.0) || is_zero()) return ZeroFn();
  RationalFn out = *this;
  out.gain *= c;
  return out;
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
  if (is_zero() || o.is_zero()) return ZeroFn();
  RationalFn out;
  out.gain = gain * o.gain;
  out.zeros = zeros;
  out.zeros.insert(out.zeros.end(), o.zeros.begin(), o.zeros.end());
  out.poles = poles;
  out.poles.insert(out.poles.end(), o.poles.begin(), o.poles.end());
  return out.reduced();
}

RationalFn RationalFn::operator/(const RationalFn& o) const {
  if (o.is_zero()) {
    throw Error(ErrorKind::kSingularInput, "division by the zero function");
  }
  RationalFn inv;
  inv.gain = 1.0 / o.gain;
  inv.zeros = o.poles;
  inv.poles = o.zeros;
  return *this * inv;
}

namespace {

// Multiset difference full \ part, matching within a relative tolerance.
Roots Complement(const Roots& full, const Roots& part, double tol) {
  std::vector<bool> used(full.size(), false);
  for (const Complex& p : part) {
    for (size_t j = 0; j < full.size(); ++j) {
      if (!used[j] &&
          std::abs(full[j] - p) <= tol * std::max(1.0, std::abs(p))) {
        used[j] = true;
        break;
      }
    }
  }
  Roots out;
  for (size_t j = 0; j < full.size(); ++j) {
    if (!used[j]) out.push_back(full[j]);
  }
  return out;
}

}  // namespace

RationalFn RationalFn::operator+(const RationalFn& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  Roots lcm = poles;
  for (const Complex& p : Complement(o.poles, poles, kCancelTol)) {
    lcm.push_back(p);
  }
  Roots fa = zeros;
  for (const Complex& p : Complement(lcm, poles, kCancelTol)) fa.push_back(p);
  Roots fb = o.zeros;
  for (const Complex& p : Complement(lcm, o.poles, kCancelTol)) fb.push_back(p);
  CVector ca = gain * poly_from_roots(fa);
  CVector cb = o.gain * poly_from_roots(fb);
  const Index deg = std::max(ca.size(), cb.size());
  CVector num = CVector::Zero(deg);
  num.head(ca.size()) += ca;
  num.head(cb.size()) += cb;
  const double scale = std::max(ca.cwiseAbs().maxCoeff(), cb.cwiseAbs().maxCoeff());
  Index top = deg - 1;
  while (top >= 0 && std::abs(num(top)) <= 1e-13 * scale) --top;
  if (top < 0) return ZeroFn();
  RationalFn out;
  out.gain = num(top);
  out.zeros = poly_roots(num.head(top + 1));
  out.poles = lcm;
  return out.reduced();
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
  return *this + o.scaled(-1.0);
}

double rational_distance(const RationalFn& a, const RationalFn& b) {
  if (a.is_zero() || b.is_zero()) {
    return (a.is_zero() && b.is_zero()) ? 0.0 : std::abs(a.gain - b.gain);
  }
  const double dz = multiset_distance(a.zeros, b.zeros);
  const double dp = multiset_distance(a.poles, b.poles);
  const double dg = std::abs(a.gain - b.gain) / std::max(1.0, std::abs(a.gain));
  return std::max({dz, dp, dg});
}

CMatrix TransferFunctionSISO::operator()(Complex s) const {
  CMatrix m(2, 2);
  m(0, 0) = xi_minus(s);
  m(0, 1) = xi_plus(s);
  m(1, 0) = std::conj(xi_plus(std::conj(s)));
  m(1, 1) = std::conj(xi_minus(std::conj(s)));
  return m;
}

TransferFunctionSISO TransferFunctionSISO::reduced(double tol) const {
  return {xi_minus.reduced(tol), xi_plus.reduced(tol)};
}

TransferFunctionSISO operator*(const TransferFunctionSISO& xi2,
                               const TransferFunctionSISO& xi1) {
  TransferFunctionSISO out;
  out.xi_minus = xi2.xi_minus * xi1.xi_minus + xi2.xi_plus * xi1.xi_plus.vee();
  out.xi_plus = xi2.xi_minus * xi1.xi_plus + xi2.xi_plus * xi1.xi_minus.vee();
  return out;
}

double symplectic_identity_defect(const TransferFunctionSISO& tf,
                                  const std::vector<double>& omegas) {
  double worst = 0.0;
  for (double w : omegas) {
    const Complex s(0.0, -w);
    const double v = std::norm(tf.xi_minus(s)) - std::norm(tf.xi_plus(s)) - 1.0;
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

std::vector<double> probe_grid() {
  std::vector<double> out;
  for (int i = 0; i < 50; ++i) {
    const double w = std::pow(10.0, -2.0 + 4.0 * i / 49.0);
    out.push_back(w);
    out.push_back(-w);
  }
  return out;
}

}  // namespace qls
