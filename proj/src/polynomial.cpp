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
#include <numeric>

#include <Eigen/Eigenvalues>

#include "qlsid/rational.hpp"

namespace qls {

CVector poly_from_roots(const Roots& roots) {
  CVector c = CVector::Zero(static_cast<Index>(roots.size()) + 1);
  c(0) = 1.0;
  Index deg = 0;
  for (const Complex& r : roots) {
    ++deg;
    for (Index k = deg; k >= 1; --k) c(k) = c(k - 1) - r * c(k);
    c(0) = -r * c(0);
  }
  return c;
}

Complex poly_eval(const CVector& coeffs, Complex s) {
  Complex acc = 0.0;
  for (Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * s + coeffs(k);
  return acc;
}

namespace {

Complex PolyDerivEval(const CVector& c, Complex s) {
  Complex acc = 0.0;
  for (Index k = c.size() - 1; k >= 1; --k) {
    acc = acc * s + static_cast<double>(k) * c(k);
  }
  return acc;
}

}  // namespace

Roots poly_roots(const CVector& coeffs) {
  Index deg = coeffs.size() - 1;
  const double cmax = coeffs.size() ? coeffs.cwiseAbs().maxCoeff() : 0.0;
  while (deg > 0 && std::abs(coeffs(deg)) <= 1e-14 * cmax) --deg;
  if (deg <= 0) return {};
  const CVector c = coeffs.head(deg + 1) / coeffs(deg);
  Roots out;
  if (deg == 1) {
    out.push_back(-c(0));
    return out;
  }
  CMatrix comp = CMatrix::Zero(deg, deg);
  for (Index i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (Index i = 0; i < deg; ++i) comp(i, deg - 1) = -c(i);
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  for (Index i = 0; i < deg; ++i) {
    Complex z = es.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      const Complex f = poly_eval(c, z);
      const Complex df = PolyDerivEval(c, z);
      if (std::abs(df) == 0.0) break;
      const Complex zn = z - f / df;
      if (std::abs(poly_eval(c, zn)) < std::abs(f)) {
        z = zn;
      } else {
        break;
      }
    }
    out.push_back(z);
  }
  return out;
}

double multiset_distance(const Roots& a, const Roots& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const size_t n = a.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (size_t i = 0; i < n && worst < best; ++i) {
        worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
      }
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<bool> used(n, false);
  double worst = 0.0;
  for (size_t i = 0; i < n; ++i) {
    size_t bj = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < n; ++j) {
      if (!used[j] && std::abs(a[i] - b[j]) < bd) bd = std::abs(a[i] - b[j]), bj = j;
    }
    used[bj] = true;
    worst = std::max(worst, bd);
  }
  return worst;
}

int multiplicity(const Roots& r, Complex z, double tol) {
  int k = 0;
  for (const Complex& x : r) {
    if (std::abs(x - z) <= tol) ++k;
  }
  return k;
}

}  // namespace qls
