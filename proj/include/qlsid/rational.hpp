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

#include <vector>

#include "qlsid/core_linalg.hpp"

namespace qls {

using Roots = std::vector<Complex>;

/// Polynomial coefficients in ascending powers: c[0] + c[1] s + ...
CVector poly_from_roots(const Roots& roots);
Complex poly_eval(const CVector& coeffs, Complex s);
/// Roots of a polynomial from its companion matrix, Newton-polished.
/// Trailing (leading-power) zero coefficients are trimmed first.
Roots poly_roots(const CVector& coeffs);

/// Minimum over matchings of the largest pairwise distance; infinity if the
/// sizes differ.
double multiset_distance(const Roots& a, const Roots& b);

/// Number of entries of r within tol of z.
int multiplicity(const Roots& r, Complex z, double tol);

inline constexpr double kCancelTol = 1e-9;

/// Zero-pole-gain rational function gain * prod(s - z) / prod(s - p).
struct RationalFn {
  Roots zeros;
  Roots poles;
  Complex gain{1.0, 0.0};

  static RationalFn Constant(Complex c);
  static RationalFn ZeroFn() { return Constant(0.0); }

  bool is_zero() const { return gain == Complex(0.0, 0.0); }
  int relative_degree() const {
    return static_cast<int>(poles.size()) - static_cast<int>(zeros.size());
  }

  Complex operator()(Complex s) const;

  /// Removes zero/pole pairs within tol * max(1, |p|). Zero functions drop
  /// all roots.
  RationalFn reduced(double tol = kCancelTol) const;

  /// f(-s).
  RationalFn reflect() const;
  /// f(s#)#.
  RationalFn vee() const;
  RationalFn scaled(Complex c) const;

  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator/(const RationalFn& o) const;
  /// Sum over the least common pole multiset.
  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
};

/// Max distance of the pole/zero multisets and relative gain gap.
double rational_distance(const RationalFn& a, const RationalFn& b);

/// The pair (Ξ₋, Ξ₊) of a SISO quantum linear system.
struct TransferFunctionSISO {
  RationalFn xi_minus;
  RationalFn xi_plus;

  /// The doubled-up 2 x 2 value [Ξ₋(s), Ξ₊(s); Ξ₊(s#)#, Ξ₋(s#)#].
  CMatrix operator()(Complex s) const;
  TransferFunctionSISO reduced(double tol = kCancelTol) const;
};

/// Ξ₂ Ξ₁ as SISO transfer functions.
TransferFunctionSISO operator*(const TransferFunctionSISO& xi2,
                               const TransferFunctionSISO& xi1);

/// Max over a grid of |Ξ₋|² - |Ξ₊|² - 1 at s = -iω.
double symplectic_identity_defect(const TransferFunctionSISO& tf,
                                  const std::vector<double>& omegas);

/// 50 log-spaced frequencies in [1e-2, 1e2] and their negatives.
std::vector<double> probe_grid();

}  // namespace qls
