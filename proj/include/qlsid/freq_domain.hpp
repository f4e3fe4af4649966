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

#include "qlsid/rational.hpp"
#include "qlsid/system_model.hpp"

namespace qls {

/// (1 - C (s - A)⁻¹ C♭) S. Throws PoleHit near an eigenvalue of A.
CMatrix eval_transfer(const QlsSystem& sys, Complex s);

/// Zero-pole-gain form of (Ξ₋, Ξ₊) for a Hurwitz SISO system. Passive
/// systems use det(s + A₋†) / det(s - A₋); active systems use the zero
/// dynamics of the two scalar channels. Throws NotHurwitz, InvalidArgument
/// (m != 1), DegenerateSpectrum.
TransferFunctionSISO tf_rational(const QlsSystem& sys);

/// One-mode cascade element with c = sqrt(2x) real, Ω₋ = θ,
/// Ω₊ = e^{iφ} sqrt(y² + θ²).
struct CascadeFactor {
  double x = 0.5;
  Complex y{0.0, 0.0};
  double theta = 0.0;
  double phi = 0.0;

  Complex omega_plus() const;
  /// Throws InvalidArgument unless x > 0, y is real or imaginary and
  /// y² + θ² >= 0.
  void validate() const;
};

/// Factor parameters of a one-mode system with C₊ = 0 and trivial scattering.
CascadeFactor factor_from_system(const QlsSystem& sys);

TransferFunctionSISO factor_tf(const CascadeFactor& f);
/// Ξ_k ⋯ Ξ_1 for factors listed in feed order (factors[0] sees the input).
TransferFunctionSISO cascade_factors(const std::vector<CascadeFactor>& factors);
QlsSystem factor_to_system(const CascadeFactor& f);
/// Series product of the factor systems in feed order.
QlsSystem cascade_system(const std::vector<CascadeFactor>& factors);

/// One-mode cavities (c, Ω) reproducing a passive transfer function. Throws
/// NotPassive, NotStable.
std::vector<QlsSystem> passive_cascade(const TransferFunctionSISO& tf);
/// Series product of a list (first element sees the input).
QlsSystem series_chain(const std::vector<QlsSystem>& systems);

/// Diagonal minimal realization from partial fractions. Throws RealPole,
/// RepeatedPole, ResidueRankExceedsOne.
StateSpace gilbert_realization(const TransferFunctionSISO& tf);

/// Max over a grid of s = -iω of the entrywise gap between two 2 x 2
/// transfer values.
double transfer_grid_gap(const TransferFunctionSISO& a,
                         const TransferFunctionSISO& b,
                         const std::vector<double>& omegas);

/// n log-spaced frequencies in [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace qls
