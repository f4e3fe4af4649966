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

#include <optional>
#include <vector>

#include "qlsid/freq_domain.hpp"

namespace qls {

inline constexpr double kPurityThreshold = 1e-6;

/// Ξ(s) V Ξ(-s#)†. Throws PoleHit.
CMatrix power_spectrum_eval(const QlsSystem& sys, const GaussianInput& v,
                            Complex s);

struct StationaryState {
  CMatrix P;
  std::vector<double> thermal_numbers;
  DoubledUpMatrix S_sys;
  double lyapunov_residual = 0.0;
};

/// A P + P A† + B V B† = 0 with B = -C♭ S. Throws NotHurwitz.
StationaryState stationary_covariance(const QlsSystem& sys,
                                      const GaussianInput& v);

struct VacuumBasis {
  QlsSystem system;
  GaussianInput input;
  /// V = S₀ V_vac S₀†; spectra relate by Ψ = S₀ Ψ̃ S₀†.
  DoubledUpMatrix S0;
};

/// Throws NotPure.
VacuumBasis vacuum_basis(const QlsSystem& sys, const GaussianInput& v);

/// A system given in the vacuum basis of S0, re-expressed for the original
/// input (same power spectrum under the original covariance).
QlsSystem to_input_basis(const QlsSystem& part, const DoubledUpMatrix& S0);

struct GlobalMinimalityReport {
  bool is_globally_minimal = false;
  Index pure_dim = 0;
  Index mixed_dim = 0;
  std::vector<double> thermal_numbers;
  std::optional<QlsSystem> pure_part;
  std::optional<QlsSystem> mixed_part;
  /// Basis of the parts: identity for the passive rule (original basis).
  DoubledUpMatrix S0;
  /// Forced-zero blocks and the series reassembly gap.
  double residual_c_plus_p = 0.0;
  double residual_omega_plus_pp = 0.0;
  double residual_series = 0.0;
};

/// Pure/mixed split of the stationary state. Parts are given in the vacuum
/// basis S0. Throws NotHurwitz, NotMinimal, NotPure.
GlobalMinimalityReport global_minimality(const QlsSystem& sys,
                                         const GaussianInput& v,
                                         double threshold = kPurityThreshold);

/// Eigenvalue rule for passive systems. Parts are cavity cascades in the
/// original basis. A vacuum input makes every mode pure. Throws NotPassive,
/// NotMinimal, NotPure.
GlobalMinimalityReport passive_global_minimality(const QlsSystem& sys,
                                                 const GaussianInput& v);

/// Max over s = -iω of the entrywise gap between two power spectra.
double spectrum_grid_gap(const QlsSystem& a, const GaussianInput& va,
                         const QlsSystem& b, const GaussianInput& vb,
                         const std::vector<double>& omegas);

}  // namespace qls
