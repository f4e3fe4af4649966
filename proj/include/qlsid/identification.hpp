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

#include <utility>
#include <vector>

#include "qlsid/stationary.hpp"

namespace qls {

/// Vacuum-input power spectrum of a SISO system:
/// phi11 = Ξ₋(s) Ξ₋(-s#)#, phi12 = Ξ₋(s) Ξ₊(-s), phi22 = Ξ₊(s#)# Ξ₊(-s).
struct PowerSpectrumSISO {
  RationalFn phi11;
  RationalFn phi12;
  RationalFn phi22;

  /// [phi11, phi12; phi12(-s#)#, phi22] at s.
  CMatrix operator()(Complex s) const;
};

PowerSpectrumSISO spectrum_components(const TransferFunctionSISO& tf);
/// Throws InvalidArgument (m != 1) and the tf_rational errors.
PowerSpectrumSISO spectrum_components(const QlsSystem& sys);

/// Zero counts at a real location λ > 0 (u = λ²) seen during
/// reconstruction.
struct ZeroAssignment {
  int n_at = 0;
  int m_at = 0;
  int p = 0;
  int q = 0;
  double location = 0.0;
};

/// Unique (p, q) with (n - p), (m - q) even and nonnegative, p = n or q = m,
/// and q - p = red_minus - red_plus. Throws Inconsistent.
std::pair<int, int> real_zero_counts(int n_at, int m_at, int red_plus,
                                     int red_minus);

/// True when some λ has Ξ₋ ∋ (s + λ#)/(s - λ) and Ξ₊ ∋ (s + λ)/(s - λ#).
bool topple_check(const TransferFunctionSISO& tf, double tol = 1e-7);

struct Reconstruction {
  TransferFunctionSISO tf;
  std::vector<ZeroAssignment> real_zeros;
  double spectrum_residual = 0.0;
};

/// Transfer function from the vacuum power spectrum. Throws
/// NotGloballyMinimal when the assignment is ambiguous or forces a topple
/// pattern, Inconsistent when the counts admit no solution.
Reconstruction reconstruct_tf_traced(const PowerSpectrumSISO& ps);
TransferFunctionSISO reconstruct_tf(const PowerSpectrumSISO& ps);

struct EntangledSpectrumBlocks {
  RationalFn block21;
  RationalFn block14;
  Complex N2;
  Complex M2;
};

/// (2,1) and (1,4) power-spectrum entries with an ancilla channel.
EntangledSpectrumBlocks entangled_blocks(const TransferFunctionSISO& tf,
                                         Complex N2, Complex M2);

/// Throws SingularInput when |N2| = |M2|.
TransferFunctionSISO entangled_identify(const EntangledSpectrumBlocks& blocks,
                                        double tol = 1e-9);

struct RationalFit {
  RationalFn fn;
  double rms_residual = 0.0;
  int iterations = 0;
};

/// Vector fitting of samples f(-iω) with at most degree_bound poles.
/// Throws InvalidArgument (too few samples), IllConditioned.
RationalFit fit_rational_from_samples(
    const std::vector<std::pair<double, Complex>>& samples, int degree_bound);

}  // namespace qls
