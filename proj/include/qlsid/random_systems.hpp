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

#include <random>

#include "qlsid/freq_domain.hpp"
#include "qlsid/stationary.hpp"

namespace qls {

using Rng = std::mt19937_64;

CMatrix random_complex(Index rows, Index cols, double scale, Rng& rng);
CMatrix random_hermitian(Index n, double scale, Rng& rng);
CMatrix random_symmetric(Index n, double scale, Rng& rng);
CMatrix random_unitary(Index n, Rng& rng);
/// Δ(U₁,0) Δ(cosh R, sinh R) Δ(U₂,0) with R diagonal in [-squeeze, squeeze].
DoubledUpMatrix random_symplectic(Index n, double squeeze, Rng& rng);

struct RandomSystemOptions {
  bool active = true;
  double coupling = 1.0;
  double hamiltonian = 1.0;
  /// Scale of C₊ and Ω₊ relative to their minus counterparts.
  double plus_ratio = 0.4;
  /// Reject drifts with near-real or near-colliding eigenvalues.
  bool generic = true;
  double separation = 1e-2;
};

/// One channel, n modes, Hurwitz (and generic when requested). The number
/// of rejected draws is added to *rejections when given.
QlsSystem random_hurwitz_system(Index n, Rng& rng,
                                const RandomSystemOptions& opts = {},
                                int* rejections = nullptr);

/// Single-channel pure squeezed state with random phase.
GaussianInput random_pure_input(Rng& rng, double n_min = 0.2,
                                double n_max = 1.5);

/// Stable factor: y real with |y| < x, or y imaginary; active unless
/// passive is set (Ω₊ = 0).
CascadeFactor random_cascade_factor(Rng& rng, bool passive = false);

/// Two-mode passive system with C₋ = (0, 2√2) and
/// Ω₋ = ½[[4+x, 4-x], [4-x, 4+x]]; minimal iff x != 4.
QlsSystem coupled_cavity_system(double x);

/// True if the drift spectrum has all |Im λ| and pairwise gaps above sep.
bool has_generic_spectrum(const QlsSystem& sys, double sep);

}  // namespace qls
