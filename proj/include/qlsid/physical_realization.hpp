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

#include "qlsid/freq_domain.hpp"

namespace qls {

/// Q with Q A₀ + A₀† Q + C₀† J C₀ = 0. Throws NotHurwitz.
CMatrix solve_lom(const DoubledUpMatrix& a0, const DoubledUpMatrix& c0);

struct PhysicalizationResiduals {
  double lom = 0.0;        // ‖Q A₀ + A₀† Q + C₀† J C₀‖
  double canonical = 0.0;  // ‖W N̄♭N̄ W♭ - J Q‖
  double flat_t = 0.0;     // ‖T♭T - J Q‖
  double input = 0.0;      // ‖T B₀ + C♭‖
  double realizable = 0.0; // realizability on the result
  double transfer = 0.0;   // grid gap against the input transfer function
};

struct PhysicalizationTrace {
  StateSpace gilbert;
  CMatrix Q;
  DoubledUpMatrix TflatT;
  DoubledUpMatrix W;
  DoubledUpMatrix Tbar;
  DoubledUpMatrix T;
  QlsSystem result;
  PhysicalizationResiduals residuals;
};

/// Physical realization of a SISO transfer function. Passive inputs with
/// real or repeated poles fall back to a cavity cascade. Throws the Gilbert
/// errors, SingularTransform, NonPhysical.
PhysicalizationTrace physicalize(const TransferFunctionSISO& tf);

/// Symplectic T with apply_symplectic(sys1, T) = sys2 when the two systems
/// share a transfer function. Throws NotMinimal, NotHurwitz.
std::optional<DoubledUpMatrix> equivalence_check(const QlsSystem& sys1,
                                                 const QlsSystem& sys2,
                                                 double tol = kDefaultTol);

/// ‖T♭T - 1‖ and ‖T T♭ - 1‖, max-entry.
double symplectic_residual(const DoubledUpMatrix& t);

}  // namespace qls
