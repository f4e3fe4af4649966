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

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qlsid/error.hpp"

namespace qls {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Eigen::Index;

inline constexpr double kDefaultTol = 1e-8;

/// A complex matrix with the block pattern [A, B; B#, A#]. Only the upper
/// blocks are stored so the symmetry holds by construction.
class DoubledUpMatrix {
 public:
  DoubledUpMatrix() = default;

  /// Throws ShapeMismatch if the blocks differ in shape.
  DoubledUpMatrix(CMatrix upper_left, CMatrix upper_right);

  static DoubledUpMatrix Identity(Index n);
  static DoubledUpMatrix Zero(Index n, Index m);

  /// Reads the upper blocks of a dense 2n x 2m matrix after checking the
  /// lower blocks against the doubled-up pattern. Throws NotDoubledUp.
  static DoubledUpMatrix FromDense(const CMatrix& dense,
                                   double tol = kDefaultTol);

  /// Averages each upper block with the conjugate of its lower mirror.
  /// No checking; meant for removing round-off.
  static DoubledUpMatrix Project(const CMatrix& dense);

  Index half_rows() const { return upper_left_.rows(); }
  Index half_cols() const { return upper_left_.cols(); }
  Index rows() const { return 2 * half_rows(); }
  Index cols() const { return 2 * half_cols(); }

  const CMatrix& upper_left() const { return upper_left_; }
  const CMatrix& upper_right() const { return upper_right_; }

  CMatrix dense() const;

  /// J_m Z† J_n.
  DoubledUpMatrix flat() const;
  /// Z†, which is again doubled-up.
  DoubledUpMatrix adjoint() const;
  DoubledUpMatrix inverse() const;

  DoubledUpMatrix operator*(const DoubledUpMatrix& other) const;
  DoubledUpMatrix operator+(const DoubledUpMatrix& other) const;
  DoubledUpMatrix operator-(const DoubledUpMatrix& other) const;
  DoubledUpMatrix operator-() const;
  /// Only real scalars preserve the doubled-up pattern.
  DoubledUpMatrix operator*(double scalar) const;

 private:
  CMatrix upper_left_;
  CMatrix upper_right_;
};

DoubledUpMatrix delta(const CMatrix& a, const CMatrix& b);
DoubledUpMatrix flat(const DoubledUpMatrix& z);

/// ♭ of an arbitrary 2n x 2m matrix.
CMatrix flat_dense(const CMatrix& z);

/// diag(1_n, -1_n).
CMatrix j_matrix(Index n);
/// Δ(0, 1_n).
DoubledUpMatrix sigma_matrix(Index n);

double max_abs(const CMatrix& m);

bool is_flat_unitary(const DoubledUpMatrix& s, double tol = kDefaultTol);
bool is_flat_unitary(const CMatrix& s, double tol = kDefaultTol);
bool is_symplectic(const DoubledUpMatrix& s, double tol = kDefaultTol);
/// Checks the doubled-up pattern too, so J_n itself is rejected.
bool is_symplectic(const CMatrix& s, double tol = kDefaultTol);

/// Max-entry distance of a dense matrix from the doubled-up pattern.
double doubled_up_defect(const CMatrix& m);

/// Solves a P + P a† + q = 0 by complex Schur reduction. Throws NotHurwitz.
CMatrix solve_lyapunov(const CMatrix& a, const CMatrix& q);

/// Solves a X + X b + q = 0 (Schur forms of both a and b). Throws
/// SingularInput when a and -b share an eigenvalue.
CMatrix solve_sylvester(const CMatrix& a, const CMatrix& b, const CMatrix& q);

/// Eigen-decomposition data of a ♭-self-adjoint doubled-up matrix
/// 𝒩 = W N̂ W♭.
struct SymplecticEigenData {
  DoubledUpMatrix W;
  std::vector<double> lambda_plus;
  std::vector<double> lambda_minus;
  std::vector<std::pair<double, double>> complex_pairs;

  Index n() const {
    return static_cast<Index>(lambda_plus.size() + lambda_minus.size() +
                              2 * complex_pairs.size());
  }
  /// The canonical matrix N̂ in mode order λ⁺, λ⁻, complex blocks.
  DoubledUpMatrix canonical() const;
};

struct SqueezeFactor {
  DoubledUpMatrix Nbar;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> xs;
};

struct WilliamsonResult {
  DoubledUpMatrix S_in;
  std::vector<double> thermal_numbers;
};

/// Throws NotDoubledUp, InvalidArgument when the input is not ♭-self-adjoint,
/// NonSemisimple when the eigenvector matrix is numerically singular.
SymplecticEigenData symplectic_canonical_form(const DoubledUpMatrix& script_n,
                                              double tol = kDefaultTol);

SqueezeFactor symplectic_square_root(const SymplecticEigenData& nhat);

/// Covariance V = [N^T + 1, M; M†, N] (2m x 2m). Throws NotACovariance.
WilliamsonResult williamson(const CMatrix& v, double tol = kDefaultTol);

/// V(N, M) assembled from its blocks.
CMatrix covariance_matrix(const CMatrix& n, const CMatrix& m);

/// Canonical form diag(n_i + 1, n_i) of given thermal numbers.
CMatrix thermal_covariance(const std::vector<double>& thermal_numbers);

/// Numerical rank with singular values above rel_tol * sigma_max.
Index numeric_rank(const CMatrix& m, double rel_tol = 1e-10);

/// 2-norm condition number.
double condition_number(const CMatrix& m);

}  // namespace qls
