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

#include "qlsid/core_linalg.hpp"

#include <cmath>

#include "test_util.hpp"

namespace qls {
namespace {

using testing::KindOf;
using testing::MatrixNear;
using testing::Scalar;

const Complex I(0.0, 1.0);

TEST(DeltaTest, IdentityAndSigma) {
  const Index n = 3;
  EXPECT_TRUE(MatrixNear(delta(CMatrix::Identity(n, n), CMatrix::Zero(n, n)).dense(),
                         CMatrix::Identity(2 * n, 2 * n), 0.0));
  CMatrix swap = CMatrix::Zero(2 * n, 2 * n);
  swap.topRightCorner(n, n).setIdentity();
  swap.bottomLeftCorner(n, n).setIdentity();
  EXPECT_TRUE(MatrixNear(delta(CMatrix::Zero(n, n), CMatrix::Identity(n, n)).dense(), swap, 0.0));
  EXPECT_TRUE(MatrixNear(sigma_matrix(n).dense(), swap, 0.0));
}

TEST(DeltaTest, ScalarSubstitution) {
  CMatrix expected(2, 2);
  expected << 1.0, 2.0 * I, -2.0 * I, 1.0;
  EXPECT_TRUE(MatrixNear(delta(Scalar(1.0), Scalar(2.0 * I)).dense(), expected, 0.0));
}

TEST(DeltaTest, ShapeMismatch) {
  EXPECT_EQ(KindOf([] { delta(CMatrix::Zero(2, 2), CMatrix::Zero(2, 3)); }),
            ErrorKind::kShapeMismatch);
}

TEST(DeltaTest, FromDenseChecksPattern) {
  Rng rng(1);
  const DoubledUpMatrix z(random_complex(2, 3, 1.0, rng), random_complex(2, 3, 1.0, rng));
  EXPECT_TRUE(MatrixNear(DoubledUpMatrix::FromDense(z.dense()).dense(), z.dense(), 0.0));
  CMatrix broken = z.dense();
  broken(3, 0) += 0.1;
  EXPECT_EQ(KindOf([&] { DoubledUpMatrix::FromDense(broken); }), ErrorKind::kNotDoubledUp);
  EXPECT_GT(doubled_up_defect(broken), 0.05);
  EXPECT_EQ(doubled_up_defect(z.dense()), 0.0);
}

TEST(FlatTest, IdentityIsFixed) {
  EXPECT_TRUE(MatrixNear(flat(DoubledUpMatrix::Identity(2)).dense(),
                         CMatrix::Identity(4, 4), 0.0));
}

TEST(FlatTest, Involution) {
  Rng rng(2);
  for (int k = 0; k < 10; ++k) {
    const DoubledUpMatrix z(random_complex(2, 3, 1.0, rng), random_complex(2, 3, 1.0, rng));
    EXPECT_TRUE(MatrixNear(flat(flat(z)).dense(), z.dense(), 0.0));
  }
}

TEST(FlatTest, TwoByTwoExpansion) {
  const Complex a(0.3, -1.2), b(2.0, 0.5);
  CMatrix expected(2, 2);
  expected << std::conj(a), -b, -std::conj(b), a;
  EXPECT_TRUE(MatrixNear(flat(delta(Scalar(a), Scalar(b))).dense(), expected, 1e-15));
}

TEST(FlatTest, MatchesDenseDefinition) {
  Rng rng(3);
  const DoubledUpMatrix z(random_complex(2, 3, 1.0, rng), random_complex(2, 3, 1.0, rng));
  const CMatrix expected = j_matrix(3) * z.dense().adjoint() * j_matrix(2);
  EXPECT_TRUE(MatrixNear(z.flat().dense(), expected, 1e-15));
  EXPECT_TRUE(MatrixNear(flat_dense(z.dense()), expected, 1e-15));
}

TEST(FlatTest, ReversesProducts) {
  Rng rng(4);
  for (int k = 0; k < 10; ++k) {
    const DoubledUpMatrix x(random_complex(2, 3, 1.0, rng), random_complex(2, 3, 1.0, rng));
    const DoubledUpMatrix y(random_complex(3, 4, 1.0, rng), random_complex(3, 4, 1.0, rng));
    EXPECT_TRUE(MatrixNear((x * y).flat().dense(), (y.flat() * x.flat()).dense(), 1e-10));
  }
}

TEST(DoubledUpTest, ArithmeticMatchesDense) {
  Rng rng(5);
  const DoubledUpMatrix x(random_complex(3, 3, 1.0, rng), random_complex(3, 3, 1.0, rng));
  const DoubledUpMatrix y(random_complex(3, 3, 1.0, rng), random_complex(3, 3, 1.0, rng));
  EXPECT_TRUE(MatrixNear((x * y).dense(), x.dense() * y.dense(), 1e-12));
  EXPECT_TRUE(MatrixNear((x + y).dense(), x.dense() + y.dense(), 1e-15));
  EXPECT_TRUE(MatrixNear((x - y).dense(), x.dense() - y.dense(), 1e-15));
  EXPECT_TRUE(MatrixNear((x * 2.5).dense(), 2.5 * x.dense(), 1e-15));
  EXPECT_TRUE(MatrixNear(x.adjoint().dense(), x.dense().adjoint(), 0.0));
  EXPECT_TRUE(MatrixNear(x.inverse().dense(), x.dense().inverse(), 1e-9));
}

TEST(SymplecticTest, IdentityAndSqueeze) {
  EXPECT_TRUE(is_flat_unitary(DoubledUpMatrix::Identity(2)));
  EXPECT_TRUE(is_symplectic(DoubledUpMatrix::Identity(2)));
  const double r = 0.7;
  const DoubledUpMatrix sq = delta(Scalar(std::cosh(r)), Scalar(std::sinh(r)));
  EXPECT_TRUE(is_flat_unitary(sq));
  EXPECT_TRUE(is_symplectic(sq));
  EXPECT_TRUE(is_symplectic(sq.dense()));
}

TEST(SymplecticTest, ScalingBreaksUnitarity) {
  EXPECT_FALSE(is_flat_unitary(delta(2.0 * CMatrix::Identity(2, 2), CMatrix::Zero(2, 2))));
}

TEST(SymplecticTest, JIsNotSymplectic) {
  // J♭J = 1 but J lacks the doubled-up pattern.
  EXPECT_TRUE(is_flat_unitary(j_matrix(2)));
  EXPECT_FALSE(is_symplectic(j_matrix(2)));
}

TEST(SymplecticTest, GroupClosure) {
  Rng rng(6);
  for (int k = 0; k < 10; ++k) {
    const DoubledUpMatrix a = random_symplectic(3, 0.8, rng);
    const DoubledUpMatrix b = random_symplectic(3, 0.8, rng);
    EXPECT_TRUE(is_symplectic(a * b));
    EXPECT_TRUE(is_symplectic(a.inverse()));
    EXPECT_TRUE(MatrixNear(a.inverse().dense(), a.flat().dense(), 1e-10));
  }
}

TEST(LyapunovTest, Scalars) {
  EXPECT_NEAR(solve_lyapunov(Scalar(-1.0), Scalar(4.0))(0, 0).real(), 2.0, 1e-14);
  EXPECT_TRUE(MatrixNear(solve_lyapunov(-CMatrix::Identity(3, 3), 2.0 * CMatrix::Identity(3, 3)),
                         CMatrix::Identity(3, 3), 1e-14));
}

TEST(LyapunovTest, RandomResidual) {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const Index n = 1 + k % 5;
    CMatrix a = random_complex(n, n, 1.0, rng);
    const double shift = Eigen::ComplexEigenSolver<CMatrix>(a).eigenvalues().real().maxCoeff();
    a -= (shift + 0.5) * CMatrix::Identity(n, n);
    const CMatrix q = random_hermitian(n, 1.0, rng);
    const CMatrix p = solve_lyapunov(a, q);
    EXPECT_LE(max_abs(a * p + p * a.adjoint() + q), 1e-10 * std::max(1.0, max_abs(q)));
    EXPECT_LE(max_abs(p - p.adjoint()), 1e-12);
  }
}

TEST(LyapunovTest, NotHurwitz) {
  EXPECT_EQ(KindOf([] { solve_lyapunov(Scalar(0.5), Scalar(1.0)); }), ErrorKind::kNotHurwitz);
  EXPECT_EQ(KindOf([] { solve_lyapunov(Scalar(I), Scalar(1.0)); }), ErrorKind::kNotHurwitz);
}

TEST(SylvesterTest, RandomResidual) {
  Rng rng(8);
  const CMatrix a = random_complex(3, 3, 1.0, rng) - 4.0 * CMatrix::Identity(3, 3);
  const CMatrix b = random_complex(2, 2, 1.0, rng) - 4.0 * CMatrix::Identity(2, 2);
  const CMatrix q = random_complex(3, 2, 1.0, rng);
  const CMatrix x = solve_sylvester(a, b, q);
  EXPECT_LE(max_abs(a * x + x * b + q), 1e-10);
}

TEST(CanonicalFormTest, Identity) {
  const SymplecticEigenData d = symplectic_canonical_form(DoubledUpMatrix::Identity(2));
  EXPECT_EQ(d.lambda_plus.size(), 2u);
  for (double l : d.lambda_plus) EXPECT_NEAR(l, 1.0, 1e-12);
  EXPECT_TRUE(is_symplectic(d.W));
  EXPECT_TRUE(MatrixNear((d.W * d.canonical() * d.W.flat()).dense(), CMatrix::Identity(4, 4), 1e-12));
}

TEST(CanonicalFormTest, AlreadyDiagonal) {
  CMatrix n = CMatrix::Zero(2, 2);
  n(0, 0) = 4.0;
  n(1, 1) = 0.25;
  const DoubledUpMatrix script_n = delta(n, CMatrix::Zero(2, 2));
  const SymplecticEigenData d = symplectic_canonical_form(script_n);
  ASSERT_EQ(d.lambda_plus.size(), 2u);
  EXPECT_NEAR(d.lambda_plus[0], 4.0, 1e-12);
  EXPECT_NEAR(d.lambda_plus[1], 0.25, 1e-12);
  EXPECT_TRUE(MatrixNear((d.W * d.canonical() * d.W.flat()).dense(), script_n.dense(), 1e-12));
}

TEST(CanonicalFormTest, RandomReconstruction) {
  Rng rng(9);
  int mixed = 0;
  for (int k = 0; k < 40; ++k) {
    const Index n = 1 + k % 4;
    const DoubledUpMatrix nn(random_complex(n, n, 1.0, rng), random_complex(n, n, 0.8, rng));
    const DoubledUpMatrix script_n = nn.flat() * nn;
    const SymplecticEigenData d = symplectic_canonical_form(script_n);
    EXPECT_EQ(d.n(), n);
    EXPECT_TRUE(is_symplectic(d.W, 1e-6));
    const double scale = max_abs(script_n.dense());
    EXPECT_LE(max_abs((d.W * d.canonical() * d.W.flat()).dense() - script_n.dense()),
              1e-8 * scale);
    if (!d.lambda_minus.empty() || !d.complex_pairs.empty()) ++mixed;
    for (const auto& [mu, nu] : d.complex_pairs) EXPECT_GT(nu, 0.0);
  }
  EXPECT_GT(mixed, 0);
}

TEST(CanonicalFormTest, RejectsNonFlatSelfAdjoint) {
  Rng rng(10);
  const DoubledUpMatrix x(random_complex(2, 2, 1.0, rng), random_complex(2, 2, 1.0, rng));
  EXPECT_EQ(KindOf([&] { symplectic_canonical_form(x); }), ErrorKind::kInvalidArgument);
}

TEST(SquareRootTest, PositiveEigenvalue) {
  SymplecticEigenData d;
  d.W = DoubledUpMatrix::Identity(1);
  d.lambda_plus = {4.0};
  const SqueezeFactor f = symplectic_square_root(d);
  EXPECT_NEAR(std::abs(f.Nbar.upper_left()(0, 0)), 2.0, 1e-14);
  EXPECT_NEAR(std::abs(f.Nbar.upper_right()(0, 0)), 0.0, 1e-14);
}

TEST(SquareRootTest, NegativeEigenvalue) {
  SymplecticEigenData d;
  d.W = DoubledUpMatrix::Identity(1);
  d.lambda_minus = {-9.0};
  const SqueezeFactor f = symplectic_square_root(d);
  EXPECT_NEAR(std::abs(f.Nbar.upper_left()(0, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.Nbar.upper_right()(0, 0)), 3.0, 1e-14);
  EXPECT_TRUE(MatrixNear((f.Nbar.flat() * f.Nbar).dense(), d.canonical().dense(), 1e-12));
}

TEST(SquareRootTest, ZeroRealPart) {
  SymplecticEigenData d;
  d.W = DoubledUpMatrix::Identity(2);
  d.complex_pairs = {{0.0, 2.0}};
  const SqueezeFactor f = symplectic_square_root(d);
  ASSERT_EQ(f.alphas.size(), 1u);
  EXPECT_NEAR(f.alphas[0], 1.0, 1e-14);
  EXPECT_NEAR(f.betas[0], 1.0, 1e-14);
  EXPECT_TRUE(MatrixNear((f.Nbar.flat() * f.Nbar).dense(), d.canonical().dense(), 1e-12));
}

TEST(SquareRootTest, ReconstructsRandom) {
  Rng rng(11);
  for (int k = 0; k < 30; ++k) {
    const Index n = 1 + k % 4;
    const DoubledUpMatrix nn(random_complex(n, n, 1.0, rng), random_complex(n, n, 0.9, rng));
    const DoubledUpMatrix script_n = nn.flat() * nn;
    const SymplecticEigenData d = symplectic_canonical_form(script_n);
    const SqueezeFactor f = symplectic_square_root(d);
    const CMatrix rebuilt = (d.W * f.Nbar.flat() * f.Nbar * d.W.flat()).dense();
    EXPECT_LE(max_abs(rebuilt - script_n.dense()), 1e-8 * max_abs(script_n.dense()));
  }
}

TEST(WilliamsonTest, Vacuum) {
  const WilliamsonResult w = williamson(covariance_matrix(Scalar(0.0), Scalar(0.0)));
  ASSERT_EQ(w.thermal_numbers.size(), 1u);
  EXPECT_NEAR(w.thermal_numbers[0], 0.0, 1e-14);
  EXPECT_TRUE(MatrixNear(w.S_in.dense(), CMatrix::Identity(2, 2), 1e-12));
}

TEST(WilliamsonTest, PureSqueezed) {
  const CMatrix v = covariance_matrix(Scalar(1.0), Scalar(std::sqrt(2.0)));
  const WilliamsonResult w = williamson(v);
  EXPECT_NEAR(w.thermal_numbers[0], 0.0, 1e-10);
  EXPECT_TRUE(is_symplectic(w.S_in));
  const CMatrix canon = w.S_in.dense() * v * w.S_in.dense().adjoint();
  EXPECT_TRUE(MatrixNear(canon, thermal_covariance({0.0}), 1e-8));
}

TEST(WilliamsonTest, Thermal) {
  const WilliamsonResult w = williamson(covariance_matrix(Scalar(1.0), Scalar(0.0)));
  EXPECT_NEAR(w.thermal_numbers[0], 1.0, 1e-12);
  EXPECT_TRUE(MatrixNear(w.S_in.dense(), CMatrix::Identity(2, 2), 1e-12));
}

TEST(WilliamsonTest, RandomCongruenceInvariance) {
  Rng rng(12);
  for (int k = 0; k < 20; ++k) {
    const Index m = 1 + k % 3;
    std::vector<double> nums;
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (Index i = 0; i < m; ++i) nums.push_back(u(rng));
    std::sort(nums.begin(), nums.end());
    const DoubledUpMatrix s = random_symplectic(m, 0.7, rng);
    const CMatrix v = s.dense() * thermal_covariance(nums) * s.dense().adjoint();
    const WilliamsonResult w = williamson(v);
    ASSERT_EQ(w.thermal_numbers.size(), nums.size());
    for (std::size_t i = 0; i < nums.size(); ++i) EXPECT_NEAR(w.thermal_numbers[i], nums[i], 1e-8);
    EXPECT_TRUE(is_symplectic(w.S_in));
    EXPECT_TRUE(MatrixNear(w.S_in.dense() * v * w.S_in.dense().adjoint(),
                           thermal_covariance(w.thermal_numbers), 1e-8));
  }
}

TEST(WilliamsonTest, RejectsNonCovariance) {
  EXPECT_EQ(KindOf([] { williamson(covariance_matrix(Scalar(1.0), Scalar(3.0))); }),
            ErrorKind::kNotACovariance);
}

TEST(RankTest, NumericRank) {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-3;
  EXPECT_EQ(numeric_rank(m), 2);
  EXPECT_NEAR(condition_number(CMatrix::Identity(3, 3)), 1.0, 1e-14);
}

}  // namespace
}  // namespace qls
