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

#include "qlsid/freq_domain.hpp"

#include <cmath>

#include "test_util.hpp"

namespace qls {
namespace {

using testing::KindOf;
using testing::MatrixNear;
using testing::Scalar;

const Complex I(0.0, 1.0);

QlsSystem Cavity(Complex c, double omega) {
  return QlsSystem::FromBlocks(Scalar(c), Scalar(0.0), Scalar(omega), Scalar(0.0));
}

double GridGap(const QlsSystem& sys, const TransferFunctionSISO& tf, int count = 100) {
  double gap = 0.0;
  for (double w : log_grid(1e-2, 1e2, count / 2)) {
    for (double sw : {w, -w}) {
      gap = std::max(gap, max_abs(eval_transfer(sys, -I * sw) - tf(-I * sw)));
    }
  }
  return gap;
}

TEST(EvalTransferTest, LargeFrequencyLimit) {
  Rng rng(1);
  const QlsSystem sys = random_hurwitz_system(2, rng);
  EXPECT_TRUE(MatrixNear(eval_transfer(sys, 1e9), CMatrix::Identity(2, 2), 1e-8));
  const DoubledUpMatrix s = delta(Scalar(std::cosh(0.3)), Scalar(std::sinh(0.3)));
  const QlsSystem scattered(s, sys.C(), sys.Omega());
  EXPECT_TRUE(MatrixNear(eval_transfer(scattered, 1e9), s.dense(), 1e-8));
}

TEST(EvalTransferTest, CavityAtZero) {
  EXPECT_TRUE(MatrixNear(eval_transfer(Cavity(std::sqrt(2.0), 0.0), 0.0),
                         -CMatrix::Identity(2, 2), 1e-14));
}

TEST(EvalTransferTest, FlatUnitaryOnAxis) {
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const QlsSystem sys = random_hurwitz_system(1 + k % 3, rng);
    for (double w : {-3.0, -0.2, 0.0, 0.7, 5.0}) {
      EXPECT_TRUE(is_flat_unitary(CMatrix(eval_transfer(sys, -I * w)), 1e-8));
    }
  }
}

TEST(EvalTransferTest, PoleHit) {
  EXPECT_EQ(KindOf([] { eval_transfer(Cavity(std::sqrt(2.0), 0.0), -1.0); }), ErrorKind::kPoleHit);
}

TEST(TfRationalTest, PassiveCavity) {
  const Complex c(0.6, 0.8);
  const double om = 1.3;
  const TransferFunctionSISO tf = tf_rational(Cavity(c, om));
  const RationalFn expected{{-I * om + 0.5 * std::norm(c)}, {-I * om - 0.5 * std::norm(c)}, 1.0};
  EXPECT_LE(rational_distance(tf.xi_minus, expected), 1e-12);
  EXPECT_TRUE(tf.xi_plus.is_zero());
}

TEST(TfRationalTest, RequiresHurwitz) {
  EXPECT_EQ(KindOf([] { tf_rational(Cavity(0.0, 1.0)); }), ErrorKind::kNotHurwitz);
}

TEST(TfRationalTest, RequiresSiso) {
  const QlsSystem two(DoubledUpMatrix::Identity(2),
                      DoubledUpMatrix(CMatrix::Ones(2, 1), CMatrix::Zero(2, 1)),
                      DoubledUpMatrix::Zero(1, 1));
  EXPECT_EQ(KindOf([&] { tf_rational(two); }), ErrorKind::kInvalidArgument);
}

TEST(TfRationalTest, MatchesEvalOnRandomSystems) {
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    RandomSystemOptions opts;
    opts.active = k % 4 != 0;
    const QlsSystem sys = random_hurwitz_system(1 + k % 3, rng, opts);
    const TransferFunctionSISO tf = tf_rational(sys);
    EXPECT_LE(GridGap(sys, tf), 1e-8) << k;
    EXPECT_LE(symplectic_identity_defect(tf, probe_grid()), 1e-8);
    EXPECT_NEAR(std::abs(tf.xi_minus(1e9) - 1.0), 0.0, 1e-7);
  }
}

TEST(TfRationalTest, PolesAreDriftSpectrum) {
  Rng rng(4);
  const QlsSystem sys = random_hurwitz_system(2, rng);
  const TransferFunctionSISO tf = tf_rational(sys);
  const CVector ev = drift_eigenvalues(sys);
  EXPECT_LE(multiset_distance(tf.xi_minus.poles, Roots(ev.data(), ev.data() + ev.size())), 1e-8);
}

TEST(TfRationalTest, ScatteringMultipliesOnTheRight) {
  Rng rng(5);
  const QlsSystem sys = random_hurwitz_system(1, rng);
  const DoubledUpMatrix s = delta(Scalar(std::cosh(0.4) * I), Scalar(std::sinh(0.4)));
  const QlsSystem scattered(s, sys.C(), sys.Omega());
  EXPECT_LE(GridGap(scattered, tf_rational(scattered)), 1e-8);
}

TEST(CascadeFactorTest, PassiveLimit) {
  const CascadeFactor f{0.8, Complex(0.0, 1.5), 1.5, 0.3};
  EXPECT_NEAR(std::abs(f.omega_plus()), 0.0, 1e-15);
  EXPECT_TRUE(cascade_factors({f}).xi_plus.is_zero());
}

TEST(CascadeFactorTest, DirectSubstitution) {
  const CascadeFactor f{1.0, Complex(1.0, 0.0), 0.0, 0.0};
  const TransferFunctionSISO tf = cascade_factors({f});
  // Ξ₋ = (s² - 2)/((s + 2) s), Ξ₊ = 2i/((s + 2) s) at s = 1.
  EXPECT_NEAR(std::abs(tf.xi_minus(1.0) - (-1.0 / 3.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(tf.xi_plus(1.0) - 2.0 * I / 3.0), 0.0, 1e-14);
  EXPECT_TRUE(MatrixNear(eval_transfer(factor_to_system(f), 1.0), tf(1.0), 1e-12));
}

TEST(CascadeFactorTest, ProductPolesAreUnion) {
  const CascadeFactor f1{0.5, Complex(0.2, 0.0), 1.0, 0.1};
  const CascadeFactor f2{1.5, Complex(0.0, 0.5), -0.8, 2.0};
  const TransferFunctionSISO tf = cascade_factors({f1, f2});
  Roots expected = factor_tf(f1).xi_minus.poles;
  for (Complex p : factor_tf(f2).xi_minus.poles) expected.push_back(p);
  EXPECT_LE(multiset_distance(tf.xi_minus.poles, expected), 1e-10);
  EXPECT_LE(symplectic_identity_defect(tf, probe_grid()), 1e-10);
}

TEST(CascadeFactorTest, RoundTrip) {
  Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const CascadeFactor f = random_cascade_factor(rng, k % 5 == 0);
    const QlsSystem sys = factor_to_system(f);
    EXPECT_NEAR(sys.c_minus()(0, 0).real(), std::sqrt(2.0 * f.x), 1e-14);
    EXPECT_NEAR(sys.omega_minus()(0, 0).real(), f.theta, 1e-14);
    EXPECT_LE(GridGap(sys, factor_tf(f)), 1e-8);
    const CascadeFactor g = factor_from_system(sys);
    EXPECT_NEAR(g.x, f.x, 1e-8);
    EXPECT_NEAR(g.theta, f.theta, 1e-8);
    EXPECT_NEAR(std::abs(g.y * g.y - f.y * f.y), 0.0, 1e-8);
    EXPECT_NEAR(std::abs(g.omega_plus() - f.omega_plus()), 0.0, 1e-8);
  }
}

TEST(CascadeFactorTest, PhasePeriodicity) {
  const CascadeFactor f{0.7, Complex(0.3, 0.0), 0.4, 0.9};
  CascadeFactor g = f;
  g.phi += 2.0 * M_PI;
  EXPECT_LE(system_distance(factor_to_system(f), factor_to_system(g)), 1e-14);
}

TEST(CascadeFactorTest, Validation) {
  EXPECT_EQ(KindOf([] { CascadeFactor{0.0, 0.0, 0.0, 0.0}.validate(); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([] { CascadeFactor{1.0, Complex(1.0, 1.0), 0.0, 0.0}.validate(); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(KindOf([] { CascadeFactor{1.0, Complex(0.0, 2.0), 1.0, 0.0}.validate(); }),
            ErrorKind::kInvalidArgument);
}

TEST(CascadeFactorTest, PoleSymmetry) {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    std::vector<CascadeFactor> fs;
    for (int i = 0; i < 3; ++i) fs.push_back(random_cascade_factor(rng));
    const TransferFunctionSISO tf = cascade_factors(fs);
    // Real pairs or conjugate pairs: the pole multiset is closed under #.
    Roots conj;
    for (Complex p : tf.xi_minus.poles) conj.push_back(std::conj(p));
    EXPECT_LE(multiset_distance(conj, tf.xi_minus.poles), 1e-8);
  }
}

TEST(PassiveCascadeTest, SinglePole) {
  const TransferFunctionSISO tf{{{1.0}, {-1.0}, 1.0}, RationalFn::ZeroFn()};
  const std::vector<QlsSystem> parts = passive_cascade(tf);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_NEAR(std::abs(parts[0].c_minus()(0, 0)), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(parts[0].omega_minus()(0, 0).real(), 0.0, 1e-14);
}

TEST(PassiveCascadeTest, TwoPoles) {
  const Complex z1(-1.0, -2.0), z2(-3.0, 1.0);
  const TransferFunctionSISO tf{{{-std::conj(z1), -std::conj(z2)}, {z1, z2}, 1.0},
                                RationalFn::ZeroFn()};
  const std::vector<QlsSystem> parts = passive_cascade(tf);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_NEAR(std::norm(parts[0].c_minus()(0, 0)), 2.0, 1e-12);
  EXPECT_NEAR(parts[0].omega_minus()(0, 0).real(), 2.0, 1e-12);
  EXPECT_NEAR(std::norm(parts[1].c_minus()(0, 0)), 6.0, 1e-12);
  EXPECT_NEAR(parts[1].omega_minus()(0, 0).real(), -1.0, 1e-12);
  EXPECT_LE(GridGap(series_chain(parts), tf), 1e-10);
  const QlsSystem swapped = series_chain({parts[1], parts[0]});
  EXPECT_LE(GridGap(swapped, tf), 1e-10);
}

TEST(PassiveCascadeTest, Errors) {
  const TransferFunctionSISO active{{{1.0}, {-1.0}, 1.0}, {{}, {-1.0}, 0.5}};
  EXPECT_EQ(KindOf([&] { passive_cascade(active); }), ErrorKind::kNotPassive);
  const TransferFunctionSISO unstable{{{-1.0}, {1.0}, 1.0}, RationalFn::ZeroFn()};
  EXPECT_EQ(KindOf([&] { passive_cascade(unstable); }), ErrorKind::kNotStable);
}

TEST(GilbertTest, PassiveCavity) {
  const QlsSystem sys = Cavity(std::sqrt(2.0), 1.0);
  const StateSpace ss = gilbert_realization(tf_rational(sys));
  CMatrix a0 = CMatrix::Zero(2, 2);
  a0(0, 0) = Complex(-1.0, -1.0);
  a0(1, 1) = Complex(-1.0, 1.0);
  EXPECT_TRUE(MatrixNear(ss.A.dense(), a0, 1e-12));
  for (double w : log_grid(1e-2, 1e2, 50)) {
    EXPECT_TRUE(MatrixNear(ss.transfer(-I * w), eval_transfer(sys, -I * w), 1e-8));
  }
}

TEST(GilbertTest, RandomActiveTwoMode) {
  Rng rng(8);
  for (int k = 0; k < 10; ++k) {
    const QlsSystem sys = random_hurwitz_system(2, rng);
    const StateSpace ss = gilbert_realization(tf_rational(sys));
    EXPECT_EQ(ss.A.rows(), 4);
    for (double w : log_grid(1e-2, 1e2, 50)) {
      EXPECT_TRUE(MatrixNear(ss.transfer(-I * w), eval_transfer(sys, -I * w), 1e-8));
    }
    CMatrix obs(4 * 2, 4);
    CMatrix row = ss.C.dense();
    for (int p = 0; p < 4; ++p) {
      obs.middleRows(2 * p, 2) = row;
      row = row * ss.A.dense();
    }
    EXPECT_EQ(numeric_rank(obs), 4);
  }
}

TEST(GilbertTest, GenericityGates) {
  const TransferFunctionSISO real_pole{{{1.0}, {-1.0}, 1.0}, RationalFn::ZeroFn()};
  EXPECT_EQ(KindOf([&] { gilbert_realization(real_pole); }), ErrorKind::kRealPole);
  const Complex p(-1.0, 2.0);
  const TransferFunctionSISO repeated{{{-std::conj(p), -std::conj(p)}, {p, p}, 1.0},
                                      RationalFn::ZeroFn()};
  EXPECT_EQ(KindOf([&] { gilbert_realization(repeated); }), ErrorKind::kRepeatedPole);
}

TEST(GridTest, LogGrid) {
  const std::vector<double> g = log_grid(1.0, 100.0, 3);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_NEAR(g[1], 10.0, 1e-12);
}

}  // namespace
}  // namespace qls
