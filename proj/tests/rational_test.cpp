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

#include "qlsid/rational.hpp"

#include <cmath>

#include "test_util.hpp"

namespace qls {
namespace {

const Complex I(0.0, 1.0);

TEST(PolynomialTest, FromRootsAscending) {
  const CVector c = poly_from_roots({1.0, 2.0});
  ASSERT_EQ(c.size(), 3);
  EXPECT_NEAR(std::abs(c(0) - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c(1) + 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c(2) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(poly_eval(c, 3.0) - 2.0), 0.0, 1e-15);
}

TEST(PolynomialTest, RootsRoundTrip) {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const CMatrix r = random_complex(1 + k % 6, 1, 2.0, rng);
    const Roots roots(r.data(), r.data() + r.size());
    EXPECT_LE(multiset_distance(poly_roots(poly_from_roots(roots)), roots), 1e-9);
  }
}

TEST(PolynomialTest, TrimsLeadingZeros) {
  CVector c(4);
  c << -1.0, 1.0, 0.0, 0.0;
  const Roots r = poly_roots(c);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(std::abs(r[0] - 1.0), 0.0, 1e-14);
}

TEST(MultisetTest, DistanceAndMultiplicity) {
  EXPECT_NEAR(multiset_distance({1.0, 2.0}, {2.0, 1.0 + 1e-3}), 1e-3, 1e-15);
  EXPECT_TRUE(std::isinf(multiset_distance({1.0}, {1.0, 2.0})));
  EXPECT_EQ(multiplicity({1.0, 1.0, 2.0}, 1.0, 1e-12), 2);
}

TEST(RationalTest, EvaluateAndReduce) {
  RationalFn f{{-1.0, 2.0}, {-1.0 + 1e-12, -3.0}, 2.0};
  EXPECT_NEAR(std::abs(f(0.0) + 4.0 / 3.0), 0.0, 1e-9);
  const RationalFn g = f.reduced();
  EXPECT_EQ(g.zeros.size(), 1u);
  EXPECT_EQ(g.poles.size(), 1u);
  EXPECT_NEAR(std::abs(g(1.0) - f(1.0)), 0.0, 1e-10);
  EXPECT_TRUE(RationalFn::ZeroFn().is_zero());
  const RationalFn strict{{1.0}, {2.0, 3.0}, 1.0};
  EXPECT_EQ(strict.relative_degree(), 1);
}

TEST(RationalTest, ReflectAndVee) {
  const RationalFn f{{1.0 + I}, {-2.0 + 0.5 * I, -1.0}, 0.3 - 0.7 * I};
  for (Complex s : {Complex(0.2, 1.0), Complex(-0.4, 0.3)}) {
    EXPECT_NEAR(std::abs(f.reflect()(s) - f(-s)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(f.vee()(s) - std::conj(f(std::conj(s)))), 0.0, 1e-13);
  }
}

TEST(RationalTest, Arithmetic) {
  const RationalFn f{{1.0 + I}, {-2.0 + 0.5 * I, -1.0}, 0.3 - 0.7 * I};
  const RationalFn g{{-0.5}, {-1.0, -3.0 * I}, 1.5};
  for (Complex s : {Complex(0.2, 1.0), Complex(-0.4, 0.3), Complex(2.0, -1.0)}) {
    EXPECT_NEAR(std::abs((f * g)(s) - f(s) * g(s)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs((f / g)(s) - f(s) / g(s)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs((f + g)(s) - (f(s) + g(s))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs((f - g)(s) - (f(s) - g(s))), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(f.scaled(2.0 * I)(s) - 2.0 * I * f(s)), 0.0, 1e-12);
  }
  EXPECT_TRUE((f - f).is_zero());
  // The shared pole at -1 is counted once.
  EXPECT_EQ((f + g).poles.size(), 3u);
}

TEST(RationalTest, Distance) {
  const RationalFn f{{1.0}, {-2.0}, 3.0};
  EXPECT_EQ(rational_distance(f, f), 0.0);
  EXPECT_NEAR(rational_distance(f, RationalFn{{1.0}, {-2.0 + 1e-4}, 3.0}), 1e-4, 1e-12);
}

TEST(TransferFunctionTest, DoubledUpValue) {
  TransferFunctionSISO tf{{{1.0}, {-2.0}, 1.0}, {{}, {-2.0}, I}};
  const Complex s(0.1, -0.8);
  const CMatrix v = tf(s);
  EXPECT_NEAR(std::abs(v(0, 0) - tf.xi_minus(s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v(0, 1) - tf.xi_plus(s)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v(1, 0) - std::conj(tf.xi_plus(std::conj(s)))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v(1, 1) - std::conj(tf.xi_minus(std::conj(s)))), 0.0, 1e-15);
}

TEST(TransferFunctionTest, ProductMatchesMatrices) {
  TransferFunctionSISO a{{{1.0}, {-2.0}, 1.0}, {{}, {-2.0}, I}};
  TransferFunctionSISO b{{{0.5 + I, -0.5 + I}, {-1.0 + I, -1.0 - I}, 1.0}, {{}, {-1.0 + I, -1.0 - I}, 0.4}};
  const TransferFunctionSISO ab = a * b;
  for (Complex s : {Complex(0.0, 0.7), Complex(0.3, -2.0)}) {
    EXPECT_TRUE(testing::MatrixNear(ab(s), a(s) * b(s), 1e-12));
  }
}

TEST(TransferFunctionTest, ProbeGrid) {
  const std::vector<double> g = probe_grid();
  EXPECT_EQ(g.size(), 100u);
  EXPECT_NEAR(g.front(), 1e-2, 1e-15);
  const TransferFunctionSISO passive{{{1.0}, {-1.0}, 1.0}, RationalFn::ZeroFn()};
  EXPECT_LE(symplectic_identity_defect(passive, g), 1e-14);
}

}  // namespace
}  // namespace qls
