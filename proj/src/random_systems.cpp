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

#include "qlsid/random_systems.hpp"

#include <cmath>

#include <Eigen/QR>

namespace qls {

CMatrix random_complex(Index rows, Index cols, double scale, Rng& rng) {
  std::normal_distribution<double> g(0.0, scale / std::sqrt(2.0));
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

CMatrix random_hermitian(Index n, double scale, Rng& rng) {
  const CMatrix x = random_complex(n, n, scale, rng);
  return 0.5 * (x + x.adjoint());
}

CMatrix random_symmetric(Index n, double scale, Rng& rng) {
  const CMatrix x = random_complex(n, n, scale, rng);
  return 0.5 * (x + x.transpose());
}

CMatrix random_unitary(Index n, Rng& rng) {
  const CMatrix x = random_complex(n, n, 1.0, rng);
  Eigen::HouseholderQR<CMatrix> qr(x);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR();
  for (Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

DoubledUpMatrix random_symplectic(Index n, double squeeze, Rng& rng) {
  std::uniform_real_distribution<double> u(-squeeze, squeeze);
  CMatrix ch = CMatrix::Zero(n, n), sh = CMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const double r = u(rng);
    ch(i, i) = std::cosh(r);
    sh(i, i) = std::sinh(r);
  }
  const DoubledUpMatrix u1(random_unitary(n, rng), CMatrix::Zero(n, n));
  const DoubledUpMatrix u2(random_unitary(n, rng), CMatrix::Zero(n, n));
  return u1 * DoubledUpMatrix(ch, sh) * u2;
}

QlsSystem coupled_cavity_system(double x) {
  CMatrix c = CMatrix::Zero(1, 2);
  c(0, 1) = 2.0 * std::sqrt(2.0);
  CMatrix om(2, 2);
  om << 4.0 + x, 4.0 - x, 4.0 - x, 4.0 + x;
  om *= 0.5;
  return QlsSystem::FromBlocks(c, CMatrix::Zero(1, 2), om, CMatrix::Zero(2, 2));
}

bool has_generic_spectrum(const QlsSystem& sys, double sep) {
  const CVector ev = drift_eigenvalues(sys);
  for (Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).imag()) < sep) return false;
    for (Index j = i + 1; j < ev.size(); ++j) {
      if (std::abs(ev(i) - ev(j)) < sep) return false;
    }
  }
  return true;
}

QlsSystem random_hurwitz_system(Index n, Rng& rng,
                                const RandomSystemOptions& opts,
                                int* rejections) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const CMatrix cm = random_complex(1, n, opts.coupling, rng);
    const CMatrix om = random_hermitian(n, opts.hamiltonian, rng);
    CMatrix cp = CMatrix::Zero(1, n);
    CMatrix op = CMatrix::Zero(n, n);
    if (opts.active) {
      cp = random_complex(1, n, opts.coupling * opts.plus_ratio, rng);
      op = random_symmetric(n, opts.hamiltonian * opts.plus_ratio, rng);
    }
    const QlsSystem sys = QlsSystem::FromBlocks(cm, cp, om, op);
    const bool ok = is_hurwitz(sys) && is_minimal(sys) &&
                    drift_eigenvalues(sys).real().maxCoeff() < -1e-2 &&
                    (!opts.generic || has_generic_spectrum(sys, opts.separation));
    if (ok) return sys;
    if (rejections) ++*rejections;
  }
  throw Error(ErrorKind::kInvalidArgument, "no admissible random system found");
}

GaussianInput random_pure_input(Rng& rng, double n_min, double n_max) {
  std::uniform_real_distribution<double> un(n_min, n_max);
  std::uniform_real_distribution<double> ph(-M_PI, M_PI);
  const double nn = un(rng);
  CMatrix n(1, 1), m(1, 1);
  n(0, 0) = nn;
  m(0, 0) = std::polar(std::sqrt(nn * (nn + 1.0)), ph(rng));
  return GaussianInput(n, m);
}

CascadeFactor random_cascade_factor(Rng& rng, bool passive) {
  std::uniform_real_distribution<double> ux(0.3, 2.0);
  std::uniform_real_distribution<double> ut(-2.0, 2.0);
  std::uniform_real_distribution<double> ph(-M_PI, M_PI);
  std::uniform_real_distribution<double> frac(0.05, 0.9);
  CascadeFactor f;
  f.x = ux(rng);
  f.theta = ut(rng);
  f.phi = ph(rng);
  if (passive) {
    f.y = Complex(0.0, std::abs(f.theta));
    return f;
  }
  if (std::bernoulli_distribution(0.5)(rng)) {
    f.y = Complex(frac(rng) * f.x, 0.0);
  } else {
    // |Ω₊| strictly between 0 and |θ|.
    f.y = Complex(0.0, std::abs(f.theta) * std::sqrt(1.0 - frac(rng)));
  }
  return f;
}

}  // namespace qls
