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

#include "qlsid/stationary.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qls {

CMatrix power_spectrum_eval(const QlsSystem& sys, const GaussianInput& v,
                            Complex s) {
  if (v.n_channels() != sys.n_channels()) {
    throw Error(ErrorKind::kChannelMismatch, "input covariance size");
  }
  const CMatrix xi = eval_transfer(sys, s);
  const CMatrix xr = eval_transfer(sys, -std::conj(s));
  return xi * v.V() * xr.adjoint();
}

StationaryState stationary_covariance(const QlsSystem& sys,
                                      const GaussianInput& v) {
  if (v.n_channels() != sys.n_channels()) {
    throw Error(ErrorKind::kChannelMismatch, "input covariance size");
  }
  StationaryState st;
  const Index n = sys.n_modes();
  if (n == 0) {
    st.P = CMatrix::Zero(0, 0);
    st.S_sys = DoubledUpMatrix::Identity(0);
    return st;
  }
  if (!is_hurwitz(sys)) {
    throw Error(ErrorKind::kNotHurwitz, "stationary state needs a stable drift");
  }
  const CMatrix a = drift(sys).dense();
  const CMatrix b = -flat_dense(sys.C().dense()) * sys.S().dense();
  const CMatrix q = b * v.V() * b.adjoint();
  st.P = solve_lyapunov(a, q);
  st.lyapunov_residual = max_abs(a * st.P + st.P * a.adjoint() + q);
  const WilliamsonResult w = williamson(st.P, 1e-7);
  st.thermal_numbers = w.thermal_numbers;
  st.S_sys = w.S_in;
  return st;
}

VacuumBasis vacuum_basis(const QlsSystem& sys, const GaussianInput& v) {
  if (v.n_channels() != sys.n_channels()) {
    throw Error(ErrorKind::kChannelMismatch, "input covariance size");
  }
  const WilliamsonResult w = williamson(v.V());
  for (double t : w.thermal_numbers) {
    if (t >= kPurityThreshold) {
      throw Error(ErrorKind::kNotPure, "input state is mixed");
    }
  }
  const DoubledUpMatrix s0 = w.S_in.flat();
  const DoubledUpMatrix s0f = w.S_in;
  const QlsSystem out(s0f * sys.S() * s0, s0f * sys.C(), sys.Omega(), 1e-6);
  return {out, GaussianInput::Vacuum(sys.n_channels()), s0};
}

QlsSystem to_input_basis(const QlsSystem& part, const DoubledUpMatrix& S0) {
  return QlsSystem(S0 * part.S() * S0.flat(), S0 * part.C(), part.Omega(),
                   1e-6);
}

namespace {

QlsSystem SubSystem(const QlsSystem& sys, Index start, Index count,
                    bool drop_plus) {
  const CMatrix cm = sys.c_minus().middleCols(start, count);
  CMatrix cp = sys.c_plus().middleCols(start, count);
  const CMatrix om = sys.omega_minus().block(start, start, count, count);
  CMatrix op = sys.omega_plus().block(start, start, count, count);
  if (drop_plus) {
    cp.setZero();
    op.setZero();
  }
  return QlsSystem(sys.S(), DoubledUpMatrix(cm, cp), DoubledUpMatrix(om, op),
                   1e-6);
}

}  // namespace

GlobalMinimalityReport global_minimality(const QlsSystem& sys,
                                         const GaussianInput& v,
                                         double threshold) {
  if (!is_minimal(sys)) throw Error(ErrorKind::kNotMinimal, "global_minimality");
  if (!is_hurwitz(sys)) throw Error(ErrorKind::kNotHurwitz, "global_minimality");
  // Fold the scattering into the input: (S, C, Ω) under V acts like
  // (1, C, Ω) under S V S†.
  const CMatrix vs = sys.S().dense() * v.V() * sys.S().dense().adjoint();
  const Index m = sys.n_channels();
  const GaussianInput vin(vs.bottomRightCorner(m, m),
                          vs.topRightCorner(m, m), 1e-6);
  const QlsSystem plain(DoubledUpMatrix::Identity(m), sys.C(), sys.Omega());
  const VacuumBasis vb = vacuum_basis(plain, vin);
  const StationaryState st = stationary_covariance(vb.system, vb.input);

  GlobalMinimalityReport rep;
  rep.S0 = vb.S0;
  rep.thermal_numbers = st.thermal_numbers;
  const Index n = sys.n_modes();
  for (double t : st.thermal_numbers) {
    if (t < threshold) ++rep.pure_dim;
  }
  rep.mixed_dim = n - rep.pure_dim;
  rep.is_globally_minimal = rep.pure_dim == 0;
  if (rep.pure_dim == 0) {
    rep.mixed_part = vb.system;
    return rep;
  }
  const QlsSystem canon = apply_symplectic(vb.system, st.S_sys);
  const Index p = rep.pure_dim;
  rep.residual_c_plus_p = max_abs(canon.c_plus().leftCols(p));
  rep.residual_omega_plus_pp = max_abs(canon.omega_plus().topLeftCorner(p, p));
  rep.pure_part = SubSystem(canon, 0, p, true);
  rep.mixed_part = SubSystem(canon, p, n - p, false);
  const QlsSystem again = series_product(*rep.mixed_part, *rep.pure_part);
  rep.residual_series = system_distance(again, canon);
  return rep;
}

GlobalMinimalityReport passive_global_minimality(const QlsSystem& sys,
                                                 const GaussianInput& v) {
  if (!is_passive(sys)) throw Error(ErrorKind::kNotPassive, "passive rule");
  if (!is_minimal(sys)) throw Error(ErrorKind::kNotMinimal, "passive rule");
  if (!v.is_pure()) throw Error(ErrorKind::kNotPure, "input state is mixed");
  const Index n = sys.n_modes();
  GlobalMinimalityReport rep;
  rep.S0 = DoubledUpMatrix::Identity(sys.n_channels());
  const bool vacuum_like = max_abs(v.M()) <= kDefaultTol;
  Roots lams;
  if (n > 0) {
    Eigen::ComplexEigenSolver<CMatrix> es(drift_components(sys).first, false);
    lams.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  }
  double scale = 1.0;
  for (const Complex& l : lams) scale = std::max(scale, std::abs(l));
  const double tol = 1e-7 * scale;
  std::vector<bool> pure(n, vacuum_like);
  if (!vacuum_like) {
    for (Index i = 0; i < n; ++i) {
      if (std::abs(lams[i].imag()) <= tol) pure[i] = true;
    }
    for (Index i = 0; i < n; ++i) {
      if (pure[i]) continue;
      for (Index j = i + 1; j < n; ++j) {
        if (!pure[j] && std::abs(lams[j] - std::conj(lams[i])) <= tol) {
          pure[i] = pure[j] = true;
          break;
        }
      }
    }
  }
  TransferFunctionSISO tp{RationalFn::Constant(1.0), RationalFn::ZeroFn()};
  TransferFunctionSISO tm = tp;
  for (Index i = 0; i < n; ++i) {
    TransferFunctionSISO& t = pure[i] ? tp : tm;
    t.xi_minus.poles.push_back(lams[i]);
    t.xi_minus.zeros.push_back(-std::conj(lams[i]));
    if (pure[i]) {
      ++rep.pure_dim;
    } else {
      ++rep.mixed_dim;
    }
  }
  rep.is_globally_minimal = rep.pure_dim == 0;
  rep.mixed_part = series_chain(passive_cascade(tm));
  if (rep.mixed_dim == 0) rep.mixed_part = QlsSystem::Trivial(1);
  if (rep.pure_dim > 0) rep.pure_part = series_chain(passive_cascade(tp));
  return rep;
}

double spectrum_grid_gap(const QlsSystem& a, const GaussianInput& va,
                         const QlsSystem& b, const GaussianInput& vb,
                         const std::vector<double>& omegas) {
  double worst = 0.0;
  for (double w : omegas) {
    const Complex s(0.0, -w);
    worst = std::max(worst, max_abs(power_spectrum_eval(a, va, s) -
                                    power_spectrum_eval(b, vb, s)));
  }
  return worst;
}

}  // namespace qls
