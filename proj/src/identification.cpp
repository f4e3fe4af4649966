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

#include "qlsid/identification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qls {

CMatrix PowerSpectrumSISO::operator()(Complex s) const {
  CMatrix m(2, 2);
  m(0, 0) = phi11(s);
  m(0, 1) = phi12(s);
  m(1, 0) = std::conj(phi12(-std::conj(s)));
  m(1, 1) = phi22(s);
  return m;
}

PowerSpectrumSISO spectrum_components(const TransferFunctionSISO& tf) {
  PowerSpectrumSISO ps;
  ps.phi11 = tf.xi_minus * tf.xi_minus.vee().reflect();
  ps.phi12 = tf.xi_minus * tf.xi_plus.reflect();
  ps.phi22 = tf.xi_plus.vee() * tf.xi_plus.reflect();
  return ps;
}

PowerSpectrumSISO spectrum_components(const QlsSystem& sys) {
  if (sys.n_channels() != 1) {
    throw Error(ErrorKind::kInvalidArgument, "spectrum components need m = 1");
  }
  return spectrum_components(tf_rational(sys));
}

std::pair<int, int> real_zero_counts(int n_at, int m_at, int red_plus,
                                     int red_minus) {
  if (n_at < 0 || m_at < 0) {
    throw Error(ErrorKind::kInconsistent, "negative zero counts");
  }
  const int diff = red_minus - red_plus;
  std::vector<std::pair<int, int>> found;
  for (int p = 0; p <= n_at; ++p) {
    if ((n_at - p) % 2 != 0) continue;
    const int q = p + diff;
    if (q < 0 || q > m_at || (m_at - q) % 2 != 0) continue;
    if (p != n_at && q != m_at) continue;
    found.emplace_back(p, q);
  }
  if (found.size() != 1) {
    throw Error(ErrorKind::kInconsistent,
                found.empty() ? "no admissible real-zero split"
                              : "ambiguous real-zero split");
  }
  return found.front();
}

bool topple_check(const TransferFunctionSISO& tf_in, double tol) {
  const TransferFunctionSISO tf = tf_in.reduced();
  if (tf.xi_plus.is_zero()) return false;
  for (const Complex& lam : tf.xi_minus.poles) {
    const double t = tol * std::max(1.0, std::abs(lam));
    if (multiplicity(tf.xi_minus.zeros, -std::conj(lam), t) > 0 &&
        multiplicity(tf.xi_plus.poles, std::conj(lam), t) > 0 &&
        multiplicity(tf.xi_plus.zeros, -lam, t) > 0) {
      return true;
    }
  }
  return false;
}

namespace {

constexpr double kClusterTol = 1e-7;

bool Near(Complex a, Complex b) {
  return std::abs(a - b) <= kClusterTol * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Bucket {
  Complex value;
  int count[3] = {0, 0, 0};
};

int FindOrAdd(std::vector<Bucket>& buckets, Complex v) {
  for (size_t i = 0; i < buckets.size(); ++i) {
    if (Near(buckets[i].value, v)) return static_cast<int>(i);
  }
  buckets.push_back({v, {0, 0, 0}});
  return static_cast<int>(buckets.size()) - 1;
}

// full \ part; throws Inconsistent when part is not contained in full.
Roots Missing(const Roots& full, const Roots& part) {
  std::vector<bool> used(full.size(), false);
  for (const Complex& p : part) {
    size_t best = full.size();
    double bd = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < full.size(); ++j) {
      const double d = std::abs(full[j] - p);
      if (!used[j] && Near(full[j], p) && d < bd) bd = d, best = j;
    }
    if (best == full.size()) {
      throw Error(ErrorKind::kInconsistent,
                  "spectrum pole outside the reconstructed pole set");
    }
    used[best] = true;
  }
  Roots out;
  for (size_t j = 0; j < full.size(); ++j) {
    if (!used[j]) out.push_back(full[j]);
  }
  return out;
}

// Denominator roots D with D(s) D(-s) covering every spectrum pole.
Roots DenominatorRoots(const PowerSpectrumSISO& ps) {
  std::vector<Bucket> buckets;
  std::vector<std::vector<int>> sources;
  for (const RationalFn* f : {&ps.phi11, &ps.phi12, &ps.phi22}) {
    std::vector<int> lhp, rhp;
    for (const Complex& p : f->poles) {
      if (std::abs(p.real()) <= 1e-12 * std::max(1.0, std::abs(p))) {
        throw Error(ErrorKind::kInconsistent, "spectrum pole on the axis");
      }
      if (p.real() < 0) {
        lhp.push_back(FindOrAdd(buckets, p));
      } else {
        rhp.push_back(FindOrAdd(buckets, -p));
      }
    }
    sources.push_back(lhp);
    sources.push_back(rhp);
  }
  // Close under conjugation.
  const size_t base = buckets.size();
  for (size_t i = 0; i < base; ++i) FindOrAdd(buckets, std::conj(buckets[i].value));
  std::vector<int> mult(buckets.size(), 0);
  for (const auto& src : sources) {
    std::vector<int> c(buckets.size(), 0);
    for (int b : src) ++c[b];
    for (size_t i = 0; i < buckets.size(); ++i) {
      const int j = FindOrAdd(buckets, std::conj(buckets[i].value));
      mult[i] = std::max({mult[i], c[i], c[j]});
    }
  }
  Roots d;
  for (size_t i = 0; i < buckets.size(); ++i) {
    Complex v = buckets[i].value;
    if (std::abs(v.imag()) <= kClusterTol * std::max(1.0, std::abs(v))) {
      v = v.real();
    }
    for (int k = 0; k < mult[i]; ++k) d.push_back(v);
  }
  return d;
}

// Maps ± pairs of s-roots to u = s² with halved multiplicity.
void CountU(std::vector<Bucket>& buckets, const Roots& zeros, int slot) {
  std::vector<int> raw(buckets.size(), 0);
  std::vector<int> idx;
  for (const Complex& z : zeros) idx.push_back(FindOrAdd(buckets, z * z));
  raw.resize(buckets.size(), 0);
  for (int b : idx) ++raw[b];
  for (size_t i = 0; i < buckets.size(); ++i) {
    if (raw[i] % 2 != 0) {
      throw Error(ErrorKind::kInconsistent,
                  "spectrum zeros do not come in +/- pairs");
    }
    buckets[i].count[slot] += raw[i] / 2;
  }
}

Roots SqrtPairs(const Roots& u_roots) {
  Roots out;
  for (const Complex& u : u_roots) {
    const Complex r = std::sqrt(u);
    out.push_back(r);
    out.push_back(-r);
  }
  return out;
}

double SpectrumGap(const PowerSpectrumSISO& a, const PowerSpectrumSISO& b) {
  double worst = 0.0;
  for (double w : probe_grid()) {
    const Complex s(0.0, -w);
    const RationalFn* fa[3] = {&a.phi11, &a.phi12, &a.phi22};
    const RationalFn* fb[3] = {&b.phi11, &b.phi12, &b.phi22};
    for (int k = 0; k < 3; ++k) {
      const Complex va = (*fa[k])(s);
      const Complex vb = (*fb[k])(s);
      worst = std::max(worst, std::abs(va - vb) / std::max(1.0, std::abs(vb)));
    }
  }
  return worst;
}

}  // namespace

Reconstruction reconstruct_tf_traced(const PowerSpectrumSISO& ps_in) {
  const PowerSpectrumSISO ps{ps_in.phi11.reduced(), ps_in.phi12.reduced(),
                             ps_in.phi22.reduced()};
  Reconstruction rec;
  if (ps.phi12.is_zero()) {
    if (!ps.phi22.is_zero() || !ps.phi11.zeros.empty() ||
        !ps.phi11.poles.empty() || std::abs(ps.phi11.gain - 1.0) > 1e-8) {
      throw Error(ErrorKind::kInconsistent,
                  "phi12 vanishes but the spectrum is not trivial");
    }
    rec.tf = {RationalFn::Constant(1.0), RationalFn::ZeroFn()};
    return rec;
  }
  const Roots d = DenominatorRoots(ps);
  if (d.size() % 2 != 0) {
    throw Error(ErrorKind::kInconsistent, "odd denominator degree");
  }
  const int n = static_cast<int>(d.size()) / 2;
  Roots full = d;
  for (const Complex& r : d) full.push_back(-r);

  std::vector<Bucket> u;
  const RationalFn* comps[3] = {&ps.phi11, &ps.phi12, &ps.phi22};
  for (int k = 0; k < 3; ++k) {
    Roots aug = comps[k]->zeros;
    for (const Complex& z : Missing(full, comps[k]->poles)) aug.push_back(z);
    CountU(u, aug, k);
  }
  int deg11 = 0;
  for (const auto& b : u) deg11 += b.count[0];
  if (deg11 != 2 * n) {
    throw Error(ErrorKind::kInconsistent, "phi11 numerator degree mismatch");
  }

  Roots e_roots, f_roots;
  std::vector<bool> done(u.size(), false);
  for (size_t i = 0; i < u.size(); ++i) {
    if (done[i]) continue;
    done[i] = true;
    const Complex r = u[i].value;
    const int k11 = u[i].count[0];
    const int l1 = u[i].count[1];
    const int k22 = u[i].count[2];
    if (std::abs(r.imag()) <= kClusterTol * std::max(1.0, std::abs(r))) {
      if (k11 % 2 != 0) {
        throw Error(ErrorKind::kInconsistent, "odd real zero count in phi11");
      }
      const int a = k11 / 2;
      const int f = l1 - a;
      if (f < 0 || k22 != 2 * f) {
        throw Error(ErrorKind::kInconsistent, "real zero counts disagree");
      }
      if (r.real() > 0) {
        ZeroAssignment za;
        za.location = std::sqrt(r.real());
        za.n_at = k11;
        za.m_at = k22;
        const auto [p, q] = real_zero_counts(k11, k22, l1, l1);
        za.p = p;
        za.q = q;
        rec.real_zeros.push_back(za);
        if (a > 0 && f > 0) {
          throw Error(ErrorKind::kNotGloballyMinimal,
                      "real zero shared by both components (topple pattern)");
        }
      }
      for (int k = 0; k < a; ++k) e_roots.push_back(r.real());
      for (int k = 0; k < f; ++k) f_roots.push_back(r.real());
      continue;
    }
    // Conjugate partner.
    int kc11 = 0, l2 = 0, kc22 = 0;
    Complex rc = std::conj(r);
    for (size_t j = i + 1; j < u.size(); ++j) {
      if (!done[j] && Near(u[j].value, rc)) {
        done[j] = true;
        rc = u[j].value;
        kc11 = u[j].count[0];
        l2 = u[j].count[1];
        kc22 = u[j].count[2];
        break;
      }
    }
    if (kc11 != k11 || kc22 != k22 || k22 != l1 + l2 - k11) {
      throw Error(ErrorKind::kInconsistent, "complex zero counts disagree");
    }
    const int lo = std::max(0, k11 - l2);
    const int hi = std::min(k11, l1);
    if (lo > hi) {
      throw Error(ErrorKind::kInconsistent, "no admissible complex zero split");
    }
    if (lo < hi) {
      throw Error(ErrorKind::kNotGloballyMinimal,
                  "complex zero assignment is ambiguous (topple pattern)");
    }
    const int a = lo;
    for (int k = 0; k < a; ++k) e_roots.push_back(r);
    for (int k = 0; k < k11 - a; ++k) e_roots.push_back(rc);
    for (int k = 0; k < l1 - a; ++k) f_roots.push_back(r);
    for (int k = 0; k < l2 - (k11 - a); ++k) f_roots.push_back(rc);
  }
  if (static_cast<int>(e_roots.size()) != n) {
    throw Error(ErrorKind::kInconsistent, "Xi_minus numerator degree mismatch");
  }

  RationalFn xm;
  xm.zeros = SqrtPairs(e_roots);
  xm.poles = d;
  xm.gain = 1.0;
  RationalFn fp;
  fp.zeros = SqrtPairs(f_roots);
  fp.poles = d;
  fp.gain = 1.0;
  // γ from phi12 = Ξ₋(s) γ F(-s) / D(-s).
  const RationalFn g = xm * fp.reflect();
  Complex num = 0.0;
  double den = 0.0;
  for (double w : probe_grid()) {
    const Complex s(0.0, -w);
    const Complex gv = g(s);
    num += std::conj(gv) * ps.phi12(s);
    den += std::norm(gv);
  }
  if (den == 0.0) throw Error(ErrorKind::kInconsistent, "degenerate gain probe");
  rec.tf.xi_minus = xm.reduced();
  rec.tf.xi_plus = fp.scaled(num / den).reduced();
  rec.spectrum_residual = SpectrumGap(spectrum_components(rec.tf), ps);
  if (rec.spectrum_residual > 1e-6) {
    throw Error(ErrorKind::kInconsistent,
                "reconstructed transfer function does not reproduce the spectrum");
  }
  return rec;
}

TransferFunctionSISO reconstruct_tf(const PowerSpectrumSISO& ps) {
  return reconstruct_tf_traced(ps).tf;
}

EntangledSpectrumBlocks entangled_blocks(const TransferFunctionSISO& tf,
                                         Complex N2, Complex M2) {
  EntangledSpectrumBlocks b;
  b.N2 = N2;
  b.M2 = M2;
  // Ψ₂₁(s) = N₂ Ξ₋(-s#)# + M₂ Ξ₊(-s#)#.
  b.block21 = tf.xi_minus.reflect().vee().scaled(N2) +
              tf.xi_plus.reflect().vee().scaled(M2);
  b.block14 = tf.xi_minus.scaled(M2) + tf.xi_plus.scaled(N2);
  return b;
}

TransferFunctionSISO entangled_identify(const EntangledSpectrumBlocks& blocks,
                                        double tol) {
  const Complex n2 = blocks.N2;
  const Complex m2 = blocks.M2;
  const double det = std::norm(n2) - std::norm(m2);
  if (std::abs(std::abs(n2) - std::abs(m2)) <=
      tol * std::max({1.0, std::abs(n2), std::abs(m2)})) {
    throw Error(ErrorKind::kSingularInput, "|N2| = |M2|");
  }
  // h(s) = Ψ₂₁(-s#)# = N₂# Ξ₋(s) + M₂# Ξ₊(s).
  const RationalFn h = blocks.block21.vee().reflect();
  TransferFunctionSISO tf;
  tf.xi_minus = (h.scaled(n2) + blocks.block14.scaled(-std::conj(m2)))
                    .scaled(1.0 / det);
  tf.xi_plus = (h.scaled(-m2) + blocks.block14.scaled(std::conj(n2)))
                   .scaled(1.0 / det);
  return tf.reduced();
}

}  // namespace qls
