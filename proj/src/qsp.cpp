// Copyright 2026 The l2mbqc Authors
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

#include "l2mbqc/qsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/constants/constants.hpp>
#include <boost/math/tools/polynomial.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace l2mbqc {

namespace {

using CQuad = boost::multiprecision::cpp_complex_quad;
using QuadPoly = boost::math::tools::polynomial<Quad>;
using QuadMatrix = Eigen::Matrix<Quad, Eigen::Dynamic, Eigen::Dynamic>;
using QuadVector = Eigen::Matrix<Quad, Eigen::Dynamic, 1>;

const Quad kPi = boost::math::constants::pi<Quad>();

Quad quad_angle(const Rational& r) {
  return kPi * Quad(r.numerator()) / Quad(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

struct QuadMat2 {
  CQuad m[2][2];
};

QuadMat2 zero2() {
  QuadMat2 z;
  for (auto& row : z.m)
    for (auto& e : row) e = CQuad(0);
  return z;
}

QuadMat2 mul(const QuadMat2& x, const QuadMat2& y) {
  QuadMat2 r = zero2();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) r.m[i][j] += x.m[i][k] * y.m[k][j];
  return r;
}

Quad max_abs(const QuadMat2& x) {
  Quad best = 0;
  for (const auto& row : x.m)
    for (const auto& e : row) best = std::max(best, Quad(abs(e)));
  return best;
}

/// Simultaneous Aberth iteration; coefficients in ascending degree.
std::vector<CQuad> aberth_roots(std::vector<CQuad> c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return {};
  const CQuad lead = c[n];
  for (auto& v : c) v /= lead;
  Quad radius = pow(Quad(abs(c[0])), Quad(1) / n);
  if (radius == 0) radius = 1;
  std::vector<CQuad> z(n);
  for (int k = 0; k < n; ++k) {
    const Quad t = 2 * kPi * k / n + Quad(0.4);
    z[k] = CQuad(radius * cos(t), radius * sin(t));
  }
  const Quad tol = Quad(1e-31);
  for (int iter = 0; iter < 2000; ++iter) {
    Quad worst = 0;
    for (int k = 0; k < n; ++k) {
      CQuad p = c[n], dp = 0;
      for (int i = n - 1; i >= 0; --i) {
        dp = dp * z[k] + p;
        p = p * z[k] + c[i];
      }
      if (abs(p) == 0) continue;
      const CQuad ratio = p / dp;
      CQuad s = 0;
      for (int i = 0; i < n; ++i) {
        if (i != k) s += CQuad(1) / (z[k] - z[i]);
      }
      const CQuad step = ratio / (CQuad(1) - ratio * s);
      z[k] -= step;
      worst = std::max(worst, Quad(abs(step) / std::max(Quad(1), Quad(abs(z[k])))));
    }
    if (worst < tol) break;
  }
  return z;
}

/// Coefficients r_m of 1 - A^2 - B^2 = sum_m r_m cos(m phi).
std::vector<Quad> remainder_series(const LaurentPair& pr) {
  const int L = pr.L;
  std::vector<Quad> r(L + 1, Quad(0));
  r[0] = 1;
  for (int j = 1; j <= L; j += 2) {
    for (int k = 1; k <= L; k += 2) {
      const Quad aa = pr.a[j] * pr.a[k] / 2;
      const Quad bb = pr.b[j] * pr.b[k] / 2;
      const int lo = std::abs(j - k) / 2, hi = (j + k) / 2;
      r[lo] -= aa + bb;
      r[hi] -= aa - bb;
    }
  }
  return r;
}

/// Spectral factor g (degree L, real coefficients, ascending) with
/// |g(e^{i phi})|^2 = 1 - A^2 - B^2.
std::vector<Quad> spectral_factor(const LaurentPair& pr) {
  const int L = pr.L;
  const std::vector<Quad> r = remainder_series(pr);
  Quad scale = 0;
  for (const auto& v : r) scale = std::max(scale, Quad(abs(v)));
  if (scale < Quad(1e-28)) return std::vector<Quad>(L + 1, Quad(0));

  std::vector<Quad> full(2 * L + 1, Quad(0));
  full[L] = r[0];
  for (int m = 1; m <= L; ++m) {
    full[L + m] = r[m] / 2;
    full[L - m] = r[m] / 2;
  }
  QuadPoly poly(full.begin(), full.end());
  const int K = pr.root_order;
  if (K > 0) {
    std::vector<Quad> dc(2 * K + 1, Quad(0));
    dc[0] = 1;
    dc[K] = -2;
    dc[2 * K] = 1;
    auto [quot, rem] = boost::math::tools::quotient_remainder(
        poly, QuadPoly(dc.begin(), dc.end()));
    Quad rem_max = 0;
    for (std::size_t i = 0; i < rem.size(); ++i) rem_max = std::max(rem_max, Quad(abs(rem[i])));
    if (rem_max > Quad(1e-20) * scale) {
      throw SynthesisError("remainder polynomial lacks the expected double roots on the grid");
    }
    poly = quot;
  }
  std::vector<Quad> q(poly.data().begin(), poly.data().end());
  const int d = 2 * L - 2 * K;
  q.resize(d + 1, Quad(0));

  Quad qmax = 0;
  for (const auto& v : q) qmax = std::max(qmax, Quad(abs(v)));
  int zeros = 0;
  while (2 * zeros < d && abs(q[zeros]) < Quad(1e-26) * qmax) ++zeros;
  std::vector<CQuad> reduced;
  for (int i = zeros; i <= d - zeros; ++i) reduced.emplace_back(q[i]);
  const std::vector<CQuad> roots = aberth_roots(reduced);

  std::vector<CQuad> chosen;
  std::vector<CQuad> circle;
  const Quad band = Quad(1e-9);
  for (const auto& z : roots) {
    const Quad m = abs(z);
    if (m < 1 - band) {
      chosen.push_back(z);
    } else if (m <= 1 + band) {
      circle.push_back(z);
    }
  }
  if (circle.size() % 2 != 0) throw SynthesisError("unpaired root on the unit circle");
  std::vector<bool> used(circle.size(), false);
  for (std::size_t i = 0; i < circle.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t best = circle.size();
    Quad best_d = 0;
    for (std::size_t k = i + 1; k < circle.size(); ++k) {
      if (used[k]) continue;
      const Quad dist = abs(circle[i] - circle[k]);
      if (best == circle.size() || dist < best_d) {
        best = k;
        best_d = dist;
      }
    }
    used[best] = true;
    const CQuad mid = (circle[i] + circle[best]) / Quad(2);
    chosen.push_back(mid / Quad(abs(mid)));
  }
  if (static_cast<int>(chosen.size()) * 2 != d - 2 * zeros) {
    throw SynthesisError("root pairing failed: remainder is negative somewhere on the circle");
  }

  // g~(u) = u^zeros (u^K - 1) prod (u - r).
  std::vector<CQuad> g(1, CQuad(1));
  auto times_linear = [&g](const CQuad& root) {
    std::vector<CQuad> ng(g.size() + 1, CQuad(0));
    for (std::size_t i = 0; i < g.size(); ++i) {
      ng[i + 1] += g[i];
      ng[i] -= g[i] * root;
    }
    g = std::move(ng);
  };
  for (const auto& root : chosen) times_linear(root);
  for (int i = 0; i < zeros; ++i) times_linear(CQuad(0));
  if (K > 0) {
    std::vector<CQuad> ng(g.size() + K, CQuad(0));
    for (std::size_t i = 0; i < g.size(); ++i) {
      ng[i + K] += g[i];
      ng[i] -= g[i];
    }
    g = std::move(ng);
  }

  // Normalize at the circle point where R is largest.
  Quad best_r = -1, best_t = 0;
  for (int s = 0; s < 257; ++s) {
    const Quad t = 2 * kPi * s / 257;
    Quad v = r[0];
    for (int m = 1; m <= L; ++m) v += r[m] * cos(m * t);
    if (v > best_r) {
      best_r = v;
      best_t = t;
    }
  }
  const CQuad u0(cos(best_t), sin(best_t));
  CQuad gv = 0;
  for (auto it = g.rbegin(); it != g.rend(); ++it) gv = gv * u0 + *it;
  const Quad c = sqrt(best_r) / Quad(abs(gv));
  std::vector<Quad> out(L + 1);
  for (int k = 0; k <= L; ++k) out[k] = c * g[k].real();
  return out;
}

}  // namespace

double QspTarget::angle(std::size_t w) const { return std::numbers::pi * to_double(grid.at(w)); }

QspTarget symmetric_target(const BooleanFunction& f) {
  if (!f.is_symmetric()) throw InvalidArgument("symmetric QSP needs a symmetric function");
  const int n = f.n();
  const auto& prof = *f.symmetric_profile();
  QspTarget t;
  t.L = 4 * n + 1;
  t.root_order = 2 * n + 1;
  for (int w = 0; w <= n; ++w) {
    t.grid.emplace_back(2 * w, 2 * n + 1);
    t.bits.push_back(prof[w] ^ prof[0]);
  }
  return t;
}

QspTarget mod_p_target(int p) {
  if (p < 3 || p % 2 == 0) throw InvalidArgument("p must be an odd integer >= 3");
  QspTarget t;
  t.L = 2 * p - 1;
  t.root_order = p;
  for (int w = 0; w <= (p - 1) / 2; ++w) {
    t.grid.emplace_back(4 * w, p);
    t.bits.push_back(w == 0 ? 0 : 1);
  }
  return t;
}

double LaurentPair::A(double phi) const {
  double s = 0;
  for (int j = 1; j <= L; j += 2) s += static_cast<double>(a[j]) * std::cos(j * phi / 2);
  return s;
}

double LaurentPair::B(double phi) const {
  double s = 0;
  for (int j = 1; j <= L; j += 2) s += static_cast<double>(b[j]) * std::sin(j * phi / 2);
  return s;
}

bool LaurentPair::structure_ok() const {
  if (static_cast<int>(a.size()) != L + 1 || static_cast<int>(b.size()) != L + 1) return false;
  for (int j = 0; j <= L; ++j) {
    if ((j - L) % 2 != 0 && (a[j] != 0 || b[j] != 0)) return false;
  }
  return true;
}

double LaurentPair::min_remainder(int samples) const {
  double best = 1.0;
  for (int s = 0; s < samples; ++s) {
    const double phi = 4 * std::numbers::pi * s / samples;
    const double av = A(phi), bv = B(phi);
    best = std::min(best, 1 - av * av - bv * bv);
  }
  return best;
}

LaurentPair solve_coeffs(const QspTarget& t) {
  if (t.L < 1 || t.L % 2 == 0) throw InvalidArgument("L must be odd and positive");
  if (t.grid.size() != t.bits.size()) throw InvalidArgument("grid and bits differ in length");
  for (std::size_t i = 0; i < t.grid.size(); ++i) {
    for (std::size_t k = i + 1; k < t.grid.size(); ++k) {
      const Rational diff = (t.grid[i] - t.grid[k]) / Rational(4);
      if (diff.denominator() == 1) {
        throw InvalidArgument("grid angles coincide modulo 4 pi");
      }
    }
  }
  const int m = (t.L + 1) / 2;
  std::vector<std::vector<Quad>> ra, rb;
  std::vector<Quad> va, vb;
  for (std::size_t w = 0; w < t.grid.size(); ++w) {
    const Quad phi = quad_angle(t.grid[w]);
    const bool origin = t.grid[w].numerator() == 0;
    std::vector<Quad> cosr, dcos, sinr, dsin;
    for (int j = 1; j <= t.L; j += 2) {
      const Quad c = cos(j * phi / 2), s = sin(j * phi / 2);
      cosr.push_back(c);
      dcos.push_back(-Quad(j) * s / 2);
      sinr.push_back(s);
      dsin.push_back(Quad(j) * c / 2);
    }
    ra.push_back(cosr);
    va.emplace_back(1 - t.bits[w]);
    if (!origin) {
      ra.push_back(dcos);
      va.emplace_back(0);
      rb.push_back(sinr);
      vb.emplace_back(t.bits[w]);
    }
    rb.push_back(dsin);
    vb.emplace_back(0);
  }
  if (static_cast<int>(ra.size()) != m || static_cast<int>(rb.size()) != m) {
    throw InvalidArgument("grid size does not determine the coefficients for this L");
  }
  LaurentPair out;
  out.L = t.L;
  out.root_order = t.root_order;
  out.a.assign(t.L + 1, Quad(0));
  out.b.assign(t.L + 1, Quad(0));
  double residual = 0;
  auto solve = [&](const std::vector<std::vector<Quad>>& rows, const std::vector<Quad>& rhs,
                   std::vector<Quad>& dest, const char* name) {
    QuadMatrix M(m, m);
    QuadVector v(m);
    for (int i = 0; i < m; ++i) {
      v(i) = rhs[i];
      for (int k = 0; k < m; ++k) M(i, k) = rows[i][k];
    }
    Eigen::FullPivLU<QuadMatrix> lu(M);
    if (!lu.isInvertible()) {
      // Pivot spread stands in for the condition number.
      const auto diag = lu.matrixLU().diagonal().cwiseAbs();
      const double spread = static_cast<double>(diag.maxCoeff() / diag.minCoeff());
      throw SynthesisError(std::string("singular ") + name + " system (pivot ratio " +
                           std::to_string(spread) + ")");
    }
    const QuadVector x = lu.solve(v);
    const QuadVector res = M * x - v;
    for (int i = 0; i < m; ++i) {
      residual = std::max(residual, static_cast<double>(abs(res(i))));
      dest[2 * i + 1] = x(i);
    }
  };
  solve(ra, va, out.a, "A");
  solve(rb, vb, out.b, "B");
  out.residual = residual;
  return out;
}

LaurentPair solve_symmetric_coeffs(const BooleanFunction& f) {
  return solve_coeffs(symmetric_target(f));
}

LaurentPair solve_mod_p_coeffs(int p, int j) {
  if (j < 0 || j >= p) throw InvalidArgument("need 0 <= j < p");
  return solve_coeffs(mod_p_target(p));
}

QspAngles complete_and_extract_angles(const LaurentPair& pr) {
  if (!pr.structure_ok()) throw InvalidArgument("coefficient vectors violate parity");
  if (pr.min_remainder() < -1e-12) {
    throw SynthesisError("1 - A^2 - B^2 is negative on the circle");
  }
  const int L = pr.L;
  const std::vector<Quad> g = spectral_factor(pr);

  // Laurent coefficients in z = exp(i phi / 2), index e + L for e in [-L, L].
  const int span = 2 * L + 1;
  std::vector<CQuad> A(span, CQuad(0)), B(span, CQuad(0)), G(span, CQuad(0));
  const CQuad I(0, 1);
  for (int j = 1; j <= L; j += 2) {
    A[L + j] = A[L - j] = CQuad(pr.a[j] / 2);
    B[L + j] = -I * (pr.b[j] / 2);
    B[L - j] = I * (pr.b[j] / 2);
  }
  for (int k = 0; k <= L; ++k) G[L + 2 * k - L] = CQuad(g[k]);
  std::vector<QuadMat2> U(span);
  for (int e = -L; e <= L; ++e) {
    const CQuad d = (G[L + e] + G[L - e]) / Quad(2);
    const CQuad c = -I * ((G[L + e] - G[L - e]) / Quad(2));
    const CQuad a = A[L + e], b = B[L + e];
    U[L + e].m[0][0] = a + I * d;
    U[L + e].m[1][1] = a - I * d;
    U[L + e].m[0][1] = I * b + c;
    U[L + e].m[1][0] = I * b - c;
  }

  std::vector<double> xi;
  const Quad vanish = Quad(1e-22);
  int step = L;
  while (step > 0) {
    const QuadMat2& top = U[L + step];
    const QuadMat2& bot = U[L - step];
    const bool use_top = max_abs(top) > vanish;
    if (!use_top && max_abs(bot) <= vanish) {
      if (step < 2) throw SynthesisError("peeling stalled at the last layer");
      xi.push_back(0.0);
      xi.push_back(std::numbers::pi);
      step -= 2;
      continue;
    }
    const QuadMat2& lead = use_top ? top : bot;
    const Quad n0 = abs(lead.m[0][0]) + abs(lead.m[1][0]);
    const Quad n1 = abs(lead.m[0][1]) + abs(lead.m[1][1]);
    const int col = n0 >= n1 ? 0 : 1;
    const CQuad v0 = lead.m[0][col], v1 = lead.m[1][col];
    const CQuad ratio = v1 * conj(v0);
    const Quad angle = use_top ? Quad(arg(-ratio)) : Quad(arg(ratio));
    xi.push_back(static_cast<double>(angle));

    QuadMat2 P = zero2();
    P.m[0][1] = CQuad(cos(angle), -sin(angle));
    P.m[1][0] = CQuad(cos(angle), sin(angle));
    QuadMat2 minus = zero2(), plus = zero2();
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < 2; ++k) {
        const CQuad id = i == k ? CQuad(1) : CQuad(0);
        minus.m[i][k] = (id - P.m[i][k]) / Quad(2);
        plus.m[i][k] = (id + P.m[i][k]) / Quad(2);
      }
    }
    std::vector<QuadMat2> next(span, zero2());
    Quad leak = 0;
    for (int e = -step; e <= step; ++e) {
      const QuadMat2 lo = mul(minus, U[L + e]);
      const QuadMat2 hi = mul(plus, U[L + e]);
      for (const auto& [shift, term] : {std::pair{e - 1, lo}, std::pair{e + 1, hi}}) {
        if (std::abs(shift) > step - 1) {
          leak = std::max(leak, max_abs(term));
          continue;
        }
        for (int i = 0; i < 2; ++i)
          for (int k = 0; k < 2; ++k) next[L + shift].m[i][k] += term.m[i][k];
      }
    }
    if (leak > Quad(1e-12)) {
      throw SynthesisError("peeling left a nonzero leading coefficient");
    }
    U = std::move(next);
    --step;
  }
  const QuadMat2& rest = U[L];
  if (abs(rest.m[0][1]) > Quad(1e-12) || abs(rest.m[1][0]) > Quad(1e-12)) {
    throw SynthesisError("peeled remainder is not diagonal");
  }
  QspAngles out;
  out.L = L;
  out.xi.push_back(static_cast<double>(Quad(arg(rest.m[1][1] * conj(rest.m[0][0])))));
  out.xi.insert(out.xi.end(), xi.begin(), xi.end());
  out.residual = pair_match_residual(pr, out);
  return out;
}

Mat2 reconstruct_unitary(const QspAngles& angles, double phi, bool with_trailing) {
  Mat2 u = Mat2::Identity();
  const Mat2 x = rx(phi);
  for (int k = 1; k <= angles.L; ++k) {
    u = u * rz(angles.xi[k]) * x * rz(-angles.xi[k]);
  }
  if (with_trailing && !angles.xi.empty()) u = u * rz(angles.xi[0]);
  return u;
}

double pair_match_residual(const LaurentPair& pr, const QspAngles& angles, int samples) {
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    const double phi = 4 * std::numbers::pi * s / samples;
    const Mat2 u = reconstruct_unitary(angles, phi);
    worst = std::max(worst, std::abs(u(0, 0).real() - pr.A(phi)));
    worst = std::max(worst, std::abs(u(0, 1).imag() - pr.B(phi)));
  }
  return worst;
}

double mod_p_signal(int p, int j, int w) {
  return 4 * std::numbers::pi * (w - j) / p;
}

double symmetric_signal(int n, int w) { return 2 * std::numbers::pi * w / (2 * n + 1); }

double verify_qsp(const QspAngles& angles, int p, int j, int n) {
  double worst = 0;
  for (int w = 0; w <= n; ++w) {
    const int bit = ((w - j) % p == 0) ? 0 : 1;
    const Mat2 u = reconstruct_unitary(angles, mod_p_signal(p, j, w), false);
    worst = std::max(worst, 1 - std::norm(u(bit, 0)));
  }
  return worst;
}

double verify_symmetric(const QspAngles& angles) {
  if (angles.is_mod_p() || angles.profile.empty()) {
    throw InvalidArgument("angles carry no symmetric profile");
  }
  const int n = static_cast<int>(angles.profile.size()) - 1;
  double worst = 0;
  for (int w = 0; w <= n; ++w) {
    const int bit = angles.profile[w] ^ angles.flip();
    const Mat2 u = reconstruct_unitary(angles, symmetric_signal(n, w), false);
    worst = std::max(worst, 1 - std::norm(u(bit, 0)));
  }
  return worst;
}

QspAngles synthesize_mod_p(int p, int j) {
  QspAngles a = complete_and_extract_angles(solve_mod_p_coeffs(p, j));
  a.p = p;
  a.j = j;
  return a;
}

QspAngles synthesize_symmetric(const BooleanFunction& f) {
  QspAngles a = complete_and_extract_angles(solve_symmetric_coeffs(f));
  a.profile = *f.symmetric_profile();
  return a;
}

}  // namespace l2mbqc
