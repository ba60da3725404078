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

#include "l2mbqc/pfd.hpp"

#include <cmath>
#include <numbers>

namespace l2mbqc {

namespace {

constexpr int kMaxPfdArity = 6;

void check_pfd_arity(int n) {
  if (n < 1 || n > kMaxPfdArity) {
    throw InvalidArgument("periodic decompositions need 1 <= n <= 6, got " +
                          std::to_string(n));
  }
}

Bits full_mask(int n) { return (Bits{1} << n) - 1; }

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace

double PeriodicDecomposition::angle(Bits mask) const {
  auto it = angles.find(mask);
  return it == angles.end() ? 0.0 : to_double(it->second);
}

double PeriodicDecomposition::phase(Bits x) const {
  // Sum exactly, then convert: the rational view keeps multiples of pi exact.
  Rational s = 0;
  for (const auto& [mask, phi] : angles) {
    if (dot2(mask, x)) s += phi;
  }
  return std::numbers::pi * to_double(s);
}

Rational sierpinski_inverse_entry(int n, Bits p, Bits y) {
  const Bits full = full_mask(n);
  if (((~p) & (~y) & full) != 0) return Rational(0);
  const int sign = dot2(p, y) ? 1 : -1;
  return Rational(sign, std::int64_t{1} << (popcount(y) - 1));
}

SierpinskiSystem sierpinski_matrix(int n) {
  check_pfd_arity(n);
  SierpinskiSystem s;
  s.n = n;
  for (Bits v = 1; v <= full_mask(n); ++v) s.masks.push_back(v);
  const std::size_t d = s.masks.size();
  s.m.assign(d, std::vector<std::int64_t>(d, 0));
  s.m_inv.assign(d, std::vector<Rational>(d, Rational(0)));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const Bits y = s.masks[r], p = s.masks[c];
      s.m[r][c] = (p & y) ? (std::int64_t{1} << (popcount(y) - 1)) : 0;
      // m_inv is indexed (p, y).
      s.m_inv[r][c] = sierpinski_inverse_entry(n, s.masks[r], s.masks[c]);
    }
  }
  return s;
}

PeriodicDecomposition solve_pfd(const BooleanFunction& f,
                                const std::vector<std::int64_t>& k) {
  const int n = f.n();
  check_pfd_arity(n);
  const std::size_t d = full_mask(n);
  if (!k.empty() && k.size() != d) {
    throw InvalidArgument("offset vector needs 2^n - 1 entries");
  }
  for (std::int64_t v : k) {
    if (v % 2 != 0) throw InvalidArgument("offset vector must have even entries");
  }
  const AnfPolynomial poly = anf(f);
  std::vector<std::int64_t> rhs(d);
  for (Bits y = 1; y <= full_mask(n); ++y) {
    rhs[y - 1] = (poly.contains(y) ? 1 : 0) + (k.empty() ? 0 : k[y - 1]);
  }
  PeriodicDecomposition out;
  out.n = n;
  for (Bits p = 1; p <= full_mask(n); ++p) {
    Rational phi = 0;
    for (Bits y = 1; y <= full_mask(n); ++y) {
      if (rhs[y - 1] != 0) phi += sierpinski_inverse_entry(n, p, y) * rhs[y - 1];
    }
    if (phi.numerator() != 0) out.angles[p] = phi;
  }
  return out;
}

PfdCheck verify_pfd(const BooleanFunction& f, const PeriodicDecomposition& d,
                    double tol) {
  if (d.n != f.n()) throw InvalidArgument("arity mismatch in verify_pfd");
  PfdCheck out;
  const int f0 = f(0);
  for (Bits x = 0; x < f.size(); ++x) {
    const double target = (f(x) ^ f0) ? -1.0 : 1.0;
    out.max_residual = std::max(out.max_residual, std::abs(std::cos(d.phase(x)) - target));
  }
  out.ok = out.max_residual < tol;
  return out;
}

SparsityCertificate sparsity_certificate(const BooleanFunction& f) {
  const int n = f.n();
  const PeriodicDecomposition d = solve_pfd(f);
  SparsityCertificate cert;
  cert.full_degree = anf(f).contains(full_mask(n));
  bool all_odd = true;
  for (Bits p = 1; p <= full_mask(n); ++p) {
    auto it = d.angles.find(p);
    const Rational phi = it == d.angles.end() ? Rational(0) : it->second;
    if (phi.denominator() != 1) ++cert.non_integer_count;
    const Rational scaled = phi * Rational(std::int64_t{1} << (n - 1));
    const bool odd = scaled.denominator() == 1 && (scaled.numerator() % 2 != 0);
    cert.odd_integer.push_back(odd);
    all_odd = all_odd && odd;
  }
  cert.certifies_full_sparsity = cert.full_degree && all_odd;
  return cert;
}

PeriodicDecomposition or_decomposition(int n) {
  check_pfd_arity(n);
  PeriodicDecomposition d;
  d.n = n;
  for (Bits s = 1; s <= full_mask(n); ++s) {
    const int w = popcount(s);
    const std::int64_t num = (std::int64_t{1} << (n - w + 1)) - 1;
    d.angles[s] = Rational(w % 2 ? num : -num, std::int64_t{1} << (n - 1));
  }
  return d;
}

PeriodicDecomposition or_decomposition_demorgan(int n) {
  check_pfd_arity(n);
  PeriodicDecomposition d;
  d.n = n;
  for (Bits s = 1; s <= full_mask(n); ++s) d.angles[s] = Rational(1, std::int64_t{1} << (n - 1));
  return d;
}

PeriodicDecomposition and_decomposition(int n) {
  check_pfd_arity(n);
  PeriodicDecomposition d;
  d.n = n;
  for (Bits s = 1; s <= full_mask(n); ++s) {
    d.angles[s] = Rational(popcount(s) % 2 ? 1 : -1, std::int64_t{1} << (n - 1));
  }
  return d;
}

PeriodicDecomposition pairwise_and_decomposition(int n) {
  check_pfd_arity(n);
  PeriodicDecomposition d;
  d.n = n;
  for (int i = 0; i < n; ++i) d.angles[Bits{1} << i] += Rational(1, 2);
  d.angles[full_mask(n)] -= Rational(1, 2);
  std::erase_if(d.angles, [](const auto& kv) { return kv.second.numerator() == 0; });
  return d;
}

GhzStrategy ghz_strategy(const PeriodicDecomposition& d, int f0) {
  if (f0 != 0 && f0 != 1) throw InvalidArgument("f(0) must be a bit");
  GhzStrategy g;
  g.n = d.n;
  g.c = f0;
  for (const auto& [mask, phi] : d.angles) {
    g.p_rows.push_back(mask);
    g.exact.push_back(phi);
    g.angles.push_back(std::numbers::pi * to_double(phi));
  }
  return g;
}

}  // namespace l2mbqc
