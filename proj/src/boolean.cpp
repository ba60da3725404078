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

#include "l2mbqc/boolean.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace l2mbqc {

namespace {

void check_arity(int n) {
  if (n < 0 || n > kMaxArity) {
    throw InvalidArgument("arity " + std::to_string(n) +
                          " outside [0, " + std::to_string(kMaxArity) + "]");
  }
}

std::vector<std::uint64_t> pack(const std::vector<std::uint8_t>& bits) {
  std::vector<std::uint64_t> words((bits.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw InvalidArgument("truth-table entries must be 0 or 1");
    if (bits[i]) words[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return words;
}

}  // namespace

BooleanFunction BooleanFunction::from_table(
    int n, const std::vector<std::uint8_t>& table, std::string kind,
    std::map<std::string, int> params) {
  check_arity(n);
  if (table.size() != (std::size_t{1} << n)) {
    throw InvalidArgument("truth table has " + std::to_string(table.size()) +
                          " entries, expected 2^" + std::to_string(n));
  }
  BooleanFunction f;
  f.n_ = n;
  f.words_ = pack(table);
  f.kind_ = std::move(kind);
  f.params_ = std::move(params);
  f.detect_profile();
  return f;
}

BooleanFunction BooleanFunction::from_profile(
    int n, const std::vector<std::uint8_t>& profile, std::string kind,
    std::map<std::string, int> params) {
  check_arity(n);
  if (profile.size() != static_cast<std::size_t>(n) + 1) {
    throw InvalidArgument("profile needs n+1 entries");
  }
  std::vector<std::uint8_t> table(std::size_t{1} << n);
  for (std::size_t x = 0; x < table.size(); ++x) {
    table[x] = profile[popcount(static_cast<Bits>(x))];
  }
  return from_table(n, table, std::move(kind), std::move(params));
}

void BooleanFunction::detect_profile() {
  std::vector<int> prof(n_ + 1, -1);
  for (std::size_t x = 0; x < size(); ++x) {
    const int w = popcount(static_cast<Bits>(x));
    const int v = static_cast<int>((words_[x / 64] >> (x % 64)) & 1);
    if (prof[w] == -1) {
      prof[w] = v;
    } else if (prof[w] != v) {
      profile_.reset();
      return;
    }
  }
  profile_ = std::vector<std::uint8_t>(prof.begin(), prof.end());
}

int BooleanFunction::evaluate(Bits x) const {
  if (n_ < 32 && (x >> n_) != 0) {
    throw InvalidArgument("input has bits beyond arity " + std::to_string(n_));
  }
  return static_cast<int>((words_[x / 64] >> (x % 64)) & 1);
}

std::string BooleanFunction::table_hex() const {
  const std::size_t nibbles = std::max<std::size_t>(1, (size() + 3) / 4);
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::size_t k = nibbles; k-- > 0;) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t i = 4 * k + b;
      if (i < size() && ((words_[i / 64] >> (i % 64)) & 1)) v |= 1 << b;
    }
    out.push_back(digits[v]);
  }
  return out;
}

BooleanFunction function_from_hex(int n, const std::string& hex,
                                  std::string kind,
                                  std::map<std::string, int> params) {
  check_arity(n);
  const std::size_t size = std::size_t{1} << n;
  const std::size_t nibbles = std::max<std::size_t>(1, (size + 3) / 4);
  if (hex.size() != nibbles) {
    throw InvalidArgument("table_hex has " + std::to_string(hex.size()) +
                          " digits, expected " + std::to_string(nibbles));
  }
  std::vector<std::uint8_t> table(size, 0);
  for (std::size_t k = 0; k < nibbles; ++k) {
    const char c = hex[nibbles - 1 - k];
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw InvalidArgument(std::string("bad hex digit '") + c + "'");
    }
    for (int b = 0; b < 4; ++b) {
      const std::size_t i = 4 * k + b;
      if ((v >> b) & 1) {
        if (i >= size) throw InvalidArgument("table_hex sets bits beyond 2^n");
        table[i] = 1;
      }
    }
  }
  return BooleanFunction::from_table(n, table, std::move(kind),
                                     std::move(params));
}

namespace {

BooleanFunction symmetric(int n, const std::string& kind,
                          std::map<std::string, int> params,
                          int (*rule)(int w, int n, int a, int b), int a = 0,
                          int b = 0) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  check_arity(n);
  std::vector<std::uint8_t> profile(n + 1);
  for (int w = 0; w <= n; ++w) profile[w] = static_cast<std::uint8_t>(rule(w, n, a, b));
  return BooleanFunction::from_profile(n, profile, kind, std::move(params));
}

}  // namespace

BooleanFunction make_constant(int n, int b) {
  if (b != 0 && b != 1) throw InvalidArgument("constant must be 0 or 1");
  return symmetric(n, "constant", {{"b", b}},
                   [](int, int, int v, int) { return v; }, b);
}

BooleanFunction make_and(int n) {
  return symmetric(n, "and", {}, [](int w, int m, int, int) { return int(w == m); });
}

BooleanFunction make_or(int n) {
  return symmetric(n, "or", {}, [](int w, int, int, int) { return int(w > 0); });
}

BooleanFunction make_parity(int n) {
  return symmetric(n, "parity", {}, [](int w, int, int, int) { return w & 1; });
}

BooleanFunction make_pairwise_and(int n) {
  return symmetric(n, "pairwise_and", {},
                   [](int w, int, int, int) { return (w >> 1) & 1; });
}

BooleanFunction make_mod_p(int n, int p, int j) {
  if (p < 3 || p % 2 == 0) {
    throw InvalidArgument("mod_p needs an odd modulus p >= 3");
  }
  if (j < 0 || j >= p) throw InvalidArgument("mod_p needs 0 <= j < p");
  return symmetric(n, "mod_p", {{"p", p}, {"j", j}},
                   [](int w, int, int pp, int jj) { return int(w % pp != jj); },
                   p, j);
}

BooleanFunction build_function(const std::string& spec, int n) {
  auto starts = [&](const char* s) { return spec.rfind(s, 0) == 0; };
  if (spec == "and") return make_and(n);
  if (spec == "or") return make_or(n);
  if (spec == "parity") return make_parity(n);
  if (spec == "c2" || spec == "pairwise_and") return make_pairwise_and(n);
  if (spec == "const0") return make_constant(n, 0);
  if (spec == "const1") return make_constant(n, 1);
  if (starts("sym:")) {
    const std::string bits = spec.substr(4);
    std::vector<std::uint8_t> profile;
    for (char c : bits) {
      if (c != '0' && c != '1') throw InvalidArgument("bad profile '" + bits + "'");
      profile.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BooleanFunction::from_profile(n, profile);
  }
  if (starts("hex:")) return function_from_hex(n, spec.substr(4));
  if (starts("mod")) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos || colon == 3) {
      throw InvalidArgument("expected mod<p>:<j>, got '" + spec + "'");
    }
    char* end = nullptr;
    const std::string ps = spec.substr(3, colon - 3);
    const std::string js = spec.substr(colon + 1);
    const long p = std::strtol(ps.c_str(), &end, 10);
    if (*end != '\0') throw InvalidArgument("bad modulus in '" + spec + "'");
    const long j = std::strtol(js.c_str(), &end, 10);
    if (*end != '\0' || js.empty()) throw InvalidArgument("bad residue in '" + spec + "'");
    return make_mod_p(n, static_cast<int>(p), static_cast<int>(j));
  }
  throw InvalidArgument("unknown function '" + spec + "'");
}

int AnfPolynomial::degree() const {
  int d = 0;
  for (Bits m : monomials) d = std::max(d, popcount(m));
  return d;
}

int AnfPolynomial::evaluate(Bits x) const {
  int v = 0;
  for (Bits m : monomials) v ^= int((x & m) == m);
  return v;
}

bool AnfPolynomial::contains(Bits mask) const {
  return std::binary_search(monomials.begin(), monomials.end(), mask);
}

AnfPolynomial anf(const BooleanFunction& f) {
  std::vector<std::uint8_t> c(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) c[x] = static_cast<std::uint8_t>(f(static_cast<Bits>(x)));
  for (int i = 0; i < f.n(); ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (x & bit) c[x] ^= c[x ^ bit];
    }
  }
  AnfPolynomial p;
  p.n = f.n();
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (c[x]) p.monomials.push_back(static_cast<Bits>(x));
  }
  return p;
}

std::vector<std::int64_t> walsh_spectrum(const BooleanFunction& f) {
  std::vector<std::int64_t> v(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) v[x] = f(static_cast<Bits>(x)) ? -1 : 1;
  for (std::size_t h = 1; h < v.size(); h <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += 2 * h) {
      for (std::size_t k = i; k < i + h; ++k) {
        const std::int64_t a = v[k], b = v[k + h];
        v[k] = a + b;
        v[k + h] = a - b;
      }
    }
  }
  return v;
}

double walsh_hadamard(const BooleanFunction& f, Bits k) {
  if (f.n() < 32 && (k >> f.n()) != 0) {
    throw InvalidArgument("frequency has bits beyond arity");
  }
  std::int64_t s = 0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    s += (f(static_cast<Bits>(x)) ^ dot2(k, static_cast<Bits>(x))) ? -1 : 1;
  }
  return std::ldexp(static_cast<double>(s), -f.n());
}

double f_max(const BooleanFunction& f) {
  std::int64_t best = 0;
  for (std::int64_t v : walsh_spectrum(f)) best = std::max(best, std::abs(v));
  return std::ldexp(static_cast<double>(best), -f.n());
}

double nchvm_bound(const BooleanFunction& f) { return (1.0 + f_max(f)) / 2.0; }

ModPAnfCoefficients mod_p_anf_coeffs(int p, int n) {
  if (p < 3 || p % 2 == 0) throw InvalidArgument("p must be odd and >= 3");
  if (n < 1) throw InvalidArgument("n must be >= 1");
  ModPAnfCoefficients out;
  out.p = p;
  out.n = n;
  std::vector<std::uint8_t> a(p, 1);
  a[0] = 0;
  out.a.push_back(a);
  for (int mu = 0; mu < n; ++mu) {
    std::vector<std::uint8_t> next(p);
    for (int j = 0; j < p; ++j) next[j] = a[j] ^ a[(j + p - 1) % p];
    a = next;
    out.a.push_back(a);
  }
  return out;
}

AnfPolynomial ModPAnfCoefficients::anf_for(int j) const {
  if (j < 0 || j >= p) throw InvalidArgument("residue out of range");
  check_arity(n);
  AnfPolynomial poly;
  poly.n = n;
  for (Bits m = 0; m < (Bits{1} << n); ++m) {
    if (a[popcount(m)][j]) poly.monomials.push_back(m);
  }
  return poly;
}

}  // namespace l2mbqc
