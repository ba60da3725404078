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

// Independent reference computations shared by the tests. Nothing here
// calls into the library except to read its types.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using M2 = Eigen::Matrix2cd;

inline M2 rot_x(double t) {
  M2 m;
  m << std::cos(t / 2), C(0, -std::sin(t / 2)), C(0, -std::sin(t / 2)), std::cos(t / 2);
  return m;
}

inline M2 rot_z(double t) {
  M2 m;
  m << std::polar(1.0, -t / 2), 0.0, 0.0, std::polar(1.0, t / 2);
  return m;
}

/// |<1| U |0>|^2.
inline double p_one(const M2& u) { return std::norm(u(1, 0)); }

inline int weight(std::uint32_t x) { return std::popcount(x); }

inline int mod_p(std::uint32_t x, int p, int j) { return weight(x) % p == j ? 0 : 1; }

/// ANF coefficient of the monomial S by the subset sum over T within S.
inline int anf_coefficient(const std::vector<int>& table, std::uint32_t s) {
  int acc = 0;
  for (std::uint32_t t = s;; t = (t - 1) & s) {
    acc ^= table[t];
    if (t == 0) break;
  }
  return acc;
}

/// 2^n f_hat(k) by the defining sum.
inline long walsh(const std::vector<int>& table, std::uint32_t k) {
  long acc = 0;
  for (std::uint32_t x = 0; x < table.size(); ++x) {
    acc += ((table[x] + std::popcount(k & x)) & 1) ? -1 : 1;
  }
  return acc;
}

inline std::vector<int> random_table(int n, std::mt19937_64& rng) {
  std::vector<int> t(std::size_t{1} << n);
  for (auto& v : t) v = static_cast<int>(rng() & 1);
  return t;
}

}  // namespace oracle
