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

#include "l2mbqc/common.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace l2mbqc {

Mat2 rx(double theta) {
  Mat2 m;
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  m << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
  return m;
}

Mat2 rz(double theta) {
  Mat2 m;
  m << std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2);
  return m;
}

Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 pauli_y() {
  Mat2 m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

double phase_overlap(const Mat2& u, const Mat2& v) {
  return std::abs((u.adjoint() * v).trace()) / 2.0;
}

std::string pi_tag(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("zero denominator in pi_tag");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (num == 0) return "0";
  num /= g;
  den /= g;
  std::string out = num < 0 ? "-" : "";
  const std::int64_t mag = num < 0 ? -num : num;
  if (mag != 1) out += std::to_string(mag);
  out += "pi";
  if (den != 1) out += "/" + std::to_string(den);
  return out;
}

bool is_pi_multiple(double theta, double tol) {
  const double k = theta / std::numbers::pi;
  return std::abs(k - std::round(k)) < tol;
}

}  // namespace l2mbqc
