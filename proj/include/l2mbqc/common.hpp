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

#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace l2mbqc {

/// Input bit string. Bit x_1 is the least significant bit; x_k is bit k-1.
using Bits = std::uint32_t;

/// Largest arity accepted by table-based operations.
constexpr int kMaxArity = 20;

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

inline int popcount(Bits x) { return std::popcount(x); }

/// Mod-2 inner product of two masks.
inline int dot2(Bits a, Bits b) { return std::popcount(a & b) & 1; }

class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Failures of the QSP pipeline (singular systems, completion, peeling).
class SynthesisError : public std::runtime_error {
 public:
  explicit SynthesisError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Malformed or inconsistent measurement schedule.
class ScheduleError : public std::runtime_error {
 public:
  explicit ScheduleError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Instance exceeds a simulator or table-size cap.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what)
      : std::runtime_error(what) {}
};

/// R_X(t) = exp(-i t X / 2).
Mat2 rx(double theta);
/// R_Z(t) = exp(-i t Z / 2).
Mat2 rz(double theta);
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

/// |tr(U^dagger V)| / 2; equals 1 iff U and V agree up to a global phase.
double phase_overlap(const Mat2& u, const Mat2& v);

/// Text form of num*pi/den such as "2pi/5", "-pi/3" or "0".
std::string pi_tag(std::int64_t num, std::int64_t den);

/// True if theta is an integer multiple of pi within tol.
bool is_pi_multiple(double theta, double tol = 1e-12);

}  // namespace l2mbqc
