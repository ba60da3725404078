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

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "l2mbqc/boolean.hpp"
#include "l2mbqc/common.hpp"
#include "l2mbqc/pfd.hpp"
#include "l2mbqc/qsp.hpp"

namespace l2mbqc {

enum class Axis { X, Z };

enum class CondType { None, Select, Sign };

/// How a gate's angle depends on the input through l(x) = mask . x.
///   None:   theta
///   Select: theta * l(x)
///   Sign:   theta * (-1)^(l(x) xor bias)
struct Condition {
  CondType type = CondType::None;
  Bits mask = 0;
  int bias = 0;

  bool operator==(const Condition&) const = default;
};

struct Gate {
  Axis axis = Axis::X;
  double theta = 0.0;
  Condition cond;
  /// Optional exact form of theta for audit, e.g. "2pi/5" or "alpha".
  std::string exact;

  double angle_at(Bits x) const;
  Mat2 unitary(Bits x) const;
};

/// Gates in application order: gates[0] acts first on |0>. Readout is Z and
/// the output bit is the readout xor flip.
struct OneQubitProgram {
  int n = 0;
  std::vector<Gate> gates;
  int flip = 0;

  std::size_t size() const { return gates.size(); }
  /// Product U = U_T ... U_1.
  Mat2 unitary(Bits x) const;
};

struct Evaluation {
  Mat2 u;
  /// Distribution of the output bit (after flip).
  double prob[2] = {0.0, 0.0};
  /// Set when one outcome has probability >= 1 - 1e-9.
  std::optional<int> deterministic;
};

Evaluation evaluate(const OneQubitProgram& prog, Bits x);

/// Replaces each select gate by an unconditioned half rotation followed by
/// the sign-conditioned half rotation with bias 1.
OneQubitProgram normalize_sign_form(const OneQubitProgram& prog);

struct Mod3CliffordProgram {
  int n = 0;
  /// exp(i pi (X+Y+Z) / (3 sqrt 3)) from its Euler form.
  Mat2 u_q;
  /// Abstract form: n controlled U_Q^dagger, Z, n controlled U_Q.
  std::size_t abstract_gate_count() const { return 2 * n + 1; }
  Mat2 abstract_unitary(Bits x) const;
  /// X/Z expansion R_X(a) R_Z(2pi|x|/3) R_X(2a)^dag R_Z(2pi|x|/3)^dag R_X(a).
  OneQubitProgram expanded;
};

/// alpha = arccos(1 / sqrt 3).
double mod3_alpha();
Mat2 mod3_u_q();
Mod3CliffordProgram build_mod3_clifford(int n);

/// Per block: n select R_X(4 pi / p) gates (and an R_X(-4 pi j / p) shift
/// when j != 0) between the Z rotations R_Z(xi_{k+1} - xi_k).
OneQubitProgram build_qsp_program(int p, int j, int n, const QspAngles& angles);
/// Per block: n select R_X(2 pi / (2n+1)) gates; flip = f(0).
OneQubitProgram build_symmetric_program(const BooleanFunction& f,
                                        const QspAngles& angles);
/// One select R_X(pi phi_p) per mask.
OneQubitProgram build_commuting_program(const PeriodicDecomposition& d,
                                        int f0 = 0);

/// ceil(log2(n + 1)).
int or_register_count(int n);
/// Program mu (1-based) applies R_X(2 pi |x| / 2^mu).
std::vector<OneQubitProgram> or_reduction_bank(int n);
std::vector<OneQubitProgram> or_reduction_bank(int n, int kappa);
/// Probability that register mu reads 1 at weight w: sin^2(pi w / 2^mu).
double or_register_one_probability(int mu, int w);
/// Smallest w in 1..n whose counter string is 0 with nonzero probability
/// under kappa registers, if any.
std::optional<int> or_reduction_alias(int n, int kappa);

struct CircuitGate {
  std::string name;
  /// Target qubit for single-qubit gates; -1 for a dense register gate.
  int target = -1;
  Mat2 single = Mat2::Identity();
  Eigen::MatrixXcd dense;
  /// Input bit (0-based) the gate is conditioned on, or -1.
  int control_bit = -1;
};

/// Gates in application order on kappa qubits; qubit t is bit t of the
/// basis index.
struct MultiQubitCircuit {
  int qubits = 0;
  std::vector<CircuitGate> gates;

  Eigen::MatrixXcd unitary(Bits x = 0) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& state, Bits x = 0) const;
};

struct MooreCounter {
  int p = 0;
  int kappa = 0;
  /// U_DFT^dagger, then D = prod_t R_Z(2^(t+1) pi / p) on qubit t, then U_DFT.
  MultiQubitCircuit step;
  /// n copies of step, copy i conditioned on x_i.
  MultiQubitCircuit counter;
  /// |<0|M^w|0>|^2 for w = 0..n.
  std::vector<double> zero_probability;
  /// zero_probability[w] is 1 when p | w and 0 otherwise, to 1e-12.
  bool reduction_ok = false;
};

MooreCounter moore_counter(int p, int n);

}  // namespace l2mbqc
