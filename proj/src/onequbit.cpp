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

#include "l2mbqc/onequbit.hpp"

#include <cmath>
#include <numbers>

namespace l2mbqc {

namespace {

constexpr double kPi = std::numbers::pi;

Gate make_gate(Axis axis, double theta, Condition cond = {}, std::string exact = {}) {
  Gate g;
  g.axis = axis;
  g.theta = theta;
  g.cond = cond;
  g.exact = std::move(exact);
  return g;
}

Condition select(Bits mask) { return {CondType::Select, mask, 0}; }

/// Z(-xi_L), block, Z(xi_L - xi_{L-1}), ..., block, Z(xi_1).
void append_qsp_layers(OneQubitProgram& prog, const QspAngles& angles,
                       const std::vector<Gate>& block) {
  const int L = angles.L;
  prog.gates.push_back(make_gate(Axis::Z, -angles.xi[L]));
  for (int k = L; k >= 1; --k) {
    prog.gates.insert(prog.gates.end(), block.begin(), block.end());
    const double next = k > 1 ? angles.xi[k] - angles.xi[k - 1] : angles.xi[1];
    prog.gates.push_back(make_gate(Axis::Z, next));
  }
}

Eigen::MatrixXcd embed_single(int qubits, int target, const Mat2& u) {
  const int dim = 1 << qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const int b = (col >> target) & 1;
    for (int r = 0; r < 2; ++r) {
      const int row = (col & ~(1 << target)) | (r << target);
      m(row, col) += u(r, b);
    }
  }
  return m;
}

}  // namespace

double Gate::angle_at(Bits x) const {
  switch (cond.type) {
    case CondType::None:
      return theta;
    case CondType::Select:
      return dot2(cond.mask, x) ? theta : 0.0;
    case CondType::Sign:
      return (dot2(cond.mask, x) ^ cond.bias) ? -theta : theta;
  }
  return theta;
}

Mat2 Gate::unitary(Bits x) const {
  const double a = angle_at(x);
  return axis == Axis::X ? rx(a) : rz(a);
}

Mat2 OneQubitProgram::unitary(Bits x) const {
  Mat2 u = Mat2::Identity();
  for (const auto& g : gates) u = g.unitary(x) * u;
  return u;
}

Evaluation evaluate(const OneQubitProgram& prog, Bits x) {
  if (prog.n < kMaxArity && (x >> prog.n) != 0) {
    throw InvalidArgument("input has bits above the program arity");
  }
  Evaluation e;
  e.u = prog.unitary(x);
  const double p1 = std::norm(e.u(1, 0));
  e.prob[prog.flip] = 1.0 - p1;
  e.prob[1 - prog.flip] = p1;
  for (int y = 0; y < 2; ++y) {
    if (e.prob[y] >= 1.0 - 1e-9) e.deterministic = y;
  }
  return e;
}

OneQubitProgram normalize_sign_form(const OneQubitProgram& prog) {
  OneQubitProgram out;
  out.n = prog.n;
  out.flip = prog.flip;
  for (const auto& g : prog.gates) {
    if (g.cond.type != CondType::Select) {
      out.gates.push_back(g);
      continue;
    }
    const std::string half = g.exact.empty() ? "" : "(" + g.exact + ")/2";
    out.gates.push_back(make_gate(g.axis, g.theta / 2, {}, half));
    out.gates.push_back(
        make_gate(g.axis, g.theta / 2, {CondType::Sign, g.cond.mask, 1}, half));
  }
  return out;
}

double mod3_alpha() { return std::acos(1.0 / std::sqrt(3.0)); }

Mat2 mod3_u_q() {
  const double a = mod3_alpha();
  const double beta = 3 * kPi / 4;
  return rz(beta) * rx(a) * rz(-2 * kPi / 3) * rx(a).adjoint() * rz(beta).adjoint();
}

Mat2 Mod3CliffordProgram::abstract_unitary(Bits x) const {
  Mat2 u = Mat2::Identity();
  for (int i = 0; i < n; ++i) {
    if ((x >> i) & 1) u = u_q.adjoint() * u;
  }
  u = pauli_z() * u;
  for (int i = 0; i < n; ++i) {
    if ((x >> i) & 1) u = u_q * u;
  }
  return u;
}

Mod3CliffordProgram build_mod3_clifford(int n) {
  if (n < 1 || n > kMaxArity) throw InvalidArgument("mod-3 program needs 1 <= n <= 20");
  Mod3CliffordProgram m;
  m.n = n;
  m.u_q = mod3_u_q();
  const double a = mod3_alpha();
  auto& g = m.expanded.gates;
  m.expanded.n = n;
  g.push_back(make_gate(Axis::X, a, {}, "alpha"));
  for (int i = 0; i < n; ++i) {
    g.push_back(make_gate(Axis::Z, -2 * kPi / 3, select(Bits{1} << i), pi_tag(-2, 3)));
  }
  g.push_back(make_gate(Axis::X, -2 * a, {}, "-2alpha"));
  for (int i = 0; i < n; ++i) {
    g.push_back(make_gate(Axis::Z, 2 * kPi / 3, select(Bits{1} << i), pi_tag(2, 3)));
  }
  g.push_back(make_gate(Axis::X, a, {}, "alpha"));
  return m;
}

OneQubitProgram build_qsp_program(int p, int j, int n, const QspAngles& angles) {
  if (n < 1 || n > kMaxArity) throw InvalidArgument("QSP program needs 1 <= n <= 20");
  if (static_cast<int>(angles.xi.size()) != angles.L + 1 || angles.L != 2 * p - 1) {
    throw InvalidArgument("angle count does not match L = 2p - 1");
  }
  const double fail = verify_qsp(angles, p, j, n);
  if (!(fail < 1e-9)) {
    throw InvalidArgument("angles fail verification (failure " + std::to_string(fail) + ")");
  }
  OneQubitProgram prog;
  prog.n = n;
  std::vector<Gate> block;
  if (j != 0) block.push_back(make_gate(Axis::X, -4 * kPi * j / p, {}, pi_tag(-4 * j, p)));
  for (int i = 0; i < n; ++i) {
    block.push_back(make_gate(Axis::X, 4 * kPi / p, select(Bits{1} << i), pi_tag(4, p)));
  }
  append_qsp_layers(prog, angles, block);
  return prog;
}

OneQubitProgram build_symmetric_program(const BooleanFunction& f, const QspAngles& angles) {
  if (!f.is_symmetric()) throw InvalidArgument("symmetric program needs a symmetric function");
  const int n = f.n();
  if (angles.is_mod_p() || angles.profile != *f.symmetric_profile() || angles.L != 4 * n + 1 ||
      static_cast<int>(angles.xi.size()) != angles.L + 1) {
    throw InvalidArgument("angles were not synthesized for this function");
  }
  const double fail = verify_symmetric(angles);
  if (!(fail < 1e-9)) {
    throw InvalidArgument("angles fail verification (failure " + std::to_string(fail) + ")");
  }
  OneQubitProgram prog;
  prog.n = n;
  prog.flip = angles.flip();
  std::vector<Gate> block;
  for (int i = 0; i < n; ++i) {
    block.push_back(
        make_gate(Axis::X, 2 * kPi / (2 * n + 1), select(Bits{1} << i), pi_tag(2, 2 * n + 1)));
  }
  append_qsp_layers(prog, angles, block);
  return prog;
}

OneQubitProgram build_commuting_program(const PeriodicDecomposition& d, int f0) {
  if (f0 != 0 && f0 != 1) throw InvalidArgument("f(0) must be a bit");
  OneQubitProgram prog;
  prog.n = d.n;
  prog.flip = f0;
  for (const auto& [mask, phi] : d.angles) {
    const double theta = kPi * static_cast<double>(phi.numerator()) /
                         static_cast<double>(phi.denominator());
    prog.gates.push_back(
        make_gate(Axis::X, theta, select(mask), pi_tag(phi.numerator(), phi.denominator())));
  }
  return prog;
}

int or_register_count(int n) {
  if (n < 1) throw InvalidArgument("OR reduction needs n >= 1");
  int k = 0;
  while ((1 << k) < n + 1) ++k;
  return k;
}

std::vector<OneQubitProgram> or_reduction_bank(int n) {
  return or_reduction_bank(n, or_register_count(n));
}

std::vector<OneQubitProgram> or_reduction_bank(int n, int kappa) {
  if (n < 1 || n > kMaxArity) throw InvalidArgument("OR reduction needs 1 <= n <= 20");
  if (kappa < 1 || kappa > 30) throw InvalidArgument("register count out of range");
  std::vector<OneQubitProgram> bank;
  for (int mu = 1; mu <= kappa; ++mu) {
    OneQubitProgram prog;
    prog.n = n;
    const std::int64_t den = std::int64_t{1} << mu;
    for (int i = 0; i < n; ++i) {
      prog.gates.push_back(make_gate(Axis::X, 2 * kPi / static_cast<double>(den),
                                     select(Bits{1} << i), pi_tag(2, den)));
    }
    bank.push_back(std::move(prog));
  }
  return bank;
}

double or_register_one_probability(int mu, int w) {
  const double s = std::sin(kPi * w / std::ldexp(1.0, mu));
  return s * s;
}

std::optional<int> or_reduction_alias(int n, int kappa) {
  for (int w = 1; w <= n; ++w) {
    double zero = 1.0;
    for (int mu = 1; mu <= kappa; ++mu) zero *= 1.0 - or_register_one_probability(mu, w);
    if (zero > 1e-12) return w;
  }
  return std::nullopt;
}

Eigen::MatrixXcd MultiQubitCircuit::unitary(Bits x) const {
  const int dim = 1 << qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : gates) {
    if (g.control_bit >= 0 && !((x >> g.control_bit) & 1)) continue;
    u = (g.target >= 0 ? embed_single(qubits, g.target, g.single) : g.dense) * u;
  }
  return u;
}

Eigen::VectorXcd MultiQubitCircuit::apply(const Eigen::VectorXcd& state, Bits x) const {
  if (state.size() != (Eigen::Index{1} << qubits)) throw InvalidArgument("state size mismatch");
  Eigen::VectorXcd v = state;
  for (const auto& g : gates) {
    if (g.control_bit >= 0 && !((x >> g.control_bit) & 1)) continue;
    v = (g.target >= 0 ? embed_single(qubits, g.target, g.single) : g.dense) * v;
  }
  return v;
}

MooreCounter moore_counter(int p, int n) {
  if (p < 2) throw InvalidArgument("counter modulus must be >= 2");
  if (n < 0 || n > kMaxArity) throw InvalidArgument("counter length out of range");
  MooreCounter mc;
  mc.p = p;
  while ((1 << mc.kappa) < p) ++mc.kappa;
  if (mc.kappa > 4) throw CapacityError("counter register exceeds 4 qubits");
  const int dim = 1 << mc.kappa;

  // U_DFT |b> = p^(-1/2) sum_c w^(-bc) |c> on the first p states.
  Eigen::MatrixXcd dft = Eigen::MatrixXcd::Identity(dim, dim);
  for (int c = 0; c < p; ++c) {
    for (int b = 0; b < p; ++b) {
      dft(c, b) = std::polar(1.0 / std::sqrt(static_cast<double>(p)), -2 * kPi * b * c / p);
    }
  }
  MultiQubitCircuit& step = mc.step;
  step.qubits = mc.kappa;
  step.gates.push_back({"U_DFT^dagger", -1, Mat2::Identity(), dft.adjoint(), -1});
  for (int t = 0; t < mc.kappa; ++t) {
    const double theta = std::ldexp(1.0, t + 1) * kPi / p;
    step.gates.push_back({"R_Z", t, rz(theta), {}, -1});
  }
  step.gates.push_back({"U_DFT", -1, Mat2::Identity(), dft, -1});

  mc.counter.qubits = mc.kappa;
  for (int i = 0; i < n; ++i) {
    for (CircuitGate g : step.gates) {
      g.control_bit = i;
      mc.counter.gates.push_back(std::move(g));
    }
  }
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(dim);
  zero(0) = 1;
  mc.reduction_ok = true;
  for (int w = 0; w <= n; ++w) {
    const Bits x = w == 0 ? 0 : (Bits{1} << w) - 1;
    const double pz = std::norm(mc.counter.apply(zero, x)(0));
    mc.zero_probability.push_back(pz);
    const double want = w % p == 0 ? 1.0 : 0.0;
    if (std::abs(pz - want) > 1e-12) mc.reduction_ok = false;
  }
  return mc;
}

}  // namespace l2mbqc
