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

#include "l2mbqc/mbqc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace l2mbqc {

namespace {

constexpr double kPi = std::numbers::pi;

int part_total(const MeasurementSchedule& s) {
  int total = 0;
  for (const auto& p : s.parts) total += p.n_qubits;
  return total;
}

QubitRecord xy_qubit(int id, int round, double theta, int bias, Bits mask,
                     std::vector<int> a_ids, std::string exact = {}) {
  QubitRecord q;
  q.id = id;
  q.round = round;
  q.basis.theta = theta;
  q.basis.bias = bias;
  q.p_mask = mask;
  q.a_ids = std::move(a_ids);
  q.exact = std::move(exact);
  return q;
}

QubitRecord pauli_x_qubit(int id, int round) { return xy_qubit(id, round, 0.0, 0, 0, {}, "0"); }

/// Ids k < limit with k = parity mod 2, starting from `from`.
std::vector<int> earlier(int from, int limit, int parity) {
  std::vector<int> out;
  for (int k = from; k < limit; ++k) {
    if (k % 2 == parity) out.push_back(k);
  }
  return out;
}

std::vector<int> odd_ids(int from, int to) {
  std::vector<int> out;
  for (int k = from; k <= to; ++k) {
    if (k % 2 == 1) out.push_back(k);
  }
  return out;
}

void symmetric_difference_into(std::set<int>& acc, const std::vector<int>& ids) {
  for (int id : ids) {
    if (!acc.erase(id)) acc.insert(id);
  }
}

Bits bit(int i) { return Bits{1} << i; }

Table1Row row(std::string algorithm, std::string l_q, std::string t_q, std::string l_c,
              std::string t_c) {
  Table1Row r;
  r.algorithm = std::move(algorithm);
  r.l_q = std::move(l_q);
  r.t_q = std::move(t_q);
  r.l_c = std::move(l_c);
  r.t_c = std::move(t_c);
  return r;
}

struct ChainSite {
  Axis axis = Axis::X;
  double theta = 0.0;
  int bias = 0;
  Bits mask = 0;
  std::string exact;
};

}  // namespace

void validate(const MeasurementSchedule& s) {
  if (s.arity < 0 || s.arity > kMaxArity) throw ScheduleError("arity out of range");
  if (s.c != 0 && s.c != 1) throw ScheduleError("constant c must be a bit");
  if (s.registers < 0) throw ScheduleError("negative register count");
  for (const auto& p : s.parts) {
    if (p.n_qubits < 0) throw ScheduleError("negative resource size");
  }
  if (part_total(s) != s.n_qubits()) {
    throw ScheduleError("resource parts hold " + std::to_string(part_total(s)) +
                        " qubits but the schedule lists " + std::to_string(s.n_qubits()));
  }
  const Bits limit = s.arity >= 32 ? ~Bits{0} : (Bits{1} << s.arity) - 1;
  for (std::size_t k = 0; k < s.qubits.size(); ++k) {
    const QubitRecord& q = s.qubits[k];
    const std::string where = "qubit " + std::to_string(q.id);
    if (q.id != static_cast<int>(k) + 1) throw ScheduleError("qubit ids must be 1..N in order");
    if (q.round < 1) throw ScheduleError(where + ": round must be >= 1");
    if ((q.p_mask & ~limit) != 0) throw ScheduleError(where + ": P row exceeds the arity");
    if (q.basis.type == BasisType::Z && (q.p_mask != 0 || !q.a_ids.empty())) {
      throw ScheduleError(where + ": Pauli-Z measurements take no setting");
    }
    if (q.basis.bias != 0 && q.basis.bias != 1) throw ScheduleError(where + ": bias must be a bit");
    if (!std::is_sorted(q.a_ids.begin(), q.a_ids.end()) ||
        std::adjacent_find(q.a_ids.begin(), q.a_ids.end()) != q.a_ids.end()) {
      throw ScheduleError(where + ": A row must be sorted without repeats");
    }
    for (int a : q.a_ids) {
      if (a < 1 || a > s.n_qubits()) {
        throw ScheduleError(where + ": A row references unknown qubit " + std::to_string(a));
      }
      if (s.qubit(a).round >= q.round) {
        throw ScheduleError(where + ": A row references qubit " + std::to_string(a) +
                            " from a round that is not earlier");
      }
    }
  }
  std::set<int> seen;
  for (int o : s.o_ids) {
    if (o < 1 || o > s.n_qubits()) throw ScheduleError("output mask references unknown qubit");
    if (!seen.insert(o).second) throw ScheduleError("output mask repeats a qubit");
  }
}

double measured_angle(const Basis& b, int setting) {
  return b.offset + (((setting ^ b.bias) & 1) ? -b.theta : b.theta);
}

int setting_bit(const QubitRecord& q, Bits x, const std::vector<int>& m) {
  int s = dot2(q.p_mask, x);
  for (int a : q.a_ids) s ^= m.at(a) & 1;
  return s;
}

MeasurementSchedule compile_to_cluster(const OneQubitProgram& prog) {
  const OneQubitProgram norm = normalize_sign_form(prog);
  std::size_t lo = 0, hi = norm.gates.size();
  while (lo < hi && norm.gates[lo].axis == Axis::Z) ++lo;
  while (hi > lo && norm.gates[hi - 1].axis == Axis::Z) --hi;

  std::vector<ChainSite> sites;
  auto push = [&sites](ChainSite site) {
    if (!sites.empty() && sites.back().axis == site.axis) {
      ChainSite filler;
      filler.axis = site.axis == Axis::X ? Axis::Z : Axis::X;
      filler.exact = "0";
      sites.push_back(filler);
    }
    sites.push_back(std::move(site));
  };
  std::size_t k = lo;
  while (k < hi) {
    const Axis axis = norm.gates[k].axis;
    ChainSite merged;
    merged.axis = axis;
    std::string merged_exact;
    bool exact_ok = true;
    for (; k < hi && norm.gates[k].axis == axis; ++k) {
      const Gate& g = norm.gates[k];
      if (g.cond.type == CondType::Sign) {
        push({axis, g.theta, g.cond.bias, g.cond.mask, g.exact});
      } else if (g.cond.type == CondType::None) {
        merged.theta += g.theta;
        if (g.exact.empty()) exact_ok = false;
        merged_exact += (merged_exact.empty() ? "" : " + ") + g.exact;
      } else {
        throw ScheduleError("select gate survived sign normalization");
      }
    }
    merged.exact = exact_ok ? (merged_exact.empty() ? "0" : merged_exact) : "";
    push(merged);
  }
  if (sites.empty()) sites.push_back({Axis::X, 0.0, 0, 0, "0"});

  MeasurementSchedule s;
  s.arity = prog.n;
  s.c = prog.flip;
  s.origin = "cluster";
  const int total = static_cast<int>(sites.size());
  s.parts.push_back({ResourceKind::Cluster1D, total});
  for (int id = 1; id <= total; ++id) {
    const ChainSite& site = sites[id - 1];
    if ((site.axis == Axis::X) != (id % 2 == 1)) {
      throw ScheduleError("chain sites do not alternate between X and Z");
    }
    std::vector<int> deps;
    if (!is_pi_multiple(site.theta)) deps = earlier(1, id, 1 - id % 2);
    int round = 1;
    for (int a : deps) round = std::max(round, s.qubit(a).round + 1);
    s.qubits.push_back(xy_qubit(id, round, site.theta, site.bias, site.mask, deps, site.exact));
  }
  s.o_ids = odd_ids(1, total);
  return s;
}

MeasurementSchedule compile_pfd_to_ghz(const PeriodicDecomposition& d, int f0) {
  const GhzStrategy g = ghz_strategy(d, f0);
  MeasurementSchedule s;
  s.arity = d.n;
  s.c = f0;
  s.origin = "ghz";
  const int total = static_cast<int>(g.p_rows.size());
  if (total > 0) s.parts.push_back({ResourceKind::Ghz, total});
  for (int j = 0; j < total; ++j) {
    const Rational half = g.exact[j] / Rational(2);
    QubitRecord q = xy_qubit(j + 1, 1, g.angles[j] / 2, 1, g.p_rows[j], {},
                             pi_tag(half.numerator(), half.denominator()));
    q.basis.offset = g.angles[j] / 2;
    s.qubits.push_back(q);
    s.o_ids.push_back(j + 1);
  }
  return s;
}

MeasurementSchedule lift_ghz_to_cluster(const MeasurementSchedule& ghz) {
  validate(ghz);
  for (const auto& p : ghz.parts) {
    if (p.kind != ResourceKind::Ghz || ghz.parts.size() != 1) {
      throw ScheduleError("lift needs a single GHZ resource");
    }
  }
  for (const auto& q : ghz.qubits) {
    if (!q.a_ids.empty() || q.basis.type != BasisType::XY) {
      throw ScheduleError("lift needs a nonadaptive XY-plane schedule");
    }
  }
  if (static_cast<int>(ghz.o_ids.size()) != ghz.n_qubits()) {
    throw ScheduleError("lift needs the output to be the parity of every GHZ outcome");
  }
  const int n = ghz.n_qubits();
  MeasurementSchedule s;
  s.arity = ghz.arity;
  s.c = ghz.c;
  s.registers = ghz.registers;
  s.origin = "lift";
  s.target = ghz.target;
  s.parts.push_back({ResourceKind::Cluster1D, 2 * n + 1});
  double offsets = 0.0;
  for (int j = 1; j <= n; ++j) {
    const QubitRecord& g = ghz.qubit(j);
    offsets += g.basis.offset;
    s.qubits.push_back(xy_qubit(2 * j - 1, 2, g.basis.theta, g.basis.bias, g.p_mask,
                                earlier(1, 2 * j - 1, 0), g.exact));
    s.qubits.push_back(pauli_x_qubit(2 * j, 1));
  }
  s.qubits.push_back(xy_qubit(2 * n + 1, 2, offsets, 0, 0, earlier(1, 2 * n + 1, 0)));
  s.o_ids = odd_ids(1, 2 * n + 1);
  return s;
}

MeasurementSchedule mod3_protocol(int n) {
  if (n < 1 || n > kMaxArity) throw InvalidArgument("mod-3 protocol needs 1 <= n <= 20");
  const double alpha = mod3_alpha();
  const std::string third = pi_tag(1, 3), n_third = pi_tag(n, 3);
  MeasurementSchedule s;
  s.arity = n;
  s.origin = "mod3";
  s.target = "mod3:0";
  s.registers = 2;
  const int total = 4 * n + 5;
  s.parts.push_back({ResourceKind::Cluster1D, total});
  std::vector<QubitRecord> q(total + 1);
  // (1)
  q[1] = xy_qubit(1, 1, alpha, 0, 0, {}, "alpha");
  for (int j = 3; j <= 2 * n + 1; j += 2) q[j] = pauli_x_qubit(j, 1);
  // (2)
  for (int i = 1; i <= n; ++i) {
    q[2 * i] = xy_qubit(2 * i, 2, kPi / 3, 0, bit(i - 1), earlier(1, 2 * i, 1), third);
  }
  q[2 * n + 2] = xy_qubit(2 * n + 2, 2, n * kPi / 3, 1, 0, earlier(1, 2 * n + 2, 1), n_third);
  // (3)
  q[2 * n + 3] = xy_qubit(2 * n + 3, 3, 2 * alpha, 1, 0, earlier(1, 2 * n + 3, 0), "2alpha");
  for (int j = 2 * n + 5; j <= 4 * n + 3; j += 2) q[j] = pauli_x_qubit(j, 3);
  // (4)
  for (int i = 1; i <= n; ++i) {
    const int j = 2 * n + 2 + 2 * i;
    q[j] = xy_qubit(j, 4, kPi / 3, 1, bit(i - 1), earlier(1, j, 1), third);
  }
  q[4 * n + 4] = xy_qubit(4 * n + 4, 4, n * kPi / 3, 0, 0, earlier(1, 4 * n + 4, 1), n_third);
  // (5)
  q[4 * n + 5] = xy_qubit(4 * n + 5, 5, alpha, 0, 0, earlier(1, 4 * n + 5, 0), "alpha");
  s.qubits.assign(q.begin() + 1, q.end());
  s.o_ids = odd_ids(1, total);
  validate(s);
  return s;
}

MeasurementSchedule modp_protocol(int p, int j, int n, const QspAngles& angles) {
  if (n < 1 || n > kMaxArity) throw InvalidArgument("mod-p protocol needs 1 <= n <= 20");
  if (p < 3 || p % 2 == 0 || j < 0 || j >= p) throw InvalidArgument("need odd p >= 3 and 0 <= j < p");
  const int L = 2 * p - 1;
  if (angles.L != L || static_cast<int>(angles.xi.size()) != L + 1) {
    throw InvalidArgument("angle count does not match L = 2p - 1");
  }
  const double fail = verify_qsp(angles, p, j, n);
  if (!(fail < 1e-9)) {
    throw InvalidArgument("angles fail verification (failure " + std::to_string(fail) + ")");
  }
  MeasurementSchedule s;
  s.arity = n;
  s.origin = "modp";
  s.target = "mod" + std::to_string(p) + ":" + std::to_string(j);
  s.registers = 2;
  const int total = (4 * p - 2) * (n + 1) - 1;
  s.parts.push_back({ResourceKind::Cluster1D, total});
  std::vector<QubitRecord> q(total + 1);
  const std::string unit = pi_tag(2, p), shift = pi_tag(2 * (n - 2 * j), p);
  for (int mu = 1; mu <= L; ++mu) {
    const int base = (mu - 1) * (2 * n + 2);
    for (int i = 1; i <= n; ++i) {
      const int odd = base + 2 * i - 1;
      q[odd] = xy_qubit(odd, 2 * mu, 2 * kPi / p, 1, bit(i - 1), earlier(1, odd, 0), unit);
      q[base + 2 * i] = pauli_x_qubit(base + 2 * i, 1);
    }
    const int last = base + 2 * n + 1;
    q[last] = xy_qubit(last, 2 * mu, 2 * kPi * (n - 2 * j) / p, 0, 0, earlier(1, last, 0), shift);
    if (mu < L) {
      const int z = mu * (2 * n + 2);
      q[z] = xy_qubit(z, 2 * mu + 1, angles.xi[mu + 1] - angles.xi[mu], 0, 0, earlier(1, z, 1));
    }
  }
  s.qubits.assign(q.begin() + 1, q.end());
  s.o_ids = odd_ids(1, total);
  validate(s);
  return s;
}

MeasurementSchedule qsp_symmetric_protocol(const BooleanFunction& f, const QspAngles& angles) {
  MeasurementSchedule s = compile_to_cluster(build_symmetric_program(f, angles));
  s.origin = "symmetric";
  std::string prof = "sym:";
  for (auto b : *f.symmetric_profile()) prof += b ? '1' : '0';
  s.target = prof;
  return s;
}

MeasurementSchedule or_protocol(int n) {
  if (n < 2 || n > kMaxArity) throw InvalidArgument("OR protocol needs 2 <= n <= 20");
  const int kappa = or_register_count(n);
  if (kappa > 6) throw CapacityError("stage-2 decomposition is capped at 6 registers");
  const int seg = 2 * n + 2;
  const std::vector<OneQubitProgram> bank = or_reduction_bank(n, kappa);

  MeasurementSchedule s;
  s.arity = n;
  s.origin = "or";
  s.target = "or";
  std::vector<std::vector<int>> outputs(kappa);
  for (int mu = 1; mu <= kappa; ++mu) {
    const MeasurementSchedule block = compile_to_cluster(bank[mu - 1]);
    if (block.n_qubits() != 2 * n + 1) throw ScheduleError("unexpected stage-1 chain length");
    const int base = (mu - 1) * seg;
    for (QubitRecord q : block.qubits) {
      q.id += base;
      for (int& a : q.a_ids) a += base;
      s.qubits.push_back(q);
    }
    QubitRecord cut;
    cut.id = mu * seg;
    cut.basis.type = BasisType::Z;
    cut.exact = "Z";
    s.qubits.push_back(cut);
    outputs[mu - 1] = odd_ids(base + 1, base + 2 * n + 1);
    if (mu > 1) outputs[mu - 1].push_back(base);
    outputs[mu - 1].push_back(mu * seg);
  }

  const MeasurementSchedule lifted =
      lift_ghz_to_cluster(compile_pfd_to_ghz(or_decomposition_demorgan(kappa), 0));
  const int base = kappa * seg;
  for (QubitRecord q : lifted.qubits) {
    std::set<int> deps;
    for (int a : q.a_ids) deps.insert(a + base);
    for (int mu = 0; mu < kappa; ++mu) {
      if ((q.p_mask >> mu) & 1) symmetric_difference_into(deps, outputs[mu]);
    }
    q.id += base;
    q.p_mask = 0;
    q.a_ids.assign(deps.begin(), deps.end());
    int round = 1;
    for (int a : q.a_ids) round = std::max(round, s.qubit(a).round + 1);
    q.round = round;
    s.qubits.push_back(q);
  }
  s.parts.push_back({ResourceKind::Cluster1D, s.n_qubits()});
  s.o_ids = odd_ids(base + 1, s.n_qubits());
  s.o_ids.insert(s.o_ids.begin(), base);
  validate(s);
  return s;
}

ResourceReport resources(const MeasurementSchedule& s) {
  ResourceReport r;
  r.l_q = s.n_qubits();
  std::set<Bits> rows;
  for (const auto& q : s.qubits) {
    if (q.p_mask != 0) rows.insert(q.p_mask);
    r.t_c = std::max(r.t_c, q.round);
  }
  r.l_c = static_cast<int>(rows.size()) + s.registers;
  r.t_q = r.l_q > 0 ? 3 : 0;
  return r;
}

std::vector<Table1Row> table1_rows(int n, int p) {
  if (n < 1 || n > 6) throw InvalidArgument("table1 needs 1 <= n <= 6");
  if (p < 3 || p % 2 == 0) throw InvalidArgument("table1 needs odd p >= 3");
  std::vector<Table1Row> rows;
  const BooleanFunction f = make_mod_p(n, p, 0);
  {
    Table1Row r = row("Periodic Fourier", "2^n-1", "3", "2^n-1", "2");
    const PeriodicDecomposition d = solve_pfd(f);
    r.has_measured = true;
    r.measured = resources(compile_pfd_to_ghz(d, f(0)));
    const int sup = static_cast<int>(d.support());
    r.formula = {sup, sup, 3, 2};
    rows.push_back(r);
  }
  rows.push_back(row("Barrington", "poly(n)", "3", "poly(n)", "poly(n)"));
  if (n >= 2) {
    Table1Row r = row("OR-reduction", "Theta(n^2 log n)", "3", "Theta(n log n)", "3");
    r.has_measured = true;
    r.measured = resources(or_protocol(n));
    int k = 0;
    while ((1 << k) < n) ++k;
    r.formula = {2 * k * (n + 1) + (1 << (k + 1)) - 1, (n + 2) * k + (1 << k), 3, 3};
    rows.push_back(r);
  }
  {
    Table1Row r = row("Quantum Signal Processing", "Theta(n^2)", "3", "Theta(n)", "Theta(n)");
    r.has_measured = true;
    r.measured = resources(qsp_symmetric_protocol(f, synthesize_symmetric(f)));
    r.formula = {8 * n * n + 10 * n + 1, n, 3, 8 * n + 2};
    rows.push_back(r);
  }
  rows.push_back(row("Moore's counting circuit", "O(n log p + p^2 log^3 p)", "5",
                  "Theta(n log p)", "O(p^2 log^3 p)"));
  if (p == 3) {
    Table1Row r = row("This work (Mod_3 Clifford)", "4n+5", "3", "n+2", "5");
    r.has_measured = true;
    r.measured = resources(mod3_protocol(n));
    r.formula = {4 * n + 5, n + 2, 3, 5};
    rows.push_back(r);
  }
  {
    Table1Row r = row("This work (Mod_p QSP)", "Theta(pn)", "3", "n+2", "Theta(p)");
    r.has_measured = true;
    r.measured = resources(modp_protocol(p, 0, n, synthesize_mod_p(p, 0)));
    r.formula = {(4 * p - 2) * (n + 1) - 1, n + 2, 3, 4 * p - 2};
    rows.push_back(r);
  }
  return rows;
}

}  // namespace l2mbqc
