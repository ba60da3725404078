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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "l2mbqc/boolean.hpp"
#include "l2mbqc/mbqc.hpp"
#include "l2mbqc/onequbit.hpp"
#include "l2mbqc/pfd.hpp"
#include "l2mbqc/qsp.hpp"
#include "l2mbqc/serialize.hpp"
#include "l2mbqc/sim.hpp"
#include "oracles.hpp"
#include "schedules.hpp"

namespace l2mbqc {
namespace {

using testing_schedules::chain_oracle;
using testing_schedules::chain_schedule;
using testing_schedules::ghz_schedule;
using testing_schedules::random_angles;

// Pinned tolerances and budgets.
constexpr double kTable2Tol = 1e-10;
constexpr double kOwnQspTol = 1e-9;
constexpr double kAnalyticTol = 1e-9;
constexpr double kExactTol = 1e-10;
constexpr double kCorrespondTol = 1e-10;
constexpr double kCrossEngineTol = 1e-12;
constexpr double kMooreTol = 1e-12;
constexpr double kBellTol = 1e-12;
constexpr int kSweepWeight = 20;
constexpr int kShots = 200;

/// Collects failures for one criterion.
struct Check {
  bool ok = true;
  std::ostringstream notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) notes << what;
      else if (notes.tellp() < 400) notes << "; " << what;
      ok = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

/// pr(y = f(x)) from the chain analysis.
double analytic_success(const MeasurementSchedule& s, const BooleanFunction& f, Bits x) {
  const double p1 = analytic_one_probability(s, x);
  return f(x) ? p1 : 1.0 - p1;
}

bool table2_fixture(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto fixture = load_table2();
  c.require(fixture.size() == 4, "fixture has " + std::to_string(fixture.size()) + " entries");
  double worst = 0.0;
  for (const auto& a : fixture) {
    const double fail = verify_qsp(a, a.p, 0, kSweepWeight);
    worst = std::max(worst, fail);
    c.require(fail < kTable2Tol, "p=" + std::to_string(a.p) + " failure " + fmt(fail));
  }
  const double dt = seconds_since(t0);
  c.require(dt < 1.0, "runtime " + fmt(dt) + " s");
  if (c.ok) c.notes << "worst failure " << fmt(worst) << ", " << fmt(dt) << " s";
  return c.ok;
}

/// Output bit a QSP sequence produces at weight w, by majority readout.
int qsp_bit(const QspAngles& a, int p, int j, int w) {
  return std::norm(reconstruct_unitary(a, mod_p_signal(p, j, w))(1, 0)) > 0.5 ? 1 : 0;
}

bool qsp_synthesis(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto fixture = load_table2();
  double worst = 0.0;
  for (int p : {3, 5, 7, 9}) {
    for (int j = 0; j < p; ++j) {
      const QspAngles own = synthesize_mod_p(p, j);
      const double fail = verify_qsp(own, p, j, kSweepWeight);
      worst = std::max(worst, fail);
      c.require(fail < kOwnQspTol, "p=" + std::to_string(p) + " j=" + std::to_string(j) +
                                       " failure " + fmt(fail));
      if (j != 0) continue;
      for (const auto& ref : fixture) {
        if (ref.p != p) continue;
        for (int w = 0; w <= kSweepWeight; ++w) {
          c.require(qsp_bit(own, p, 0, w) == qsp_bit(ref, p, 0, w) &&
                        qsp_bit(own, p, 0, w) == oracle::mod_p((Bits{1} << w) - 1, p, 0),
                    "p=" + std::to_string(p) + " output differs at w=" + std::to_string(w));
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  c.require(dt < 30.0, "runtime " + fmt(dt) + " s");
  if (c.ok) c.notes << "worst failure " << fmt(worst) << ", " << fmt(dt) << " s";
  return c.ok;
}

bool mod3_protocol_check(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 1; n <= 8; ++n) {
    const MeasurementSchedule s = mod3_protocol(n);
    const BooleanFunction f = make_mod_p(n, 3, 0);
    double worst = 1.0;
    for (Bits x = 0; x < (Bits{1} << n); ++x) worst = std::min(worst, analytic_success(s, f, x));
    c.require(worst >= 1.0 - kAnalyticTol, "n=" + std::to_string(n) + " success " + fmt(worst));
    const ResourceReport r = resources(s);
    const ResourceReport want{4 * n + 5, n + 2, 3, 5};
    c.require(r == want, "n=" + std::to_string(n) + " resources differ");
  }
  c.require(resources(mod3_protocol(4)).l_q == 21, "n=4 qubit count");
  const MeasurementSchedule one = mod3_protocol(1);
  c.require(one.n_qubits() == 9, "n=1 qubit count");
  for (Bits x = 0; x < 2; ++x) {
    const double p = exact_distribution(one, x)[make_mod_p(1, 3, 0)(x)];
    c.require(p >= 1.0 - kExactTol, "n=1 exact success " + fmt(p));
  }
  const double dt = seconds_since(t0);
  c.require(dt < 60.0, "runtime " + fmt(dt) + " s");
  if (c.ok) c.notes << "n=1..8, n=4 uses 21 qubits, " << fmt(dt) << " s";
  return c.ok;
}

bool modp_protocol_check(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyOptions opt;
  opt.shots_per_input = kShots;
  int shots = 0;
  for (int p : {3, 5, 7}) {
    const QspAngles angles = synthesize_mod_p(p, 0);
    for (int n = 1; n <= 5; ++n) {
      const std::string tag = "p=" + std::to_string(p) + " n=" + std::to_string(n);
      const MeasurementSchedule s = modp_protocol(p, 0, n, angles);
      const SimulationReport r = verify_protocol(s, make_mod_p(n, p, 0), opt);
      c.require(r.min_analytic && *r.min_analytic >= 1.0 - kAnalyticTol, tag + " analytic");
      c.require(r.correct == r.shots, tag + " sampled " + std::to_string(r.correct) + "/" +
                                          std::to_string(r.shots));
      const ResourceReport want{(4 * p - 2) * (n + 1) - 1, n + 2, 3, 4 * p - 2};
      c.require(r.resources == want, tag + " resources differ");
      shots += r.shots;
    }
  }
  const double dt = seconds_since(t0);
  c.require(dt < 300.0, "runtime " + fmt(dt) + " s");
  if (c.ok) c.notes << shots << " shots all correct, " << fmt(dt) << " s";
  return c.ok;
}

bool symmetric_protocol_check(Check& c) {
  const int n = 2;
  for (const BooleanFunction& f : {make_pairwise_and(n), make_mod_p(n, 3, 1)}) {
    const MeasurementSchedule s = qsp_symmetric_protocol(f, synthesize_symmetric(f));
    VerifyOptions opt;
    opt.shots_per_input = kShots;
    const SimulationReport r = verify_protocol(s, f, opt);
    c.require(r.all_correct(kAnalyticTol), f.kind() + " incorrect");
    const ResourceReport want{8 * n * n + 10 * n + 1, n, 3, 8 * n + 2};
    c.require(r.resources == want, f.kind() + " resources differ");
  }
  if (c.ok) c.notes << "C_2^2 and Mod_{3,1} on 53 qubits";
  return c.ok;
}

bool ghz_lift_check(Check& c) {
  struct Case {
    BooleanFunction f;
    PeriodicDecomposition d;
  };
  for (const Case& k : {Case{make_or(2), solve_pfd(make_or(2))},
                        Case{make_pairwise_and(3), pairwise_and_decomposition(3)}}) {
    const BooleanFunction& f = k.f;
    const MeasurementSchedule ghz = compile_pfd_to_ghz(k.d, f(0));
    const MeasurementSchedule lift = lift_ghz_to_cluster(ghz);
    const int big_n = ghz.n_qubits();
    for (Bits x = 0; x < (Bits{1} << f.n()); ++x) {
      const auto a = exact_distribution(ghz, x);
      const auto b = exact_distribution(lift, x);
      c.require(std::abs(a[1] - b[1]) < kExactTol && b[f(x)] >= 1.0 - kExactTol,
                f.kind() + " differs at x=" + std::to_string(x));
    }
    const ResourceReport want{2 * big_n + 1, big_n, 3, 2};
    c.require(resources(lift) == want, f.kind() + " resources differ");
  }
  if (c.ok) c.notes << "OR_2 and C_3^2 agree by exact enumeration";
  return c.ok;
}

bool or_protocol_check(Check& c) {
  VerifyOptions opt;
  opt.shots_per_input = kShots;
  for (int n = 2; n <= 6; ++n) {
    const std::string tag = "n=" + std::to_string(n);
    const SimulationReport r = verify_protocol(or_protocol(n), make_or(n), opt);
    c.require(r.correct == r.shots, tag + " sampled " + std::to_string(r.correct) + "/" +
                                        std::to_string(r.shots));
    const int kappa = or_register_count(n);
    c.require(!or_reduction_alias(n, kappa).has_value(), tag + " counter aliases");
    for (int w = 1; w <= n; ++w) {
      double zero = 1.0;
      for (int mu = 1; mu <= kappa; ++mu) zero *= 1.0 - or_register_one_probability(mu, w);
      c.require(zero < 1e-20, tag + " w=" + std::to_string(w) + " reaches counter 0");
    }
  }
  if (c.ok) c.notes << "n=2..6, " << kShots << " shots per input";
  return c.ok;
}

bool moore_counter_check(Check& c) {
  for (int p : {3, 5}) {
    const MooreCounter mc = moore_counter(p, 10);
    for (int w = 0; w <= 10; ++w) {
      const double want = w % p == 0 ? 1.0 : 0.0;
      c.require(std::abs(mc.zero_probability[w] - want) < kMooreTol,
                "p=" + std::to_string(p) + " w=" + std::to_string(w));
    }
  }
  if (c.ok) c.notes << "p=3,5 and w<=10";
  return c.ok;
}

bool pfd_check(Check& c) {
  for (int n = 1; n <= 6; ++n) {
    const SierpinskiSystem sys = sierpinski_matrix(n);
    const std::size_t size = sys.masks.size();
    bool identity = true;
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        Rational acc(0);
        for (std::size_t k = 0; k < size; ++k) acc += Rational(sys.m[a][k]) * sys.m_inv[k][b];
        identity = identity && acc == Rational(a == b ? 1 : 0);
      }
    }
    c.require(identity, "M M^-1 != I at n=" + std::to_string(n));
  }
  for (int n = 1; n <= 5; ++n) {
    const PfdCheck chk = verify_pfd(make_or(n), or_decomposition(n));
    c.require(chk.ok, "closed-form OR_" + std::to_string(n) + " residual " +
                          fmt(chk.max_residual));
  }
  for (int n = 1; n <= 4; ++n) {
    const SparsityCertificate cert = sparsity_certificate(make_and(n));
    const int full = (1 << n) - 1;
    bool odd = static_cast<int>(cert.odd_integer.size()) == full;
    for (bool b : cert.odd_integer) odd = odd && b;
    c.require(odd && cert.certifies_full_sparsity && (n == 1 || cert.non_integer_count == full),
              "AND_" + std::to_string(n) + " certificate");
  }
  std::mt19937_64 rng(2024);
  for (int n = 1; n <= 4; ++n) {
    for (int t = 0; t < 50; ++t) {
      const auto table = oracle::random_table(n, rng);
      const std::vector<std::uint8_t> bytes(table.begin(), table.end());
      const BooleanFunction f = BooleanFunction::from_table(n, bytes);
      c.require(verify_pfd(f, solve_pfd(f)).ok, "random n=" + std::to_string(n));
    }
  }
  if (c.ok) c.notes << "inverse exact, OR closed form, AND certificate, 200 random";
  return c.ok;
}

bool correspondence_check(Check& c) {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 10;
    const auto angles = random_angles(n, rng);
    oracle::M2 u = oracle::M2::Identity();
    for (double a : angles) u = oracle::rot_x(a) * u;
    const double d = std::abs(exact_distribution(ghz_schedule(angles), 0)[1] - oracle::p_one(u));
    worst = std::max(worst, d);
  }
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 * (1 + rng() % 5) + 1;
    const auto angles = random_angles(n, rng);
    const double d = std::abs(exact_distribution(chain_schedule(angles), 0)[1] - chain_oracle(angles));
    worst = std::max(worst, d);
  }
  c.require(worst < kCorrespondTol, "deviation " + fmt(worst));
  if (c.ok) c.notes << "40 random instances, worst " << fmt(worst);
  return c.ok;
}

bool bell_check(Check& c) {
  VerifyOptions opt;
  opt.shots_per_input = 50;
  struct Case {
    BooleanFunction f;
    double beta;
  };
  for (const Case& k : {Case{make_and(2), 0.75}, Case{make_pairwise_and(4), 0.625}}) {
    const BellScore b = bell_score(compile_pfd_to_ghz(solve_pfd(k.f), k.f(0)), k.f, opt);
    c.require(std::abs(b.beta - k.beta) < kBellTol, k.f.kind() + " beta " + fmt(b.beta));
    c.require(std::abs(b.classical - k.beta) < kBellTol,
              k.f.kind() + " best affine " + fmt(b.classical));
    c.require(b.quantum >= 1.0 - kAnalyticTol && b.quantum > b.beta && b.violation,
              k.f.kind() + " quantum " + fmt(b.quantum));
  }
  if (c.ok) c.notes << "1.0 > 0.75 (AND_2), 1.0 > 0.625 (C_4^2)";
  return c.ok;
}

bool cross_engine_check(Check& c) {
  std::vector<std::pair<MeasurementSchedule, int>> cases;
  cases.emplace_back(mod3_protocol(1), 1);
  cases.emplace_back(mod3_protocol(2), 2);
  for (const BooleanFunction& f : {make_and(2), make_or(2), make_pairwise_and(3)}) {
    const PeriodicDecomposition d =
        f.kind() == "pairwise_and" ? pairwise_and_decomposition(3) : solve_pfd(f);
    const MeasurementSchedule g = compile_pfd_to_ghz(d, f(0));
    cases.emplace_back(g, f.n());
    cases.emplace_back(lift_ghz_to_cluster(g), f.n());
  }
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    cases.emplace_back(chain_schedule(random_angles(3 + 2 * (rng() % 5), rng)), 0);
    cases.emplace_back(ghz_schedule(random_angles(2 + rng() % 8, rng)), 0);
  }
  double worst = 0.0;
  int count = 0;
  for (const auto& [s, n] : cases) {
    if (s.n_qubits() > 14) continue;
    for (Bits x = 0; x < (Bits{1} << n); ++x) {
      worst = std::max(worst, cross_engine_deviation(s, x));
      ++count;
    }
  }
  c.require(worst < kCrossEngineTol, "deviation " + fmt(worst));
  if (c.ok) c.notes << count << " instance inputs, worst " << fmt(worst);
  return c.ok;
}

bool anf_check(Check& c) {
  for (int p : {3, 5, 7}) {
    for (int n = 1; n <= 8; ++n) {
      const ModPAnfCoefficients coeffs = mod_p_anf_coeffs(p, n);
      bool full = false;
      for (int j = 0; j < p; ++j) {
        const AnfPolynomial rec = coeffs.anf_for(j);
        std::vector<int> table(std::size_t{1} << n);
        for (Bits x = 0; x < table.size(); ++x) table[x] = oracle::mod_p(x, p, j);
        std::vector<Bits> brute;
        for (Bits s = 0; s < table.size(); ++s) {
          if (oracle::anf_coefficient(table, s)) brute.push_back(s);
        }
        c.require(rec.monomials == brute, "p=" + std::to_string(p) + " n=" + std::to_string(n) +
                                              " j=" + std::to_string(j));
        full = full || rec.degree() == n;
      }
      c.require(full, "no full-degree j for p=" + std::to_string(p) + " n=" + std::to_string(n));
    }
  }
  if (c.ok) c.notes << "p=3,5,7 and n<=8";
  return c.ok;
}

}  // namespace
}  // namespace l2mbqc

int main() {
  using namespace l2mbqc;
  struct Criterion {
    const char* name;
    std::function<bool(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {"QSP angle fixture", table2_fixture},
      {"QSP synthesis", qsp_synthesis},
      {"Mod-3 protocol", mod3_protocol_check},
      {"Mod-p protocol", modp_protocol_check},
      {"Symmetric QSP protocol", symmetric_protocol_check},
      {"GHZ lift", ghz_lift_check},
      {"OR-reduction protocol", or_protocol_check},
      {"Moore counter", moore_counter_check},
      {"Periodic Fourier machinery", pfd_check},
      {"Correspondence identities", correspondence_check},
      {"Bell/NCHVM bounds", bell_check},
      {"Cross-engine", cross_engine_check},
      {"ANF recurrence", anf_check},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    try {
      criteria[k].run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    if (!c.ok) ++failed;
    std::printf("[%s] %2zu %s: %s\n", c.ok ? "PASS" : "FAIL", k + 1, criteria[k].name,
                c.notes.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
