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

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "l2mbqc/mbqc.hpp"
#include "l2mbqc/sim.hpp"
#include "oracles.hpp"
#include "schedules.hpp"

namespace l2mbqc {
namespace {

using testing_schedules::chain_oracle;
using testing_schedules::chain_schedule;
using testing_schedules::ghz_schedule;
using testing_schedules::random_angles;

TEST(Sim, PauliZMarginalsOnResources) {
  for (EngineKind kind : {EngineKind::Dense, EngineKind::Mps}) {
    auto cluster = make_engine(kind, {{ResourceKind::Cluster1D, 5}});
    EXPECT_NEAR(cluster->marginal_zero(3, BasisType::Z, 0.0), 0.5, 1e-15);
    auto ghz = make_engine(kind, {{ResourceKind::Ghz, 4}});
    EXPECT_NEAR(ghz->marginal_zero(1, BasisType::Z, 0.0), 0.5, 1e-15);
    ghz->collapse(1, BasisType::Z, 0.0, 1);
    EXPECT_NEAR(ghz->marginal_zero(4, BasisType::Z, 0.0), 0.0, 1e-15);
  }
}

TEST(Sim, MarginalsSumToOne) {
  std::mt19937_64 rng(37);
  for (EngineKind kind : {EngineKind::Dense, EngineKind::Mps}) {
    auto engine = make_engine(kind, {{ResourceKind::Cluster1D, 4}, {ResourceKind::Ghz, 3}});
    std::vector<int> order{5, 2, 7, 1, 4, 6, 3};
    for (int id : order) {
      const double angle = random_angles(1, rng)[0];
      const BasisType type = id == 4 ? BasisType::Z : BasisType::XY;
      const double p0 = engine->marginal_zero(id, type, angle);
      auto other = engine->clone();
      if (p0 < 1.0 - 1e-12) EXPECT_NEAR(p0 + other->collapse(id, type, angle, 1), 1.0, 1e-12);
      engine->collapse(id, type, angle, p0 > 0.5 ? 0 : 1);
    }
  }
}

TEST(Sim, GhzAllXHasEvenParity) {
  const MeasurementSchedule s = ghz_schedule({0.0, 0.0, 0.0});
  for (EngineKind kind : {EngineKind::Dense, EngineKind::Mps}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const ShotResult r = run_shot(s, 0, seed, kind);
      EXPECT_EQ((r.m[1] + r.m[2] + r.m[3]) % 2, 0);
    }
  }
  EXPECT_NEAR(exact_distribution(s, 0)[0], 1.0, 1e-12);
}

TEST(Sim, GhzParityMatchesCommutingCircuit) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto angles = random_angles(n, rng);
    oracle::M2 u = oracle::M2::Identity();
    for (double a : angles) u = oracle::rot_x(a) * u;
    const MeasurementSchedule s = ghz_schedule(angles);
    EXPECT_NEAR(exact_distribution(s, 0)[1], oracle::p_one(u), 1e-10);
    EXPECT_NEAR(analytic_one_probability(s, 0), oracle::p_one(u), 1e-12);
  }
}

TEST(Sim, ChainMatchesAlternatingCircuit) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 * (1 + rng() % 5) + 1;
    const auto angles = random_angles(n, rng);
    const MeasurementSchedule s = chain_schedule(angles);
    EXPECT_NEAR(exact_distribution(s, 0)[1], chain_oracle(angles), 1e-10);
    EXPECT_NEAR(analytic_one_probability(s, 0), chain_oracle(angles), 1e-12);
    EXPECT_NEAR(phase_overlap(effective_circuit(s, 0).v, [&] {
                  oracle::M2 u = oracle::M2::Identity();
                  for (std::size_t k = 0; k < n; ++k) {
                    u = (k % 2 == 0 ? oracle::rot_x(angles[k]) : oracle::rot_z(angles[k])) * u;
                  }
                  return u;
                }()),
                1.0, 1e-12);
  }
}

TEST(Sim, PauliZCutWiringMatchesEnumeration) {
  // Two 3-site chains separated by a Z cut; the second chain's first angle
  // flips with the first chain's output parity.
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 5; ++trial) {
    const auto t = random_angles(6, rng);
    MeasurementSchedule s;
    s.origin = "cluster";
    s.parts.push_back({ResourceKind::Cluster1D, 7});
    auto add = [&s](int id, int round, double theta, std::vector<int> a) {
      QubitRecord q;
      q.id = id;
      q.round = round;
      q.basis.theta = theta;
      q.a_ids = std::move(a);
      s.qubits.push_back(q);
    };
    add(1, 1, t[0], {});
    add(2, 2, t[1], {1});
    add(3, 3, t[2], {2});
    QubitRecord cut;
    cut.id = 4;
    cut.basis.type = BasisType::Z;
    s.qubits.push_back(cut);
    add(5, 4, t[3], {1, 3, 4});
    add(6, 5, t[4], {4, 5});
    add(7, 6, t[5], {6});
    s.o_ids = {4, 5, 7};
    // Oracle: first chain output y1 ~ Bernoulli, second chain's first angle
    // becomes (-1)^y1 t[3].
    const double p1 = chain_oracle({t[0], t[1], t[2]});
    const double q0 = chain_oracle({t[3], t[4], t[5]});
    const double q1 = chain_oracle({-t[3], t[4], t[5]});
    const double want = (1 - p1) * q0 + p1 * q1;
    EXPECT_NEAR(exact_distribution(s, 0)[1], want, 1e-10);
    EXPECT_NEAR(analytic_one_probability(s, 0), want, 1e-12);
    EXPECT_LT(cross_engine_deviation(s, 0), 1e-12);
  }
}

TEST(Sim, AnalyzerRejections) {
  MeasurementSchedule s = chain_schedule({0.3, 0.4, 0.5});
  s.origin = "handmade";
  EXPECT_THROW(analytic_one_probability(s, 0), ScheduleError);
  MeasurementSchedule broken = chain_schedule({0.3, 0.4, 0.5});
  broken.qubits[1].a_ids.clear();
  EXPECT_THROW(analytic_one_probability(broken, 0), ScheduleError);
}

TEST(Sim, ModThreeDeterministicShots) {
  const MeasurementSchedule s = mod3_protocol(4);
  for (std::uint64_t seed = 0; seed < 30; ++seed) EXPECT_EQ(run_shot(s, 0b0111, seed).y, 0);
}

TEST(Sim, EmptyScheduleOutputsConstant) {
  MeasurementSchedule s;
  s.origin = "ghz";
  s.c = 1;
  EXPECT_EQ(run_shot(s, 0, 5).y, 1);
  EXPECT_EQ(exact_distribution(s, 0)[1], 1.0);
}

TEST(Sim, SeededRunsRepeat) {
  const MeasurementSchedule s = or_protocol(3);
  for (std::uint64_t seed : {1ull, 99ull, 123456789ull}) {
    const ShotResult a = run_shot(s, 0b101, seed);
    const ShotResult b = run_shot(s, 0b101, seed);
    EXPECT_EQ(a.m, b.m);
    EXPECT_EQ(a.y, b.y);
  }
  EXPECT_NE(shot_seed(1, 0, 0), shot_seed(1, 0, 1));
  EXPECT_NE(shot_seed(1, 0, 0), shot_seed(1, 1, 0));
}

TEST(Sim, PiMultipleAdaptationIsIrrelevant) {
  for (int n = 1; n <= 2; ++n) {
    const MeasurementSchedule s = mod3_protocol(n);
    MeasurementSchedule mutated = s;
    int touched = 0;
    for (auto& q : mutated.qubits) {
      if (!is_pi_multiple(q.basis.theta) || q.round == 1) continue;
      q.a_ids.clear();
      for (const auto& other : s.qubits) {
        if (other.round < q.round) q.a_ids.push_back(other.id);
      }
      ++touched;
    }
    ASSERT_GT(touched, 0);
    for (Bits x = 0; x < (Bits{1} << n); ++x) {
      const auto a = exact_distribution(s, x), b = exact_distribution(mutated, x);
      EXPECT_NEAR(a[1], b[1], 1e-12);
    }
  }
}

TEST(Sim, CrossEngineAgreement) {
  for (Bits x = 0; x < 2; ++x) EXPECT_LT(cross_engine_deviation(mod3_protocol(1), x), 1e-12);
  const BooleanFunction f = make_and(2);
  const MeasurementSchedule lifted = lift_ghz_to_cluster(compile_pfd_to_ghz(solve_pfd(f), f(0)));
  for (Bits x = 0; x < 4; ++x) EXPECT_LT(cross_engine_deviation(lifted, x), 1e-12);
}

TEST(Sim, Capacities) {
  EXPECT_THROW(make_dense_engine({{ResourceKind::Cluster1D, 21}}), CapacityError);
  EXPECT_THROW(exact_distribution(chain_schedule(std::vector<double>(15, 0.1)), 0), CapacityError);
}

TEST(Sim, SideProcessorEnforcesCausality) {
  const MeasurementSchedule s = mod3_protocol(1);
  const auto it = std::find_if(s.qubits.begin(), s.qubits.end(),
                               [](const QubitRecord& q) { return !q.a_ids.empty(); });
  ASSERT_NE(it, s.qubits.end());
  SideProcessor sp(s, 1);
  EXPECT_THROW(sp.setting(it->id), ScheduleError);
  int want = dot2(it->p_mask, 1);
  for (int a : it->a_ids) {
    sp.record(a, 1);
    want ^= 1;
  }
  EXPECT_EQ(sp.setting(it->id), want);
  EXPECT_THROW(sp.record(it->a_ids.front(), 0), ScheduleError);
}

TEST(Sim, VerifyProtocols) {
  VerifyOptions opt;
  opt.shots_per_input = 100;
  const SimulationReport mod3 = verify_protocol(mod3_protocol(4), make_mod_p(4, 3, 0), opt);
  EXPECT_TRUE(mod3.all_correct());
  EXPECT_EQ(mod3.shots, 1600);
  ASSERT_TRUE(mod3.min_analytic.has_value());

  opt.shots_per_input = 200;
  const SimulationReport orr = verify_protocol(or_protocol(4), make_or(4), opt);
  EXPECT_EQ(orr.correct, orr.shots);
  EXPECT_TRUE(orr.all_correct());

  const BooleanFunction and2 = make_and(2);
  const SimulationReport ghz = verify_protocol(compile_pfd_to_ghz(solve_pfd(and2), 0), and2, opt);
  EXPECT_NEAR(*ghz.min_analytic, 1.0, 1e-12);
  EXPECT_NEAR(*ghz.min_exact, 1.0, 1e-10);
  EXPECT_THROW(verify_protocol(mod3_protocol(2), make_mod_p(3, 3, 0)), InvalidArgument);
}

TEST(Sim, BellScores) {
  VerifyOptions opt;
  opt.shots_per_input = 20;
  const BooleanFunction and2 = make_and(2);
  const BellScore a = bell_score(compile_pfd_to_ghz(solve_pfd(and2), 0), and2, opt);
  EXPECT_NEAR(a.quantum, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(a.beta, 0.75);
  EXPECT_DOUBLE_EQ(a.classical, 0.75);
  EXPECT_TRUE(a.violation);

  const BooleanFunction c2 = make_pairwise_and(4);
  const BellScore c = bell_score(compile_pfd_to_ghz(solve_pfd(c2), 0), c2, opt);
  EXPECT_NEAR(c.quantum, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(c.beta, 0.625);
  EXPECT_DOUBLE_EQ(c.classical, 0.625);

  const BooleanFunction par = make_parity(3);
  const BellScore l = bell_score(compile_pfd_to_ghz(solve_pfd(par), 0), par, opt);
  EXPECT_NEAR(l.quantum, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(l.beta, 1.0);
  EXPECT_FALSE(l.violation);
}

}  // namespace
}  // namespace l2mbqc
