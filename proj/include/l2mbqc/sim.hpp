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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "l2mbqc/boolean.hpp"
#include "l2mbqc/common.hpp"
#include "l2mbqc/mbqc.hpp"

namespace l2mbqc {

/// Holds x and the outcome record; settings are derived on demand.
class SideProcessor {
 public:
  SideProcessor(const MeasurementSchedule& s, Bits x);

  /// s_k = P_k.x + A_k.m mod 2. Throws ScheduleError if a dependency of
  /// qubit `id` has not been recorded yet.
  int setting(int id) const;
  void record(int id, int outcome);
  bool recorded(int id) const { return recorded_.at(id) != 0; }
  int outcome(int id) const { return m_.at(id); }
  /// y = o.m + c.
  int output() const;
  /// Outcomes indexed by id; entry 0 unused.
  const std::vector<int>& outcomes() const { return m_; }

 private:
  const MeasurementSchedule& s_;
  Bits x_;
  std::vector<int> m_;
  std::vector<std::uint8_t> recorded_;
};

enum class EngineKind { Dense, Mps };

/// A resource state supporting single-qubit projective measurements in any
/// order. Qubits keep their schedule ids after others are measured.
class Engine {
 public:
  virtual ~Engine() = default;
  /// Probability of outcome 0 for qubit `id` measured in `type` at `angle`.
  virtual double marginal_zero(int id, BasisType type, double angle) const = 0;
  /// Projects onto the given outcome and renormalizes; returns its probability.
  virtual double collapse(int id, BasisType type, double angle, int outcome) = 0;
  virtual std::unique_ptr<Engine> clone() const = 0;
};

/// Dense state vector over all qubits of the parts; at most 20 qubits.
std::unique_ptr<Engine> make_dense_engine(const std::vector<ResourcePart>& parts);
/// Matrix product state per part with bond dimension 2.
std::unique_ptr<Engine> make_mps_engine(const std::vector<ResourcePart>& parts);
std::unique_ptr<Engine> make_engine(EngineKind kind, const std::vector<ResourcePart>& parts);

/// Measurement order used by every shot: by round, then by id.
std::vector<int> measurement_order(const MeasurementSchedule& s);

struct ShotResult {
  std::vector<int> m;  // indexed by id, entry 0 unused
  int y = 0;
  /// Marginal probability of outcome 0 at each step of the measurement order.
  std::vector<double> marginals;
};

/// Samples one run with inverse-CDF draws from std::mt19937_64(seed).
ShotResult run_shot(const MeasurementSchedule& s, Bits x, std::uint64_t seed,
                    EngineKind kind = EngineKind::Mps);

/// Replays a fixed outcome sequence (in measurement order) and returns the
/// marginals seen. Outcomes of probability zero are rejected.
std::vector<double> replay_marginals(const MeasurementSchedule& s, Bits x,
                                     const std::vector<int>& ordered_outcomes,
                                     EngineKind kind);

/// Largest marginal difference between the engines over every branch of the
/// measurement tree. Capped at 14 qubits.
double cross_engine_deviation(const MeasurementSchedule& s, Bits x);

struct EffectiveCircuit {
  Mat2 v = Mat2::Identity();
  /// pr(y = 1) including the constant c.
  double p_one = 0.0;
};

/// Branch-independent single-qubit unitary for a single-chain cluster
/// schedule or a nonadaptive GHZ schedule. Throws ScheduleError otherwise.
EffectiveCircuit effective_circuit(const MeasurementSchedule& s, Bits x);

/// pr(y = 1) from the chain decomposition, including schedules whose chains
/// are wired to each other through Pauli-Z cuts.
double analytic_one_probability(const MeasurementSchedule& s, Bits x);

/// Exact {pr(y = 0), pr(y = 1)} by enumerating every outcome branch on the
/// dense engine. At most 14 qubits.
std::array<double, 2> exact_distribution(const MeasurementSchedule& s, Bits x);

/// Mixes (seed, input, shot) into an independent per-shot seed (splitmix64).
std::uint64_t shot_seed(std::uint64_t seed, Bits x, std::uint64_t shot);

struct InputReport {
  Bits x = 0;
  int target = 0;
  std::optional<double> analytic;  // pr(y = f(x))
  std::optional<double> exact;     // pr(y = f(x))
  int shots = 0;
  int correct = 0;
};

struct SimulationReport {
  std::string target;
  std::vector<InputReport> inputs;
  std::optional<double> min_analytic;
  std::optional<double> min_exact;
  int shots = 0;
  int correct = 0;
  double beta = 0.0;
  ResourceReport resources;

  double empirical_rate() const { return shots > 0 ? static_cast<double>(correct) / shots : 1.0; }
  /// Every check that ran agrees with f within tol.
  bool all_correct(double tol = 1e-9) const;
};

struct VerifyOptions {
  int shots_per_input = 100;
  std::uint64_t seed = 1;
  EngineKind engine = EngineKind::Mps;
  bool analytic = true;
  int exact_cap = 14;
};

/// Analytic, exact and sampled checks of one input against f(x).
InputReport verify_input(const MeasurementSchedule& s, const BooleanFunction& f, Bits x,
                         const VerifyOptions& opt = {});

/// verify_input over all 2^n inputs.
SimulationReport verify_protocol(const MeasurementSchedule& s, const BooleanFunction& f,
                                 const VerifyOptions& opt = {});

struct BellScore {
  /// Success averaged over uniformly random inputs.
  double quantum = 0.0;
  double beta = 0.0;
  /// Best affine strategy found by enumerating all 2^(n+1) of them.
  double classical = 0.0;
  bool violation = false;
};

BellScore bell_score(const MeasurementSchedule& s, const BooleanFunction& f,
                     const VerifyOptions& opt = {});

}  // namespace l2mbqc
