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

#include <algorithm>
#include <numbers>
#include <random>
#include <vector>

#include "l2mbqc/mbqc.hpp"
#include "oracles.hpp"

namespace l2mbqc::testing_schedules {

inline MeasurementSchedule ghz_schedule(const std::vector<double>& angles) {
  MeasurementSchedule s;
  s.origin = "ghz";
  s.parts.push_back({ResourceKind::Ghz, static_cast<int>(angles.size())});
  for (std::size_t k = 0; k < angles.size(); ++k) {
    QubitRecord q;
    q.id = static_cast<int>(k) + 1;
    q.basis.theta = angles[k];
    s.qubits.push_back(q);
    s.o_ids.push_back(q.id);
  }
  return s;
}

/// Chain measuring X(theta_1) Z(theta_2) X(theta_3) ... with the standard
/// byproduct corrections and the odd-site parity as output.
inline MeasurementSchedule chain_schedule(const std::vector<double>& angles) {
  MeasurementSchedule s;
  s.origin = "cluster";
  const int n = static_cast<int>(angles.size());
  s.parts.push_back({ResourceKind::Cluster1D, n});
  for (int k = 1; k <= n; ++k) {
    QubitRecord q;
    q.id = k;
    q.basis.theta = angles[k - 1];
    for (int j = 1; j < k; ++j) {
      if ((k - j) % 2 == 1) q.a_ids.push_back(j);
    }
    for (int a : q.a_ids) q.round = std::max(q.round, s.qubit(a).round + 1);
    s.qubits.push_back(q);
    if (k % 2 == 1) s.o_ids.push_back(k);
  }
  return s;
}

/// |<1| R_X(t_n) ... R_Z(t_2) R_X(t_1) |0>|^2.
inline double chain_oracle(const std::vector<double>& angles) {
  oracle::M2 u = oracle::M2::Identity();
  for (std::size_t k = 0; k < angles.size(); ++k) {
    u = (k % 2 == 0 ? oracle::rot_x(angles[k]) : oracle::rot_z(angles[k])) * u;
  }
  return oracle::p_one(u);
}

inline std::vector<double> random_angles(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-std::numbers::pi, std::numbers::pi);
  std::vector<double> out(n);
  for (auto& a : out) a = d(rng);
  return out;
}

}  // namespace l2mbqc::testing_schedules
