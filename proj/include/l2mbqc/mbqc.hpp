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

#include <string>
#include <vector>

#include "l2mbqc/boolean.hpp"
#include "l2mbqc/common.hpp"
#include "l2mbqc/onequbit.hpp"
#include "l2mbqc/pfd.hpp"
#include "l2mbqc/qsp.hpp"

namespace l2mbqc {

enum class ResourceKind { Cluster1D, Ghz };

/// One resource-state component. Components occupy consecutive ids.
struct ResourcePart {
  ResourceKind kind = ResourceKind::Cluster1D;
  int n_qubits = 0;

  bool operator==(const ResourcePart&) const = default;
};

enum class BasisType { XY, Z };

/// XY-plane basis measures X(offset + (-1)^(s xor bias) theta), where
/// X(t) = cos(t) X + sin(t) Y. Z measures the Pauli Z.
struct Basis {
  BasisType type = BasisType::XY;
  double theta = 0.0;
  double offset = 0.0;
  int bias = 0;

  bool operator==(const Basis&) const = default;
};

struct QubitRecord {
  /// 1-based and equal to the position in the concatenated resource.
  int id = 0;
  int round = 1;
  Basis basis;
  Bits p_mask = 0;
  /// Outcome ids entering the setting bit, sorted ascending.
  std::vector<int> a_ids;
  /// Optional audit form of theta.
  std::string exact;

  bool operator==(const QubitRecord&) const = default;
};

struct MeasurementSchedule {
  int arity = 0;
  std::vector<ResourcePart> parts;
  /// Sorted by id; qubits[k].id == k + 1.
  std::vector<QubitRecord> qubits;
  std::vector<int> o_ids;
  int c = 0;
  /// Running-parity registers counted in L_C.
  int registers = 0;
  /// Constructor that produced the schedule ("ghz", "cluster", "lift",
  /// "mod3", "modp", "symmetric", "or").
  std::string origin;
  /// Function the schedule computes, as accepted by build_function.
  std::string target;

  int n_qubits() const { return static_cast<int>(qubits.size()); }
  const QubitRecord& qubit(int id) const { return qubits.at(id - 1); }
  QubitRecord& qubit(int id) { return qubits.at(id - 1); }

  bool operator==(const MeasurementSchedule&) const = default;
};

/// Throws ScheduleError on broken ids, part sizes, causality or masks.
void validate(const MeasurementSchedule& s);

/// Measurement angle for setting bit `setting`.
double measured_angle(const Basis& b, int setting);

/// Setting bit s = p.x xor a.m; m is indexed by id (m[0] unused).
int setting_bit(const QubitRecord& q, Bits x, const std::vector<int>& m);

/// Sign-normalizes, strips outer Z runs and lays the program on a chain:
/// X sites odd, Z sites even, zero-angle fillers between same-axis gates.
MeasurementSchedule compile_to_cluster(const OneQubitProgram& prog);

MeasurementSchedule compile_pfd_to_ghz(const PeriodicDecomposition& d, int f0);

MeasurementSchedule lift_ghz_to_cluster(const MeasurementSchedule& ghz);

MeasurementSchedule mod3_protocol(int n);

MeasurementSchedule modp_protocol(int p, int j, int n, const QspAngles& angles);

MeasurementSchedule qsp_symmetric_protocol(const BooleanFunction& f,
                                           const QspAngles& angles);

/// Stage 1: kappa compiled OR-reduction chains separated by Pauli-Z cuts.
/// Stage 2: lifted GHZ chain for OR_kappa wired to the stage-1 parities.
MeasurementSchedule or_protocol(int n);

struct ResourceReport {
  int l_q = 0;
  int l_c = 0;
  int t_q = 0;
  int t_c = 0;

  long volume() const { return static_cast<long>(l_q + l_c) * (t_q + t_c); }
  bool operator==(const ResourceReport&) const = default;
};

/// L_Q qubits; L_C distinct nonzero P rows plus registers; T_Q = 3 for any
/// nonempty chain or GHZ resource; T_C the largest round index.
ResourceReport resources(const MeasurementSchedule& s);

/// One line of the resource-cost table, formulas evaluated at (n, p).
struct Table1Row {
  std::string algorithm;
  std::string l_q;
  std::string t_q;
  std::string l_c;
  std::string t_c;
  /// Measured on a schedule built by this library, when one exists.
  bool has_measured = false;
  ResourceReport measured;
  /// Closed-form values, when known.
  ResourceReport formula;
};

std::vector<Table1Row> table1_rows(int n, int p);

}  // namespace l2mbqc
