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

#include <cstdint>
#include <map>
#include <vector>

#include <boost/rational.hpp>

#include "l2mbqc/boolean.hpp"

namespace l2mbqc {

using Rational = boost::rational<std::int64_t>;

/// Angles phi_p (units of pi) with (-1)^(f(x)+f(0)) = cos(pi sum_p (p.x) phi_p).
struct PeriodicDecomposition {
  int n = 0;
  /// Nonzero entries only, keyed by mask.
  std::map<Bits, Rational> angles;

  std::size_t support() const { return angles.size(); }
  double angle(Bits mask) const;
  /// pi * sum_p (p.x) phi_p.
  double phase(Bits x) const;
};

/// M_{y,p} = 2^(|y|-1) chi_{p & y} over nonzero masks sorted ascending.
struct SierpinskiSystem {
  int n = 0;
  std::vector<Bits> masks;
  std::vector<std::vector<std::int64_t>> m;
  std::vector<std::vector<Rational>> m_inv;
};

SierpinskiSystem sierpinski_matrix(int n);

/// Closed-form entry of the inverse.
Rational sierpinski_inverse_entry(int n, Bits p, Bits y);

/// phi = M_inv (a + k), a the ANF coefficients over y != 0. k must be even.
PeriodicDecomposition solve_pfd(const BooleanFunction& f,
                                const std::vector<std::int64_t>& k = {});

struct PfdCheck {
  bool ok = false;
  double max_residual = 0.0;
};

PfdCheck verify_pfd(const BooleanFunction& f, const PeriodicDecomposition& d,
                    double tol = 1e-9);

struct SparsityCertificate {
  /// Entries of the canonical (k = 0) solution that are not integers.
  int non_integer_count = 0;
  /// Per nonzero mask (ascending): 2^(n-1) phi_p is an odd integer.
  std::vector<bool> odd_integer;
  /// ANF coefficient of the full mask.
  bool full_degree = false;
  /// full_degree and every flag set: no admissible offset shrinks the support.
  bool certifies_full_sparsity = false;
};

SparsityCertificate sparsity_certificate(const BooleanFunction& f);

/// phi_S = (-1)^(|S|-1) (2^(n-|S|+1) - 1) / 2^(n-1), the closed form as
/// usually quoted. It satisfies verify_pfd only for n <= 2.
PeriodicDecomposition or_decomposition(int n);
/// phi_S = 1 / 2^(n-1) for every S, from AND_n by De Morgan. Valid for all n.
PeriodicDecomposition or_decomposition_demorgan(int n);
/// phi_S = (-1)^(|S|-1) / 2^(n-1).
PeriodicDecomposition and_decomposition(int n);
/// +1/2 on singletons and -1/2 on the full mask.
PeriodicDecomposition pairwise_and_decomposition(int n);

/// Nonadaptive GHZ parameters: qubit j measures X(0) or X(pi phi_j) as
/// selected by p_j.x; the output is the parity of all outcomes xor c.
struct GhzStrategy {
  int n = 0;
  std::vector<Bits> p_rows;
  std::vector<double> angles;  // radians, pi * phi_j
  std::vector<Rational> exact;  // phi_j in units of pi
  int c = 0;
};

GhzStrategy ghz_strategy(const PeriodicDecomposition& d, int f0);

}  // namespace l2mbqc
