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
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "l2mbqc/boolean.hpp"
#include "l2mbqc/common.hpp"
#include "l2mbqc/pfd.hpp"

namespace l2mbqc {

/// Working precision for synthesis (113-bit mantissa).
using Quad = boost::multiprecision::cpp_bin_float_quad;

/// Interpolation data for A(phi) = sum_j a_j cos(j phi / 2) and
/// B(phi) = sum_j b_j sin(j phi / 2), odd j <= L.
///
/// At each grid point A = 1 - bit, B = bit and both derivatives vanish.
struct QspTarget {
  int L = 0;
  /// Grid angles in units of pi.
  std::vector<Rational> grid;
  std::vector<std::uint8_t> bits;
  /// The grid together with its negation is the set of K-th roots of unity
  /// in u = exp(i phi). 0 if unknown.
  int root_order = 0;

  double angle(std::size_t w) const;
};

/// Grid phi_w = 2 pi w / (2n+1), w = 0..n, L = 4n+1, bits f(w) xor f(0).
QspTarget symmetric_target(const BooleanFunction& f);
/// Grid phi_w = 4 pi w / p, w = 0..(p-1)/2, L = 2p-1, bits (w != 0).
QspTarget mod_p_target(int p);

struct LaurentPair {
  int L = 0;
  /// Indexed by j = 0..L; only odd j are populated.
  std::vector<Quad> a;
  std::vector<Quad> b;
  int root_order = 0;
  /// Max residual of the interpolation conditions.
  double residual = 0.0;

  double A(double phi) const;
  double B(double phi) const;
  /// QSP2/QSP3: sizes match L and the wrong-parity entries are zero.
  bool structure_ok() const;
  /// min over a dense circle sample of 1 - A^2 - B^2.
  double min_remainder(int samples = 4096) const;
};

LaurentPair solve_coeffs(const QspTarget& target);
/// f must be symmetric. Uses symmetric_target.
LaurentPair solve_symmetric_coeffs(const BooleanFunction& f);
/// The j = 0 polynomial; other j reuse it with a shifted signal angle.
LaurentPair solve_mod_p_coeffs(int p, int j);

/// Angles of U = W_1 ... W_L R_Z(xi_0), W_k = R_Z(xi_k) R_X(phi) R_Z(-xi_k).
struct QspAngles {
  int L = 0;
  /// xi[0] is the trailing Z rotation; xi[1..L] the conjugations.
  std::vector<double> xi;
  /// Mod_{p,j} target when p > 0, otherwise the symmetric profile.
  int p = 0;
  int j = 0;
  std::vector<std::uint8_t> profile;
  double residual = 0.0;

  bool is_mod_p() const { return p > 0; }
  /// f(0) of a symmetric target: readout is complemented when set.
  int flip() const { return !is_mod_p() && !profile.empty() ? profile[0] : 0; }
};

/// Completes (A, B) to a unitary and peels one rotation layer at a time.
QspAngles complete_and_extract_angles(const LaurentPair& pair);

Mat2 reconstruct_unitary(const QspAngles& angles, double phi,
                         bool with_trailing = true);

/// max over a circle grid of |A - A'| and |B - B'| for the reconstruction.
double pair_match_residual(const LaurentPair& pair, const QspAngles& angles,
                           int samples = 1024);

/// Signal angle 4 pi (w - j) / p.
double mod_p_signal(int p, int j, int w);
/// Signal angle 2 pi w / (2n+1).
double symmetric_signal(int n, int w);

/// 1 - min_w |<Mod_{p,j}(w)| U(signal) |0>|^2 over w = 0..n.
double verify_qsp(const QspAngles& angles, int p, int j, int n);
/// Same sweep for a symmetric target over w = 0..n.
double verify_symmetric(const QspAngles& angles);

QspAngles synthesize_mod_p(int p, int j);
QspAngles synthesize_symmetric(const BooleanFunction& f);

}  // namespace l2mbqc
