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

#include <numbers>
#include <random>

#include "l2mbqc/qsp.hpp"
#include "l2mbqc/serialize.hpp"
#include "oracles.hpp"

namespace l2mbqc {
namespace {

constexpr double kPi = std::numbers::pi;

/// W_1 ... W_L with W_k = R_Z(xi_k) R_X(phi) R_Z(-xi_k), built from scratch.
oracle::M2 product(const QspAngles& a, double phi) {
  oracle::M2 u = oracle::M2::Identity();
  for (int k = 1; k <= a.L; ++k) u = u * oracle::rot_z(a.xi[k]) * oracle::rot_x(phi) * oracle::rot_z(-a.xi[k]);
  return u;
}

/// Worst readout failure of Mod_{p,j} over weights 0..n.
double mod_p_failure(const QspAngles& a, int p, int j, int n) {
  double worst = 0.0;
  for (int w = 0; w <= n; ++w) {
    const double p1 = oracle::p_one(product(a, 4 * kPi * (w - j) / p));
    const int want = w % p == j ? 0 : 1;
    worst = std::max(worst, want ? 1.0 - p1 : p1);
  }
  return worst;
}

TEST(Qsp, TargetsHaveDocumentedShape) {
  const QspTarget t = mod_p_target(5);
  EXPECT_EQ(t.L, 9);
  EXPECT_EQ(t.bits, (std::vector<std::uint8_t>{0, 1, 1}));
  EXPECT_NEAR(t.angle(1), 4 * kPi / 5, 1e-15);
  const QspTarget s = symmetric_target(make_pairwise_and(3));
  EXPECT_EQ(s.L, 13);
  EXPECT_NEAR(s.angle(2), 4 * kPi / 7, 1e-15);
}

TEST(Qsp, CoefficientsInterpolate) {
  const LaurentPair pair = solve_mod_p_coeffs(5, 0);
  EXPECT_TRUE(pair.structure_ok());
  EXPECT_LT(pair.residual, 1e-20);
  EXPECT_NEAR(pair.A(0.0), 1.0, 1e-12);
  EXPECT_NEAR(pair.B(4 * kPi / 5), 1.0, 1e-12);
  EXPECT_GT(pair.min_remainder(), -1e-12);
}

TEST(Qsp, ModPSynthesisAgainstDirectProduct) {
  for (int p : {3, 5}) {
    for (int j = 0; j < p; ++j) {
      const QspAngles a = synthesize_mod_p(p, j);
      EXPECT_EQ(a.L, 2 * p - 1);
      EXPECT_LT(mod_p_failure(a, p, j, 20), 1e-9) << "p=" << p << " j=" << j;
      EXPECT_LT(verify_qsp(a, p, j, 20), 1e-9);
    }
  }
}

TEST(Qsp, ReconstructionMatchesDirectProduct) {
  const QspAngles a = synthesize_mod_p(5, 0);
  for (double phi : {0.0, 0.3, 1.7, 4.0}) {
    const Mat2 u = reconstruct_unitary(a, phi, false);
    EXPECT_NEAR(phase_overlap(u, product(a, phi)), 1.0, 1e-12);
  }
}

TEST(Qsp, ZeroSignalIsIdentity) {
  const QspAngles a = synthesize_mod_p(3, 0);
  EXPECT_NEAR(phase_overlap(reconstruct_unitary(a, 0.0, false), Mat2::Identity()), 1.0, 1e-14);
}

TEST(Qsp, SymmetricSynthesis) {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<std::uint8_t> prof(n + 1);
      for (auto& b : prof) b = rng() & 1;
      const BooleanFunction f = BooleanFunction::from_profile(n, prof);
      const QspAngles a = synthesize_symmetric(f);
      EXPECT_LT(verify_symmetric(a), 1e-9);
      for (int w = 0; w <= n; ++w) {
        const double p1 = oracle::p_one(product(a, 2 * kPi * w / (2 * n + 1)));
        const double p_f = (prof[0] ? 1.0 - p1 : p1);
        EXPECT_NEAR(p_f, prof[w], 1e-9) << "n=" << n << " w=" << w;
      }
    }
  }
}

TEST(Qsp, FixtureAnglesLoad) {
  const auto sets = load_table2();
  ASSERT_EQ(sets.size(), 4u);
  for (const QspAngles& a : sets) {
    EXPECT_EQ(a.L, 2 * a.p - 1);
    EXPECT_EQ(a.j, 0);
    EXPECT_LT(mod_p_failure(a, a.p, 0, 20), 1e-10);
  }
}

}  // namespace
}  // namespace l2mbqc
