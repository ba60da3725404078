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
#include <optional>
#include <string>
#include <vector>

#include "l2mbqc/common.hpp"

namespace l2mbqc {

/// A function F_2^n -> F_2 held as a packed truth table.
///
/// Index convention: the table entry for x is at the integer whose binary
/// expansion has x_1 as its least significant bit.
class BooleanFunction {
 public:
  /// Builds from an explicit table of 2^n entries (each 0 or 1).
  static BooleanFunction from_table(
      int n, const std::vector<std::uint8_t>& table,
      std::string kind = "custom", std::map<std::string, int> params = {});

  /// Builds a symmetric function from its Hamming-weight profile (n+1 bits).
  static BooleanFunction from_profile(
      int n, const std::vector<std::uint8_t>& profile,
      std::string kind = "symmetric", std::map<std::string, int> params = {});

  int n() const { return n_; }
  const std::string& kind() const { return kind_; }
  const std::map<std::string, int>& params() const { return params_; }

  /// Throws InvalidArgument if x has bits above position n.
  int evaluate(Bits x) const;
  int operator()(Bits x) const { return evaluate(x); }

  std::size_t size() const { return std::size_t{1} << n_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Present iff the function is symmetric (detected or declared).
  const std::optional<std::vector<std::uint8_t>>& symmetric_profile() const {
    return profile_;
  }
  bool is_symmetric() const { return profile_.has_value(); }

  /// Lower-case hex of the packed table, most significant nibble first.
  std::string table_hex() const;

  bool operator==(const BooleanFunction& other) const {
    return n_ == other.n_ && words_ == other.words_;
  }

 private:
  BooleanFunction() = default;
  void detect_profile();

  int n_ = 0;
  std::vector<std::uint64_t> words_;
  std::optional<std::vector<std::uint8_t>> profile_;
  std::string kind_;
  std::map<std::string, int> params_;
};

/// Parses the hex produced by table_hex().
BooleanFunction function_from_hex(
    int n, const std::string& hex, std::string kind = "custom",
    std::map<std::string, int> params = {});

// Builders.
BooleanFunction make_constant(int n, int b);
BooleanFunction make_and(int n);
BooleanFunction make_or(int n);
BooleanFunction make_parity(int n);
/// C_n^2: 1 iff |x| = 2 or 3 mod 4 (the second least significant bit of |x|).
BooleanFunction make_pairwise_and(int n);
/// Mod_{p,j}: 0 iff |x| = j mod p. p is any odd integer >= 3.
BooleanFunction make_mod_p(int n, int p, int j);

/// Parses names such as "mod3:0", "mod5:2", "and", "or", "c2", "parity",
/// "const0", "const1", "sym:0110" (profile bits) and "hex:<table hex>".
BooleanFunction build_function(const std::string& spec, int n);

struct AnfPolynomial {
  int n = 0;
  /// Monomials as subset masks, sorted ascending. Mask 0 is the constant 1.
  std::vector<Bits> monomials;

  int degree() const;
  int evaluate(Bits x) const;
  bool contains(Bits mask) const;
};

/// Moebius transform over the subset lattice.
AnfPolynomial anf(const BooleanFunction& f);

/// Integer spectrum 2^n * f_hat(k) for every k (fast Walsh-Hadamard).
std::vector<std::int64_t> walsh_spectrum(const BooleanFunction& f);

/// f_hat(k) = 2^-n sum_x (-1)^(f(x) + k.x).
double walsh_hadamard(const BooleanFunction& f, Bits k);

/// max_k |f_hat(k)|.
double f_max(const BooleanFunction& f);

/// (1 + f_max) / 2.
double nchvm_bound(const BooleanFunction& f);

struct ModPAnfCoefficients {
  int p = 0;
  int n = 0;
  /// a[mu][j] for mu = 0..n, j = 0..p-1.
  std::vector<std::vector<std::uint8_t>> a;

  /// ANF of Mod_{p,j} on n bits assembled from the complete-mu-tic terms.
  AnfPolynomial anf_for(int j) const;
};

ModPAnfCoefficients mod_p_anf_coeffs(int p, int n);

}  // namespace l2mbqc
