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

#include "l2mbqc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>

#include <boost/dynamic_bitset.hpp>

namespace l2mbqc {

namespace {

constexpr int kDenseCap = 20;
constexpr int kEnumerationCap = 14;
// Branches lighter than this are dropped during enumeration; the mass lost
// is below 2^14 * 1e-17.
constexpr double kBranchFloor = 1e-17;

/// Amplitude factor <m(theta)|s> for the XY plane, or <m|s> for Pauli Z.
Complex projection_coefficient(BasisType type, double angle, int outcome, int s) {
  if (type == BasisType::Z) return s == outcome ? 1.0 : 0.0;
  const double h = 1.0 / std::sqrt(2.0);
  if (s == 0) return std::polar(h, angle / 2);
  return std::polar(outcome ? -h : h, -angle / 2);
}

int part_size_total(const std::vector<ResourcePart>& parts) {
  int n = 0;
  for (const auto& p : parts) n += p.n_qubits;
  return n;
}

class DenseEngine final : public Engine {
 public:
  explicit DenseEngine(const std::vector<ResourcePart>& parts) {
    const int n = part_size_total(parts);
    if (n > kDenseCap) {
      throw CapacityError("dense engine holds at most 20 qubits, got " + std::to_string(n));
    }
    for (int id = 1; id <= n; ++id) ids_.push_back(id);
    psi_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    for (Eigen::Index idx = 0; idx < psi_.size(); ++idx) {
      Complex amp = 1.0;
      int start = 0;
      for (const auto& part : parts) {
        const int k = part.n_qubits;
        if (k == 0) continue;
        const auto bits = static_cast<Bits>((idx >> start) & ((Eigen::Index{1} << k) - 1));
        if (part.kind == ResourceKind::Cluster1D) {
          const int sign = std::popcount(bits & (bits >> 1)) & 1;
          amp *= (sign ? -1.0 : 1.0) * std::pow(2.0, -0.5 * k);
        } else {
          const Bits all = (Bits{1} << k) - 1;
          amp *= (bits == 0 || bits == all) ? 1.0 / std::sqrt(2.0) : 0.0;
        }
        start += k;
      }
      psi_[idx] = amp;
    }
  }

  double marginal_zero(int id, BasisType type, double angle) const override {
    const double w0 = weight(position(id), type, angle, 0);
    const double w1 = weight(position(id), type, angle, 1);
    return w0 / (w0 + w1);
  }

  double collapse(int id, BasisType type, double angle, int outcome) override {
    const int pos = position(id);
    const double total = weight(pos, type, angle, 0) + weight(pos, type, angle, 1);
    const Complex c0 = projection_coefficient(type, angle, outcome, 0);
    const Complex c1 = projection_coefficient(type, angle, outcome, 1);
    const Eigen::Index low = Eigen::Index{1} << pos;
    Eigen::VectorXcd next(psi_.size() / 2);
    for (Eigen::Index r = 0; r < next.size(); ++r) {
      const Eigen::Index i0 = (r & (low - 1)) | ((r & ~(low - 1)) << 1);
      next[r] = c0 * psi_[i0] + c1 * psi_[i0 | low];
    }
    const double w = next.squaredNorm();
    if (!(w > 0)) throw ScheduleError("collapse onto an outcome of probability zero");
    psi_ = next / std::sqrt(w);
    ids_.erase(ids_.begin() + pos);
    return w / total;
  }

  std::unique_ptr<Engine> clone() const override { return std::make_unique<DenseEngine>(*this); }

 private:
  int position(int id) const {
    const auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) throw ScheduleError("qubit " + std::to_string(id) + " is not live");
    return static_cast<int>(it - ids_.begin());
  }

  double weight(int pos, BasisType type, double angle, int outcome) const {
    const Complex c0 = projection_coefficient(type, angle, outcome, 0);
    const Complex c1 = projection_coefficient(type, angle, outcome, 1);
    const Eigen::Index low = Eigen::Index{1} << pos;
    double w = 0.0;
    for (Eigen::Index r = 0; r < psi_.size() / 2; ++r) {
      const Eigen::Index i0 = (r & (low - 1)) | ((r & ~(low - 1)) << 1);
      w += std::norm(c0 * psi_[i0] + c1 * psi_[i0 | low]);
    }
    return w;
  }

  std::vector<int> ids_;
  Eigen::VectorXcd psi_;
};

// Amplitude of a chain: l^T T_1[s_1] ... T_k[s_k] r. The bond dimension is
// fixed at 2 by the tensor type; measured sites are absorbed into the right
// neighbour, or into r for the last site.
struct MpsSite {
  int id = 0;
  std::array<Mat2, 2> t;
};

struct MpsChain {
  Eigen::Vector2cd l;
  Eigen::Vector2cd r;
  std::vector<MpsSite> sites;
};

class MpsEngine final : public Engine {
 public:
  explicit MpsEngine(const std::vector<ResourcePart>& parts) {
    const double h = 1.0 / std::sqrt(2.0);
    int id = 1;
    for (const auto& part : parts) {
      if (part.n_qubits == 0) continue;
      MpsChain c;
      c.r << 1.0, 1.0;
      if (part.kind == ResourceKind::Cluster1D) {
        c.l << 1.0, 0.0;
        for (int k = 0; k < part.n_qubits; ++k) {
          MpsSite site{id++, {}};
          // (-1)^(a s) delta_{b,s} / sqrt 2
          site.t[0] << h, 0.0, h, 0.0;
          site.t[1] << 0.0, h, 0.0, -h;
          c.sites.push_back(site);
        }
      } else {
        c.l << h, h;
        for (int k = 0; k < part.n_qubits; ++k) {
          MpsSite site{id++, {}};
          site.t[0] << 1.0, 0.0, 0.0, 0.0;
          site.t[1] << 0.0, 0.0, 0.0, 1.0;
          c.sites.push_back(site);
        }
      }
      chains_.push_back(std::move(c));
    }
  }

  double marginal_zero(int id, BasisType type, double angle) const override {
    const auto [ci, si] = locate(id);
    const double w0 = weight(chains_[ci], si, projector(chains_[ci].sites[si], type, angle, 0));
    const double w1 = weight(chains_[ci], si, projector(chains_[ci].sites[si], type, angle, 1));
    return w0 / (w0 + w1);
  }

  double collapse(int id, BasisType type, double angle, int outcome) override {
    const auto [ci, si] = locate(id);
    MpsChain& c = chains_[ci];
    const Mat2 m0 = projector(c.sites[si], type, angle, 0);
    const Mat2 m1 = projector(c.sites[si], type, angle, 1);
    const double w0 = weight(c, si, m0), w1 = weight(c, si, m1);
    const double w = outcome ? w1 : w0;
    if (!(w > 0)) throw ScheduleError("collapse onto an outcome of probability zero");
    const Mat2 m = (outcome ? m1 : m0) / std::sqrt(w);
    if (si + 1 < c.sites.size()) {
      for (auto& t : c.sites[si + 1].t) t = m * t;
    } else {
      c.r = m * c.r;
    }
    c.sites.erase(c.sites.begin() + static_cast<std::ptrdiff_t>(si));
    return w / (w0 + w1);
  }

  std::unique_ptr<Engine> clone() const override { return std::make_unique<MpsEngine>(*this); }

 private:
  std::pair<std::size_t, std::size_t> locate(int id) const {
    for (std::size_t ci = 0; ci < chains_.size(); ++ci) {
      const auto& sites = chains_[ci].sites;
      for (std::size_t si = 0; si < sites.size(); ++si) {
        if (sites[si].id == id) return {ci, si};
      }
    }
    throw ScheduleError("qubit " + std::to_string(id) + " is not live");
  }

  static Mat2 projector(const MpsSite& site, BasisType type, double angle, int outcome) {
    return projection_coefficient(type, angle, outcome, 0) * site.t[0] +
           projection_coefficient(type, angle, outcome, 1) * site.t[1];
  }

  /// Squared norm of the chain with site `at` replaced by the matrix m.
  static double weight(const MpsChain& c, std::size_t at, const Mat2& m) {
    Mat2 env = c.l.conjugate() * c.l.transpose();
    for (std::size_t k = 0; k < c.sites.size(); ++k) {
      if (k == at) {
        env = m.adjoint() * env * m;
      } else {
        const auto& t = c.sites[k].t;
        env = t[0].adjoint() * env * t[0] + t[1].adjoint() * env * t[1];
      }
    }
    return std::real((c.r.adjoint() * env * c.r)(0, 0));
  }

  std::vector<MpsChain> chains_;
};

double basis_angle(const QubitRecord& q, const SideProcessor& sp) {
  if (q.basis.type == BasisType::Z) return 0.0;
  return measured_angle(q.basis, sp.setting(q.id));
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void require_cap(const MeasurementSchedule& s, int cap, const char* what) {
  if (s.n_qubits() > cap) {
    throw CapacityError(std::string(what) + " is limited to " + std::to_string(cap) +
                        " qubits, schedule has " + std::to_string(s.n_qubits()));
  }
}

// ---------------------------------------------------------------------------
// Chain analysis.

using BitRow = boost::dynamic_bitset<>;

struct Segment {
  std::vector<int> ids;  // chain order
  int left_cut = 0;
  int right_cut = 0;
  BitRow out;
};

/// Incremental F2 span of segment output vectors with combination tracking.
class OutputSpan {
 public:
  explicit OutputSpan(std::size_t width) : width_(width) {}

  void add(const BitRow& v, std::size_t segment) {
    BitRow combo(64);
    combo.resize(std::max<std::size_t>(segment + 1, 64));
    combo.set(segment);
    BitRow row = v;
    reduce(row, combo);
    if (row.none()) return;
    pivots_.push_back(row.find_first());
    rows_.push_back(row);
    combos_.push_back(combo);
  }

  /// Segments whose outputs sum to v, if v is in the span.
  std::optional<std::vector<std::size_t>> decompose(BitRow v) const {
    BitRow combo(64);
    reduce(v, combo);
    if (v.any()) return std::nullopt;
    std::vector<std::size_t> out;
    for (auto k = combo.find_first(); k != BitRow::npos; k = combo.find_next(k)) out.push_back(k);
    return out;
  }

  std::size_t width() const { return width_; }

 private:
  void reduce(BitRow& v, BitRow& combo) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (v.test(pivots_[k])) {
        v ^= rows_[k];
        BitRow c = combos_[k];
        const std::size_t n = std::max(c.size(), combo.size());
        c.resize(n);
        combo.resize(n);
        combo ^= c;
      }
    }
  }

  std::size_t width_;
  std::vector<std::size_t> pivots_;
  std::vector<BitRow> rows_;
  std::vector<BitRow> combos_;
};

struct SiteRule {
  int id = 0;
  bool x_axis = true;
  /// Segments whose output parity flips the sign; empty with `free` set
  /// when the angle is a multiple of pi and the sign does not matter.
  std::vector<std::size_t> flips;
  bool free = false;
};

struct ChainModel {
  std::vector<Segment> segments;
  std::vector<std::vector<SiteRule>> rules;  // per segment
  std::vector<std::size_t> output;           // segments summed into y
};

const std::set<std::string>& known_origins() {
  static const std::set<std::string> tags = {"cluster", "ghz",       "lift", "mod3",
                                             "modp",    "symmetric", "or"};
  return tags;
}

void require_origin(const MeasurementSchedule& s) {
  if (known_origins().count(s.origin) == 0) {
    throw ScheduleError("schedule origin '" + s.origin + "' is not a known compiler tag");
  }
}

BitRow row_of(std::size_t width, const std::vector<int>& ids) {
  BitRow r(width);
  for (int id : ids) r.flip(static_cast<std::size_t>(id));
  return r;
}

ChainModel build_chain_model(const MeasurementSchedule& s) {
  const std::size_t width = static_cast<std::size_t>(s.n_qubits()) + 1;
  ChainModel model;
  int start = 1;
  for (const auto& part : s.parts) {
    if (part.kind != ResourceKind::Cluster1D) {
      throw ScheduleError("chain analysis needs Cluster1D resources only");
    }
    Segment cur;
    for (int id = start; id < start + part.n_qubits; ++id) {
      if (s.qubit(id).basis.type == BasisType::Z) {
        if (!cur.ids.empty()) {
          cur.right_cut = id;
          model.segments.push_back(cur);
        }
        cur = Segment{};
        cur.left_cut = id;
      } else {
        cur.ids.push_back(id);
      }
    }
    if (!cur.ids.empty()) model.segments.push_back(cur);
    start += part.n_qubits;
  }

  OutputSpan span(width);
  for (std::size_t t = 0; t < model.segments.size(); ++t) {
    Segment& seg = model.segments[t];
    if (seg.ids.size() % 2 == 0) {
      throw ScheduleError("chain segment starting at qubit " + std::to_string(seg.ids.front()) +
                          " has even length");
    }
    std::vector<SiteRule> rules;
    for (std::size_t i = 0; i < seg.ids.size(); ++i) {
      const QubitRecord& q = s.qubit(seg.ids[i]);
      if (std::abs(q.basis.offset) > 1e-15) {
        throw ScheduleError("qubit " + std::to_string(q.id) + ": offsets are not allowed on chains");
      }
      std::vector<int> intrinsic;
      for (std::size_t j = 0; j < i; ++j) {
        if ((i - j) % 2 == 1) intrinsic.push_back(seg.ids[j]);
      }
      if (i % 2 == 1 && seg.left_cut != 0) intrinsic.push_back(seg.left_cut);
      BitRow e = row_of(width, q.a_ids) ^ row_of(width, intrinsic);
      SiteRule rule;
      rule.id = q.id;
      rule.x_axis = i % 2 == 0;
      if (auto combo = span.decompose(e)) {
        rule.flips = *combo;
      } else if (is_pi_multiple(q.basis.theta)) {
        rule.free = true;
      } else {
        throw ScheduleError("qubit " + std::to_string(q.id) +
                            ": adaptation does not cancel the byproduct signs");
      }
      rules.push_back(rule);
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < seg.ids.size(); i += 2) out.push_back(seg.ids[i]);
    if (seg.left_cut) out.push_back(seg.left_cut);
    if (seg.right_cut) out.push_back(seg.right_cut);
    seg.out = row_of(width, out);
    span.add(seg.out, t);
    model.rules.push_back(std::move(rules));
  }
  auto y = span.decompose(row_of(width, s.o_ids));
  if (!y) throw ScheduleError("output mask is not a sum of chain segment outputs");
  model.output = *y;
  return model;
}

Mat2 segment_unitary(const MeasurementSchedule& s, const std::vector<SiteRule>& rules, Bits x,
                     const std::vector<int>& ys) {
  Mat2 v = Mat2::Identity();
  for (const SiteRule& rule : rules) {
    const QubitRecord& q = s.qubit(rule.id);
    int sign = dot2(q.p_mask, x) ^ q.basis.bias;
    for (std::size_t t : rule.flips) sign ^= ys.at(t);
    const double theta = (rule.free || sign == 0) ? q.basis.theta : -q.basis.theta;
    v = (rule.x_axis ? rx(theta) : rz(theta)) * v;
  }
  return v;
}

bool is_ghz_schedule(const MeasurementSchedule& s) {
  return s.parts.size() == 1 && s.parts[0].kind == ResourceKind::Ghz;
}

EffectiveCircuit ghz_effective(const MeasurementSchedule& s, Bits x) {
  std::set<int> o(s.o_ids.begin(), s.o_ids.end());
  if (static_cast<int>(o.size()) != s.n_qubits()) {
    throw ScheduleError("GHZ analysis needs the parity of every outcome");
  }
  double total = 0.0;
  for (const auto& q : s.qubits) {
    if (q.basis.type != BasisType::XY || !q.a_ids.empty()) {
      throw ScheduleError("GHZ analysis needs nonadaptive XY-plane measurements");
    }
    total += measured_angle(q.basis, dot2(q.p_mask, x));
  }
  EffectiveCircuit e;
  e.v = rx(total);
  const double p1 = std::norm(e.v(1, 0));
  e.p_one = s.c ? 1.0 - p1 : p1;
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------

SideProcessor::SideProcessor(const MeasurementSchedule& s, Bits x)
    : s_(s), x_(x), m_(s.n_qubits() + 1, 0), recorded_(s.n_qubits() + 1, 0) {}

int SideProcessor::setting(int id) const {
  const QubitRecord& q = s_.qubit(id);
  for (int a : q.a_ids) {
    if (!recorded_.at(a)) {
      throw ScheduleError("setting of qubit " + std::to_string(id) +
                          " queried before qubit " + std::to_string(a) + " was measured");
    }
  }
  return setting_bit(q, x_, m_);
}

void SideProcessor::record(int id, int outcome) {
  if (recorded_.at(id)) throw ScheduleError("qubit " + std::to_string(id) + " measured twice");
  m_.at(id) = outcome & 1;
  recorded_.at(id) = 1;
}

int SideProcessor::output() const {
  int y = s_.c;
  for (int o : s_.o_ids) y ^= m_.at(o);
  return y;
}

std::unique_ptr<Engine> make_dense_engine(const std::vector<ResourcePart>& parts) {
  return std::make_unique<DenseEngine>(parts);
}

std::unique_ptr<Engine> make_mps_engine(const std::vector<ResourcePart>& parts) {
  return std::make_unique<MpsEngine>(parts);
}

std::unique_ptr<Engine> make_engine(EngineKind kind, const std::vector<ResourcePart>& parts) {
  return kind == EngineKind::Dense ? make_dense_engine(parts) : make_mps_engine(parts);
}

std::vector<int> measurement_order(const MeasurementSchedule& s) {
  std::vector<int> order;
  for (const auto& q : s.qubits) order.push_back(q.id);
  std::stable_sort(order.begin(), order.end(),
                   [&s](int a, int b) { return s.qubit(a).round < s.qubit(b).round; });
  return order;
}

ShotResult run_shot(const MeasurementSchedule& s, Bits x, std::uint64_t seed, EngineKind kind) {
  validate(s);
  auto engine = make_engine(kind, s.parts);
  SideProcessor sp(s, x);
  std::mt19937_64 rng(seed);
  ShotResult out;
  for (int id : measurement_order(s)) {
    const QubitRecord& q = s.qubit(id);
    const double angle = basis_angle(q, sp);
    const double p0 = engine->marginal_zero(id, q.basis.type, angle);
    const int m = uniform01(rng) < p0 ? 0 : 1;
    engine->collapse(id, q.basis.type, angle, m);
    sp.record(id, m);
    out.marginals.push_back(p0);
  }
  out.m = sp.outcomes();
  out.y = sp.output();
  return out;
}

std::vector<double> replay_marginals(const MeasurementSchedule& s, Bits x,
                                     const std::vector<int>& ordered_outcomes, EngineKind kind) {
  validate(s);
  const std::vector<int> order = measurement_order(s);
  if (ordered_outcomes.size() != order.size()) throw InvalidArgument("outcome count mismatch");
  auto engine = make_engine(kind, s.parts);
  SideProcessor sp(s, x);
  std::vector<double> out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const QubitRecord& q = s.qubit(order[k]);
    const double angle = basis_angle(q, sp);
    out.push_back(engine->marginal_zero(q.id, q.basis.type, angle));
    engine->collapse(q.id, q.basis.type, angle, ordered_outcomes[k]);
    sp.record(q.id, ordered_outcomes[k]);
  }
  return out;
}

double cross_engine_deviation(const MeasurementSchedule& s, Bits x) {
  validate(s);
  require_cap(s, kEnumerationCap, "cross-engine enumeration");
  const std::vector<int> order = measurement_order(s);
  double worst = 0.0;
  std::function<void(std::size_t, Engine&, Engine&, SideProcessor&, double)> walk =
      [&](std::size_t k, Engine& dense, Engine& mps, SideProcessor& sp, double weight) {
        if (k == order.size()) return;
        const QubitRecord& q = s.qubit(order[k]);
        const double angle = basis_angle(q, sp);
        const double pd = dense.marginal_zero(q.id, q.basis.type, angle);
        const double pm = mps.marginal_zero(q.id, q.basis.type, angle);
        worst = std::max(worst, std::abs(pd - pm));
        for (int m = 0; m < 2; ++m) {
          const double p = m == 0 ? pd : 1.0 - pd;
          if (weight * p < kBranchFloor) continue;
          auto d2 = dense.clone();
          auto m2 = mps.clone();
          d2->collapse(q.id, q.basis.type, angle, m);
          m2->collapse(q.id, q.basis.type, angle, m);
          SideProcessor sp2 = sp;
          sp2.record(q.id, m);
          walk(k + 1, *d2, *m2, sp2, weight * p);
        }
      };
  auto dense = make_dense_engine(s.parts);
  auto mps = make_mps_engine(s.parts);
  SideProcessor sp(s, x);
  walk(0, *dense, *mps, sp, 1.0);
  return worst;
}

EffectiveCircuit effective_circuit(const MeasurementSchedule& s, Bits x) {
  validate(s);
  require_origin(s);
  if (s.n_qubits() == 0) {
    EffectiveCircuit e;
    e.p_one = s.c;
    return e;
  }
  if (is_ghz_schedule(s)) return ghz_effective(s, x);
  const ChainModel model = build_chain_model(s);
  if (model.segments.size() != 1) {
    throw ScheduleError("effective circuit needs a single chain segment");
  }
  EffectiveCircuit e;
  e.v = segment_unitary(s, model.rules[0], x, {});
  const double p1 = std::norm(e.v(1, 0));
  const bool flips = !model.output.empty();
  const double py = flips ? p1 : 0.0;
  e.p_one = s.c ? 1.0 - py : py;
  return e;
}

double analytic_one_probability(const MeasurementSchedule& s, Bits x) {
  validate(s);
  require_origin(s);
  if (s.n_qubits() == 0) return s.c;
  if (is_ghz_schedule(s)) return ghz_effective(s, x).p_one;
  const ChainModel model = build_chain_model(s);
  const std::size_t count = model.segments.size();
  std::vector<int> ys(count, 0);
  double p_one = 0.0;
  std::function<void(std::size_t, double)> walk = [&](std::size_t t, double weight) {
    if (t == count) {
      int y = s.c;
      for (std::size_t k : model.output) y ^= ys[k];
      if (y) p_one += weight;
      return;
    }
    const Mat2 v = segment_unitary(s, model.rules[t], x, ys);
    const double p1 = std::norm(v(1, 0));
    for (int b = 0; b < 2; ++b) {
      const double p = b ? p1 : 1.0 - p1;
      if (p <= 0.0) continue;
      ys[t] = b;
      walk(t + 1, weight * p);
    }
    ys[t] = 0;
  };
  walk(0, 1.0);
  return p_one;
}

std::array<double, 2> exact_distribution(const MeasurementSchedule& s, Bits x) {
  validate(s);
  require_cap(s, kEnumerationCap, "branch enumeration");
  const std::vector<int> order = measurement_order(s);
  std::array<double, 2> dist{0.0, 0.0};
  std::function<void(std::size_t, Engine&, SideProcessor&, double)> walk =
      [&](std::size_t k, Engine& engine, SideProcessor& sp, double weight) {
        if (k == order.size()) {
          dist[sp.output()] += weight;
          return;
        }
        const QubitRecord& q = s.qubit(order[k]);
        const double angle = basis_angle(q, sp);
        const double p0 = engine.marginal_zero(q.id, q.basis.type, angle);
        for (int m = 0; m < 2; ++m) {
          const double p = m == 0 ? p0 : 1.0 - p0;
          if (weight * p < kBranchFloor) continue;
          auto next = engine.clone();
          next->collapse(q.id, q.basis.type, angle, m);
          SideProcessor sp2 = sp;
          sp2.record(q.id, m);
          walk(k + 1, *next, sp2, weight * p);
        }
      };
  auto engine = make_dense_engine(s.parts);
  SideProcessor sp(s, x);
  walk(0, *engine, sp, 1.0);
  return dist;
}

std::uint64_t shot_seed(std::uint64_t seed, Bits x, std::uint64_t shot) {
  return splitmix64(splitmix64(splitmix64(seed) ^ x) ^ shot);
}

bool SimulationReport::all_correct(double tol) const {
  if (min_analytic && *min_analytic < 1.0 - tol) return false;
  if (min_exact && *min_exact < 1.0 - tol) return false;
  return correct == shots;
}

InputReport verify_input(const MeasurementSchedule& s, const BooleanFunction& f, Bits x,
                         const VerifyOptions& opt) {
  if (f.n() != s.arity) {
    throw InvalidArgument("function arity " + std::to_string(f.n()) +
                          " does not match schedule arity " + std::to_string(s.arity));
  }
  validate(s);
  InputReport in;
  in.x = x;
  in.target = f(x);
  if (opt.analytic && known_origins().count(s.origin) > 0) {
    try {
      const double p1 = analytic_one_probability(s, x);
      in.analytic = in.target ? p1 : 1.0 - p1;
    } catch (const ScheduleError&) {
      // Not a chain or GHZ layout the analyzer can resolve.
    }
  }
  if (s.n_qubits() <= std::min(opt.exact_cap, kEnumerationCap)) {
    in.exact = exact_distribution(s, x)[in.target];
  }
  for (int k = 0; k < opt.shots_per_input; ++k) {
    const ShotResult shot = run_shot(s, x, shot_seed(opt.seed, x, k), opt.engine);
    ++in.shots;
    if (shot.y == in.target) ++in.correct;
  }
  return in;
}

SimulationReport verify_protocol(const MeasurementSchedule& s, const BooleanFunction& f,
                                 const VerifyOptions& opt) {
  SimulationReport rep;
  rep.target = s.target;
  rep.beta = nchvm_bound(f);
  rep.resources = resources(s);
  for (Bits x = 0; x < (Bits{1} << f.n()); ++x) {
    InputReport in = verify_input(s, f, x, opt);
    if (in.analytic) rep.min_analytic = std::min(rep.min_analytic.value_or(1.0), *in.analytic);
    if (in.exact) rep.min_exact = std::min(rep.min_exact.value_or(1.0), *in.exact);
    rep.shots += in.shots;
    rep.correct += in.correct;
    rep.inputs.push_back(in);
  }
  return rep;
}

BellScore bell_score(const MeasurementSchedule& s, const BooleanFunction& f,
                     const VerifyOptions& opt) {
  const SimulationReport rep = verify_protocol(s, f, opt);
  BellScore b;
  b.beta = rep.beta;
  double total = 0.0;
  for (const auto& in : rep.inputs) {
    if (in.analytic) {
      total += *in.analytic;
    } else if (in.exact) {
      total += *in.exact;
    } else {
      total += in.shots > 0 ? static_cast<double>(in.correct) / in.shots : 0.0;
    }
  }
  const Bits count = Bits{1} << f.n();
  b.quantum = total / count;
  int best = 0;
  for (Bits a = 0; a < count; ++a) {
    int agree = 0;
    for (Bits x = 0; x < count; ++x) agree += f(x) == dot2(a, x);
    best = std::max({best, agree, static_cast<int>(count) - agree});
  }
  b.classical = static_cast<double>(best) / count;
  b.violation = b.quantum > b.beta + 1e-12;
  if (b.quantum >= 1.0 - 1e-9 && b.beta < 1.0 - 1e-12 && !b.violation) {
    throw std::logic_error("deterministic protocol for a nonlinear function fails to exceed beta");
  }
  return b;
}

}  // namespace l2mbqc
