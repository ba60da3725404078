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

// l2mbqc command-line tool. Subcommands read and write JSON so that
// `l2mbqc compile ... | l2mbqc simulate --all` works as a pipeline.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "l2mbqc/boolean.hpp"
#include "l2mbqc/mbqc.hpp"
#include "l2mbqc/onequbit.hpp"
#include "l2mbqc/pfd.hpp"
#include "l2mbqc/qsp.hpp"
#include "l2mbqc/serialize.hpp"
#include "l2mbqc/sim.hpp"

namespace {

using namespace l2mbqc;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

constexpr double kTable2Tol = 1e-10;
constexpr double kSynthTol = 1e-9;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string fn;
  int n = -1;
  int p = 3;
  int j = 0;
  std::string format;
  std::string out;
  std::string in = "-";
  std::string angles_path;
  std::string protocol;
  std::string x;
  std::string engine = "mps";
  bool all = false;
  bool check_paper = false;
  bool table2 = false;
  std::optional<double> phi;
  int shots = 100;
  std::optional<std::uint64_t> seed;
  int sweep = 20;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("L2MBQC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("L2MBQC_SEED is not an unsigned integer");
    }
  }
  return 1;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

void emit(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

BooleanFunction require_function(const Options& o) {
  if (o.fn.empty()) throw UsageError("--fn is required");
  if (o.n < 0) throw UsageError("--n is required");
  return build_function(o.fn, o.n);
}

std::string anf_text(const AnfPolynomial& a) {
  if (a.monomials.empty()) return "0";
  std::string s;
  for (Bits m : a.monomials) {
    if (!s.empty()) s += " + ";
    if (m == 0) {
      s += "1";
      continue;
    }
    for (int i = 0; i < a.n; ++i) {
      if ((m >> i) & 1) s += "x" + std::to_string(i + 1);
    }
  }
  return s;
}

Bits parse_bits(const std::string& text, int n) {
  if (static_cast<int>(text.size()) != n) {
    throw UsageError("--x needs " + std::to_string(n) + " bits, x_1 first");
  }
  Bits x = 0;
  for (int i = 0; i < n; ++i) {
    if (text[i] == '1') {
      x |= Bits{1} << i;
    } else if (text[i] != '0') {
      throw UsageError("--x must be a string of 0 and 1");
    }
  }
  return x;
}

std::string bits_text(Bits x, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += ((x >> i) & 1) ? '1' : '0';
  return s;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const Options& o) {
  const BooleanFunction f = require_function(o);
  const AnfPolynomial a = anf(f);
  const auto spec = walsh_spectrum(f);
  if (o.format == "table") {
    std::ostringstream s;
    s << std::setprecision(12);
    s << "function  " << o.fn << " n=" << f.n() << "\n";
    s << "anf       " << anf_text(a) << "\n";
    s << "degree    " << a.degree() << "\n";
    s << "f_max     " << f_max(f) << "\n";
    s << "beta      " << nchvm_bound(f) << "\n";
    emit(o, s.str());
    return kExitOk;
  }
  Json monomials = Json::array();
  for (Bits m : a.monomials) monomials.push_back(m);
  emit(o, Json{{"function", to_json(f)},
               {"anf", {{"monomials", monomials}, {"text", anf_text(a)}, {"degree", a.degree()}}},
               {"walsh_scaled", spec},
               {"f_max", f_max(f)},
               {"beta", nchvm_bound(f)}});
  return kExitOk;
}

Json check_json(const PfdCheck& c) { return Json{{"ok", c.ok}, {"max_residual", c.max_residual}}; }

int cmd_pfd(const Options& o) {
  const BooleanFunction f = require_function(o);
  if (f.n() > 6) throw UsageError("pfd is limited to n <= 6");
  const PeriodicDecomposition d = solve_pfd(f);
  const PfdCheck check = verify_pfd(f, d);
  const SparsityCertificate cert = sparsity_certificate(f);
  Json odd = Json::array();
  for (bool b : cert.odd_integer) odd.push_back(b);
  Json out{{"decomposition", to_json(d)},
           {"support", d.support()},
           {"verify", check_json(check)},
           {"certificate",
            {{"non_integer_count", cert.non_integer_count},
             {"odd_integer", odd},
             {"full_degree", cert.full_degree},
             {"certifies_full_sparsity", cert.certifies_full_sparsity}}}};
  bool ok = check.ok;
  if (o.check_paper) {
    std::optional<PeriodicDecomposition> closed;
    if (f == make_or(f.n())) {
      closed = or_decomposition(f.n());
    } else if (f == make_and(f.n())) {
      closed = and_decomposition(f.n());
    } else if (f == make_pairwise_and(f.n())) {
      closed = pairwise_and_decomposition(f.n());
    } else {
      throw UsageError("--check-paper knows closed forms for and, or and c2 only");
    }
    const PfdCheck pc = verify_pfd(f, *closed);
    out["closed_form"] = {{"decomposition", to_json(*closed)}, {"verify", check_json(pc)}};
    ok = ok && pc.ok;
  }
  emit(o, out);
  return ok ? kExitOk : kExitVerify;
}

Json unitary_json(const Mat2& u) {
  Json rows = Json::array();
  for (int r = 0; r < 2; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 2; ++c) row.push_back({u(r, c).real(), u(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

/// Readout bit favoured at each weight and the per-weight failure.
std::pair<std::vector<int>, std::vector<double>> mod_p_sweep(const QspAngles& a, int p, int j,
                                                             int n) {
  std::vector<int> bits;
  std::vector<double> failure;
  for (int w = 0; w <= n; ++w) {
    const Mat2 u = reconstruct_unitary(a, mod_p_signal(p, j, w), false);
    const double p1 = std::norm(u(1, 0));
    const int want = (w % p) == j ? 0 : 1;
    bits.push_back(p1 > 0.5 ? 1 : 0);
    failure.push_back(want ? 1.0 - p1 : p1);
  }
  return {bits, failure};
}

Json sweep_json(const std::vector<double>& failure) {
  Json arr = Json::array();
  for (std::size_t w = 0; w < failure.size(); ++w) arr.push_back({{"w", w}, {"failure", failure[w]}});
  return arr;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

QspAngles table2_for(int p) {
  for (const QspAngles& a : load_table2()) {
    if (a.p == p) return a;
  }
  throw UsageError("no fixture angles for p = " + std::to_string(p));
}

int cmd_qsp(const Options& o) {
  if (!o.fn.empty()) {
    const BooleanFunction f = require_function(o);
    if (!f.is_symmetric()) throw UsageError("--fn must be symmetric for qsp");
    const QspAngles a = synthesize_symmetric(f);
    const double fail = verify_symmetric(a);
    emit(o, Json{{"angles", to_json(a)}, {"failure", fail}});
    return fail < kSynthTol ? kExitOk : kExitVerify;
  }
  if (o.p < 3 || o.p % 2 == 0) throw UsageError("--p must be an odd integer >= 3");
  if (o.j < 0 || o.j >= o.p) throw UsageError("--j must lie in 0..p-1");
  const QspAngles own = synthesize_mod_p(o.p, o.j);
  if (o.phi) {
    const Mat2 u = reconstruct_unitary(own, *o.phi, false);
    emit(o, Json{{"phi", *o.phi},
                 {"unitary", unitary_json(u)},
                 {"identity_overlap", phase_overlap(u, Mat2::Identity())}});
    return kExitOk;
  }
  const auto [own_bits, own_fail] = mod_p_sweep(own, o.p, o.j, o.sweep);
  Json out{{"angles", to_json(own)}, {"failure", max_of(own_fail)}, {"sweep", sweep_json(own_fail)}};
  bool ok = max_of(own_fail) < kSynthTol;
  if (o.table2) {
    if (o.j != 0) throw UsageError("--table2 angles exist for j = 0 only");
    const QspAngles fixture = table2_for(o.p);
    const auto [fix_bits, fix_fail] = mod_p_sweep(fixture, o.p, 0, o.sweep);
    const bool same = fix_bits == own_bits;
    out["table2"] = {{"angles", to_json(fixture)}, {"failure", max_of(fix_fail)}, {"same_outputs", same}};
    ok = ok && same && max_of(fix_fail) < kTable2Tol;
  }
  emit(o, out);
  return ok ? kExitOk : kExitVerify;
}

int cmd_table2(const Options& o) {
  Json rows = Json::array();
  bool ok = true;
  std::ostringstream table;
  table << std::scientific << std::setprecision(3);
  table << "p   L   fixture_failure  own_failure  same_outputs\n";
  for (const QspAngles& fixture : load_table2()) {
    const QspAngles own = synthesize_mod_p(fixture.p, 0);
    const auto [fb, ff] = mod_p_sweep(fixture, fixture.p, 0, o.sweep);
    const auto [ob, of] = mod_p_sweep(own, fixture.p, 0, o.sweep);
    const bool same = fb == ob;
    ok = ok && same && max_of(ff) < kTable2Tol && max_of(of) < kSynthTol;
    rows.push_back({{"p", fixture.p},
                    {"fixture", to_json(fixture)},
                    {"fixture_failure", max_of(ff)},
                    {"own", to_json(own)},
                    {"own_failure", max_of(of)},
                    {"same_outputs", same}});
    table << std::left << std::setw(4) << fixture.p << std::setw(4) << fixture.L << std::setw(17)
          << max_of(ff) << std::setw(13) << max_of(of) << (same ? "yes" : "no") << "\n";
  }
  if (o.format == "table") {
    emit(o, table.str());
  } else {
    emit(o, Json{{"sweep_max_weight", o.sweep}, {"rows", rows}});
  }
  return ok ? kExitOk : kExitVerify;
}

int cmd_compile(const Options& o) {
  MeasurementSchedule s;
  const std::string& proto = o.protocol;
  auto need_n = [&o]() {
    if (o.n < 0) throw UsageError("--n is required");
    return o.n;
  };
  if (proto == "mod3") {
    s = mod3_protocol(need_n());
  } else if (proto == "modp") {
    const QspAngles a = o.angles_path.empty() ? synthesize_mod_p(o.p, o.j)
                                              : angles_from_json(parse_json(read_input(o.angles_path)));
    s = modp_protocol(o.p, o.j, need_n(), a);
  } else if (proto == "symmetric") {
    const BooleanFunction f = require_function(o);
    if (!f.is_symmetric()) throw UsageError("--fn must be symmetric");
    s = qsp_symmetric_protocol(f, synthesize_symmetric(f));
  } else if (proto == "or") {
    s = or_protocol(need_n());
  } else if (proto == "ghz" || proto == "lift") {
    const BooleanFunction f = require_function(o);
    if (f.n() > 6) throw UsageError("GHZ compilation is limited to n <= 6");
    s = compile_pfd_to_ghz(solve_pfd(f), f(0));
    s.target = o.fn;
    if (proto == "lift") s = lift_ghz_to_cluster(s);
  } else {
    throw UsageError("unknown protocol '" + proto + "'");
  }
  Json j = to_json(s);
  j["resources"] = to_json(resources(s));
  emit(o, j);
  return kExitOk;
}

int cmd_simulate(const Options& o) {
  const MeasurementSchedule s = deserialize(read_input(o.in));
  VerifyOptions vo;
  vo.shots_per_input = o.shots;
  vo.seed = resolve_seed(o);
  if (o.engine == "dense") {
    vo.engine = EngineKind::Dense;
  } else if (o.engine != "mps") {
    throw UsageError("--engine must be mps or dense");
  }
  if (o.all == !o.x.empty()) throw UsageError("give exactly one of --x or --all");
  if (o.shots < 0) throw UsageError("--shots must be nonnegative");

  std::optional<BooleanFunction> f;
  if (!o.fn.empty()) {
    f = build_function(o.fn, s.arity);
  } else if (!s.target.empty()) {
    f = build_function(s.target, s.arity);
  }

  std::vector<Bits> inputs;
  if (o.all) {
    for (Bits x = 0; x < (Bits{1} << s.arity); ++x) inputs.push_back(x);
  } else {
    inputs.push_back(parse_bits(o.x, s.arity));
  }

  if (!f) {
    // No target to score against: report the output distribution only.
    Json rows = Json::array();
    for (Bits x : inputs) {
      int ones = 0;
      for (int k = 0; k < o.shots; ++k) ones += run_shot(s, x, shot_seed(vo.seed, x, k), vo.engine).y;
      rows.push_back({{"x", bits_text(x, s.arity)}, {"shots", o.shots}, {"y1", ones}});
    }
    emit(o, Json{{"inputs", rows}, {"resources", to_json(resources(s))}});
    return kExitOk;
  }

  SimulationReport rep;
  if (o.all) {
    rep = verify_protocol(s, *f, vo);
  } else {
    rep.target = s.target;
    rep.beta = nchvm_bound(*f);
    rep.resources = resources(s);
    const InputReport in = verify_input(s, *f, inputs[0], vo);
    rep.min_analytic = in.analytic;
    rep.min_exact = in.exact;
    rep.shots = in.shots;
    rep.correct = in.correct;
    rep.inputs.push_back(in);
  }
  if (o.format == "csv") {
    emit(o, to_csv(rep));
  } else if (o.format == "table") {
    std::ostringstream t;
    int inputs_ok = 0;
    for (const auto& in : rep.inputs) inputs_ok += in.correct == in.shots;
    const ResourceReport& r = rep.resources;
    t << "inputs     " << inputs_ok << "/" << rep.inputs.size() << "\n";
    t << "shots      " << rep.correct << "/" << rep.shots << "\n";
    t << std::setprecision(12);
    if (rep.min_analytic) t << "analytic   " << *rep.min_analytic << "\n";
    if (rep.min_exact) t << "exact      " << *rep.min_exact << "\n";
    t << "resources  (" << r.l_q << ", " << r.l_c << ", " << r.t_c << ", " << r.t_q << ")\n";
    emit(o, t.str());
  } else {
    emit(o, to_json(rep));
  }
  return rep.all_correct() ? kExitOk : kExitVerify;
}

int cmd_table1(const Options& o) {
  const int n = o.n < 0 ? 4 : o.n;
  const auto rows = table1_rows(n, o.p);
  if (o.format == "json") {  // the human table is the default here
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    emit(o, Json{{"n", n}, {"p", o.p}, {"rows", arr}});
    return kExitOk;
  }
  auto tuple = [](const ResourceReport& r) {
    return "(" + std::to_string(r.l_q) + ", " + std::to_string(r.l_c) + ", " + std::to_string(r.t_c) +
           ", " + std::to_string(r.t_q) + ")";
  };
  std::ostringstream t;
  t << std::left;
  t << "n=" << n << " p=" << o.p << "  tuples are (L_Q, L_C, T_C, T_Q)\n";
  t << std::setw(28) << "algorithm" << std::setw(26) << "L_Q" << std::setw(4) << "T_Q" << std::setw(16)
    << "L_C" << std::setw(16) << "T_C" << std::setw(22) << "measured"
    << "formula\n";
  for (const auto& r : rows) {
    t << std::setw(28) << r.algorithm << std::setw(26) << r.l_q << std::setw(4) << r.t_q << std::setw(16)
      << r.l_c << std::setw(16) << r.t_c;
    if (r.has_measured) {
      t << std::setw(22) << tuple(r.measured) << tuple(r.formula);
    } else {
      t << std::setw(22) << "-" << "-";
    }
    t << "\n";
  }
  emit(o, t.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l2mbqc: parity-assisted measurement-based computation toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_fn = [&o](CLI::App* c) {
    c->add_option("--fn", o.fn, "function: mod3:0, and, or, c2, parity, const0, sym:0110, hex:...");
    c->add_option("--n", o.n, "input arity")->check(CLI::Range(0, kMaxArity));
  };
  auto add_format = [&o](CLI::App* c, const std::vector<std::string>& allowed) {
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember(allowed));
  };
  auto add_out = [&o](CLI::App* c) { c->add_option("--out", o.out, "write output to a file"); };

  CLI::App* analyze = app.add_subcommand("analyze", "ANF, Walsh spectrum, f_max and beta");
  add_fn(analyze);
  add_format(analyze, {"json", "table"});
  add_out(analyze);

  CLI::App* pfd = app.add_subcommand("pfd", "periodic Fourier decomposition");
  add_fn(pfd);
  pfd->add_flag("--check-paper", o.check_paper, "also verify the closed-form decomposition");
  add_out(pfd);

  CLI::App* qsp = app.add_subcommand("qsp", "QSP angle synthesis and failure sweep");
  qsp->add_option("--p", o.p, "odd modulus");
  qsp->add_option("--j", o.j, "residue");
  add_fn(qsp);
  qsp->add_option("--sweep", o.sweep, "largest Hamming weight in the sweep")->check(CLI::Range(0, 1000));
  qsp->add_flag("--table2", o.table2, "compare against the checked-in angle fixture");
  qsp->add_option("--phi", o.phi, "report the unitary at this signal angle");
  add_out(qsp);

  CLI::App* compile = app.add_subcommand("compile", "emit a measurement schedule as JSON");
  compile->add_option("--protocol", o.protocol, "mod3, modp, symmetric, or, ghz, lift")->required();
  add_fn(compile);
  compile->add_option("--p", o.p, "odd modulus");
  compile->add_option("--j", o.j, "residue");
  compile->add_option("--angles", o.angles_path, "QSP angles JSON for modp");
  add_out(compile);

  CLI::App* simulate = app.add_subcommand("simulate", "simulate a schedule read from JSON");
  simulate->add_option("--in", o.in, "schedule file, - for stdin");
  simulate->add_option("--x", o.x, "input bits, x_1 first");
  simulate->add_flag("--all", o.all, "every input");
  simulate->add_option("--shots", o.shots, "shots per input");
  simulate->add_option("--seed", o.seed, "RNG seed (default: $L2MBQC_SEED or 1)");
  simulate->add_option("--engine", o.engine, "mps or dense");
  simulate->add_option("--fn", o.fn, "target function (default: the schedule's target)");
  add_format(simulate, {"json", "csv", "table"});
  add_out(simulate);

  CLI::App* table1 = app.add_subcommand("table1", "resource cost table");
  table1->add_option("--n", o.n, "input arity")->check(CLI::Range(1, 6));
  table1->add_option("--p", o.p, "odd modulus");
  add_format(table1, {"json", "table"});
  add_out(table1);

  CLI::App* table2 = app.add_subcommand("table2", "check the checked-in QSP angles");
  table2->add_option("--sweep", o.sweep, "largest Hamming weight in the sweep")->check(CLI::Range(0, 1000));
  add_format(table2, {"json", "table"});
  add_out(table2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (analyze->parsed()) return cmd_analyze(o);
    if (pfd->parsed()) return cmd_pfd(o);
    if (qsp->parsed()) return cmd_qsp(o);
    if (compile->parsed()) return cmd_compile(o);
    if (simulate->parsed()) return cmd_simulate(o);
    if (table1->parsed()) return cmd_table1(o);
    if (table2->parsed()) return cmd_table2(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  }
  return kExitUsage;
}
