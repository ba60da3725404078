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

#include "l2mbqc/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace l2mbqc {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError((path.empty() ? std::string("/") : path) + ": " + msg);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "/" + key, "missing field");
  return *it;
}

const Json* optional_field(const Json& j, const std::string& key) {
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

int as_small(const Json& j, const std::string& path, std::int64_t lo, std::int64_t hi) {
  const std::int64_t v = as_int(j, path);
  if (v < lo || v > hi) {
    fail(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

int as_bit(const Json& j, const std::string& path) { return as_small(j, path, 0, 1); }

Bits as_mask(const Json& j, const std::string& path) {
  return static_cast<Bits>(as_small(j, path, 0, (std::int64_t{1} << kMaxArity) - 1));
}

double as_double(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t k) { return path + "/" + std::to_string(k); }

std::vector<std::uint8_t> bits_from_json(const Json& j, const std::string& path) {
  std::vector<std::uint8_t> out;
  const Json& arr = as_array(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    out.push_back(static_cast<std::uint8_t>(as_bit(arr[k], at(path, k))));
  }
  return out;
}

const char* kind_name(ResourceKind k) { return k == ResourceKind::Cluster1D ? "cluster1d" : "ghz"; }

ResourceKind kind_from(const Json& j, const std::string& path) {
  const std::string s = as_string(j, path);
  if (s == "cluster1d") return ResourceKind::Cluster1D;
  if (s == "ghz") return ResourceKind::Ghz;
  fail(path, "unknown resource type '" + s + "'");
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

Json to_json(const BooleanFunction& f) {
  Json params = Json::object();
  for (const auto& [k, v] : f.params()) params[k] = v;
  return Json{{"n", f.n()}, {"kind", f.kind()}, {"params", params}, {"table_hex", f.table_hex()}};
}

BooleanFunction function_from_json(const Json& j) {
  const int n = as_small(field(j, "n", ""), "/n", 0, kMaxArity);
  const std::string kind = as_string(field(j, "kind", ""), "/kind");
  std::map<std::string, int> params;
  if (const Json* p = optional_field(j, "params")) {
    if (!p->is_object()) fail("/params", "expected an object");
    for (const auto& [k, v] : p->items()) {
      params[k] = as_small(v, "/params/" + k, std::numeric_limits<int>::min(),
                           std::numeric_limits<int>::max());
    }
  }
  try {
    return function_from_hex(n, as_string(field(j, "table_hex", ""), "/table_hex"), kind, params);
  } catch (const InvalidArgument& e) {
    fail("/table_hex", e.what());
  }
}

Json to_json(const PeriodicDecomposition& d) {
  Json angles = Json::array();
  for (const auto& [mask, phi] : d.angles) {
    angles.push_back({{"mask", mask}, {"num", phi.numerator()}, {"den", phi.denominator()}});
  }
  return Json{{"n", d.n}, {"angles", angles}};
}

PeriodicDecomposition decomposition_from_json(const Json& j) {
  PeriodicDecomposition d;
  d.n = as_small(field(j, "n", ""), "/n", 0, 6);
  const Json& arr = as_array(field(j, "angles", ""), "/angles");
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string path = at("/angles", k);
    const Bits mask = as_mask(field(arr[k], "mask", path), path + "/mask");
    if (mask == 0 || mask >= (Bits{1} << d.n)) fail(path + "/mask", "mask outside 1..2^n-1");
    const std::int64_t num = as_int(field(arr[k], "num", path), path + "/num");
    const std::int64_t den = as_int(field(arr[k], "den", path), path + "/den");
    if (den <= 0) fail(path + "/den", "denominator must be positive");
    if (d.angles.count(mask)) fail(path + "/mask", "repeated mask");
    if (num != 0) d.angles[mask] = Rational(num, den);
  }
  return d;
}

Json to_json(const QspAngles& a) {
  Json target = a.is_mod_p() ? Json{{"p", a.p}, {"j", a.j}} : Json{{"profile", a.profile}};
  return Json{{"L", a.L}, {"xi", a.xi}, {"target", target}, {"residual", a.residual}};
}

QspAngles angles_from_json(const Json& j) {
  QspAngles a;
  a.L = as_small(field(j, "L", ""), "/L", 1, 1 << 16);
  const Json& xi = as_array(field(j, "xi", ""), "/xi");
  for (std::size_t k = 0; k < xi.size(); ++k) a.xi.push_back(as_double(xi[k], at("/xi", k)));
  if (static_cast<int>(a.xi.size()) != a.L + 1) fail("/xi", "expected L + 1 angles");
  const Json& target = field(j, "target", "");
  if (const Json* prof = target.is_object() ? optional_field(target, "profile") : nullptr) {
    a.profile = bits_from_json(*prof, "/target/profile");
  } else {
    a.p = as_small(field(target, "p", "/target"), "/target/p", 3, 1 << 16);
    a.j = as_small(field(target, "j", "/target"), "/target/j", 0, a.p - 1);
  }
  if (const Json* r = optional_field(j, "residual")) a.residual = as_double(*r, "/residual");
  return a;
}

Json to_json(const OneQubitProgram& prog) {
  Json gates = Json::array();
  for (const Gate& g : prog.gates) {
    const char* type = g.cond.type == CondType::None     ? "none"
                       : g.cond.type == CondType::Select ? "select"
                                                         : "sign";
    Json gj{{"axis", g.axis == Axis::X ? "X" : "Z"},
            {"theta", g.theta},
            {"cond", {{"type", type}, {"mask", g.cond.mask}, {"bias", g.cond.bias}}}};
    if (!g.exact.empty()) gj["exact"] = g.exact;
    gates.push_back(gj);
  }
  return Json{{"n", prog.n}, {"gates", gates}, {"flip", prog.flip}};
}

OneQubitProgram program_from_json(const Json& j) {
  OneQubitProgram prog;
  prog.n = as_small(field(j, "n", ""), "/n", 0, kMaxArity);
  const Json& arr = as_array(field(j, "gates", ""), "/gates");
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string path = at("/gates", k);
    Gate g;
    const std::string axis = as_string(field(arr[k], "axis", path), path + "/axis");
    if (axis == "X") {
      g.axis = Axis::X;
    } else if (axis == "Z") {
      g.axis = Axis::Z;
    } else {
      fail(path + "/axis", "expected \"X\" or \"Z\"");
    }
    g.theta = as_double(field(arr[k], "theta", path), path + "/theta");
    const Json& cond = field(arr[k], "cond", path);
    const std::string type = as_string(field(cond, "type", path + "/cond"), path + "/cond/type");
    if (type == "none") {
      g.cond.type = CondType::None;
    } else if (type == "select") {
      g.cond.type = CondType::Select;
    } else if (type == "sign") {
      g.cond.type = CondType::Sign;
    } else {
      fail(path + "/cond/type", "unknown condition '" + type + "'");
    }
    if (const Json* m = optional_field(cond, "mask")) g.cond.mask = as_mask(*m, path + "/cond/mask");
    if (const Json* b = optional_field(cond, "bias")) g.cond.bias = as_bit(*b, path + "/cond/bias");
    if ((g.cond.mask >> prog.n) != 0) fail(path + "/cond/mask", "mask exceeds the arity");
    if (const Json* e = optional_field(arr[k], "exact")) g.exact = as_string(*e, path + "/exact");
    prog.gates.push_back(g);
  }
  if (const Json* f = optional_field(j, "flip")) prog.flip = as_bit(*f, "/flip");
  return prog;
}

// ---------------------------------------------------------------------------

Json to_json(const MeasurementSchedule& s) {
  Json resource;
  if (s.parts.size() == 1) {
    resource = {{"type", kind_name(s.parts[0].kind)}, {"n_qubits", s.parts[0].n_qubits},
                {"parts", Json::array()}};
  } else {
    Json parts = Json::array();
    for (const auto& p : s.parts) parts.push_back({{"type", kind_name(p.kind)}, {"n_qubits", p.n_qubits}});
    resource = {{"type", "composite"}, {"n_qubits", s.n_qubits()}, {"parts", parts}};
  }
  Json qubits = Json::array();
  for (const auto& q : s.qubits) {
    Json basis;
    if (q.basis.type == BasisType::Z) {
      basis = {{"type", "z"}};
    } else {
      basis = {{"type", "xy"}, {"theta", q.basis.theta}, {"bias", q.basis.bias}};
      if (q.basis.offset != 0.0) basis["offset"] = q.basis.offset;
    }
    Json qj{{"id", q.id}, {"round", q.round}, {"basis", basis}, {"p_mask", q.p_mask}, {"a_ids", q.a_ids}};
    if (!q.exact.empty()) qj["exact"] = q.exact;
    qubits.push_back(qj);
  }
  Json out{{"resource", resource}, {"arity", s.arity}, {"qubits", qubits},
           {"o_ids", s.o_ids},     {"c", s.c}};
  if (s.registers != 0) out["registers"] = s.registers;
  if (!s.origin.empty()) out["origin"] = s.origin;
  if (!s.target.empty()) out["target"] = s.target;
  return out;
}

MeasurementSchedule schedule_from_json(const Json& j) {
  MeasurementSchedule s;
  const Json& res = field(j, "resource", "");
  const std::string type = as_string(field(res, "type", "/resource"), "/resource/type");
  const int total = as_small(field(res, "n_qubits", "/resource"), "/resource/n_qubits", 0, 1 << 20);
  if (type == "composite") {
    const Json& parts = as_array(field(res, "parts", "/resource"), "/resource/parts");
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const std::string path = at("/resource/parts", k);
      ResourcePart p;
      p.kind = kind_from(field(parts[k], "type", path), path + "/type");
      p.n_qubits = as_small(field(parts[k], "n_qubits", path), path + "/n_qubits", 0, 1 << 20);
      s.parts.push_back(p);
    }
    int sum = 0;
    for (const auto& p : s.parts) sum += p.n_qubits;
    if (sum != total) fail("/resource/n_qubits", "does not equal the sum over parts");
  } else {
    s.parts.push_back({kind_from(res["type"], "/resource/type"), total});
  }
  s.arity = as_small(field(j, "arity", ""), "/arity", 0, kMaxArity);
  const Json& qubits = as_array(field(j, "qubits", ""), "/qubits");
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    const std::string path = at("/qubits", k);
    const Json& qj = qubits[k];
    QubitRecord q;
    q.id = as_small(field(qj, "id", path), path + "/id", 1, 1 << 20);
    if (q.id != static_cast<int>(k) + 1) fail(path + "/id", "ids must run 1..N in order");
    q.round = as_small(field(qj, "round", path), path + "/round", 1, 1 << 20);
    const Json& basis = field(qj, "basis", path);
    const std::string bt = as_string(field(basis, "type", path + "/basis"), path + "/basis/type");
    if (bt == "z") {
      q.basis.type = BasisType::Z;
    } else if (bt == "xy") {
      q.basis.theta = as_double(field(basis, "theta", path + "/basis"), path + "/basis/theta");
      q.basis.bias = as_bit(field(basis, "bias", path + "/basis"), path + "/basis/bias");
      if (const Json* o = optional_field(basis, "offset")) {
        q.basis.offset = as_double(*o, path + "/basis/offset");
      }
    } else {
      fail(path + "/basis/type", "expected \"xy\" or \"z\"");
    }
    if (const Json* p = optional_field(qj, "p_mask")) q.p_mask = as_mask(*p, path + "/p_mask");
    if (const Json* a = optional_field(qj, "a_ids")) {
      as_array(*a, path + "/a_ids");
      for (std::size_t t = 0; t < a->size(); ++t) {
        q.a_ids.push_back(as_small((*a)[t], at(path + "/a_ids", t), 1, 1 << 20));
      }
    }
    if (const Json* e = optional_field(qj, "exact")) q.exact = as_string(*e, path + "/exact");
    s.qubits.push_back(q);
  }
  const Json& o = as_array(field(j, "o_ids", ""), "/o_ids");
  for (std::size_t k = 0; k < o.size(); ++k) s.o_ids.push_back(as_small(o[k], at("/o_ids", k), 1, 1 << 20));
  s.c = as_bit(field(j, "c", ""), "/c");
  if (const Json* r = optional_field(j, "registers")) s.registers = as_small(*r, "/registers", 0, 1 << 20);
  if (const Json* t = optional_field(j, "origin")) s.origin = as_string(*t, "/origin");
  if (const Json* t = optional_field(j, "target")) s.target = as_string(*t, "/target");
  try {
    validate(s);
  } catch (const ScheduleError& e) {
    throw ParseError(std::string("/: invalid schedule: ") + e.what());
  }
  return s;
}

std::string serialize(const MeasurementSchedule& s) { return to_json(s).dump(2) + "\n"; }

MeasurementSchedule deserialize(const std::string& text) { return schedule_from_json(parse_json(text)); }

// ---------------------------------------------------------------------------

Json to_json(const ResourceReport& r) {
  return Json{{"L_Q", r.l_q}, {"L_C", r.l_c}, {"T_C", r.t_c}, {"T_Q", r.t_q}, {"volume", r.volume()}};
}

Json to_json(const SimulationReport& r) {
  Json inputs = Json::array();
  for (const auto& in : r.inputs) {
    inputs.push_back({{"x", in.x},
                      {"target", in.target},
                      {"analytic", optional_number(in.analytic)},
                      {"exact", optional_number(in.exact)},
                      {"shots", in.shots},
                      {"correct", in.correct}});
  }
  return Json{{"target", r.target},
              {"inputs", inputs},
              {"min_analytic", optional_number(r.min_analytic)},
              {"min_exact", optional_number(r.min_exact)},
              {"shots", r.shots},
              {"correct", r.correct},
              {"empirical_rate", r.empirical_rate()},
              {"beta", r.beta},
              {"all_correct", r.all_correct()},
              {"resources", to_json(r.resources)}};
}

std::string to_csv(const SimulationReport& r) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  out << "x,target,analytic,exact,shots,correct\n";
  for (const auto& in : r.inputs) {
    out << in.x << ',' << in.target << ',';
    if (in.analytic) out << *in.analytic;
    out << ',';
    if (in.exact) out << *in.exact;
    out << ',' << in.shots << ',' << in.correct << '\n';
  }
  return out.str();
}

Json to_json(const Table1Row& r) {
  Json j{{"algorithm", r.algorithm},
         {"table", {{"L_Q", r.l_q}, {"T_Q", r.t_q}, {"L_C", r.l_c}, {"T_C", r.t_c}}}};
  if (r.has_measured) {
    j["measured"] = to_json(r.measured);
    j["formula"] = to_json(r.formula);
  }
  return j;
}

std::string default_table2_path() { return std::string(L2MBQC_DATA_DIR) + "/table2.json"; }

std::vector<QspAngles> load_table2(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  const Json j = parse_json(buf.str());
  if (!j.is_array()) throw ParseError(path + ": expected an array of angle sets");
  std::vector<QspAngles> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    try {
      out.push_back(angles_from_json(j[k]));
    } catch (const ParseError& e) {
      throw ParseError(path + ": entry " + std::to_string(k) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace l2mbqc
