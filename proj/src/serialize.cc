// Copyright 2026 The stoqnp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stoqnp/serialize.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "stoqnp/errors.h"

namespace stoqnp {

namespace {

std::vector<std::size_t> qudits_from_json(const Json &j) {
  if (!j.is_array()) {
    throw ParseError("qudits must be an array");
  }
  std::vector<std::size_t> out;
  for (const auto &v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ParseError("qudit indices must be non-negative integers");
    }
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

std::vector<std::vector<DitString>> classes_from_json(const Json &j, unsigned q) {
  if (!j.is_array()) {
    throw ParseError("classes must be an array of arrays of strings");
  }
  std::vector<std::vector<DitString>> out;
  for (const auto &cls : j) {
    if (!cls.is_array()) {
      throw ParseError("each class must be an array of strings");
    }
    std::vector<DitString> c;
    for (const auto &s : cls) {
      c.push_back(string_from_json(s, q));
    }
    out.push_back(std::move(c));
  }
  return out;
}

Json classes_to_json(const std::vector<std::vector<DitString>> &classes, unsigned q) {
  Json out = Json::array();
  for (const auto &cls : classes) {
    Json c = Json::array();
    for (const auto &s : cls) {
      c.push_back(string_to_json(s, q));
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Reads one entry; returns false when it is a float.
bool entry_from_json(const Json &e, double &value, Rational &exact) {
  if (e.is_number_integer()) {
    exact = Rational(BigInt(e.get<long long>()));
    value = e.get<double>();
    return true;
  }
  if (e.is_number_float()) {
    value = e.get<double>();
    return false;
  }
  if (e.is_object() && e.contains("num") && e.contains("den")) {
    auto num = e.at("num").get<long long>();
    auto den = e.at("den").get<long long>();
    if (den == 0) {
      throw ParseError("entry with zero denominator");
    }
    exact = Rational(BigInt(num), BigInt(den));
    value = to_double(exact);
    return true;
  }
  if (e.is_string()) {
    exact = parse_rational(e.get<std::string>());
    value = to_double(exact);
    return true;
  }
  throw ParseError("matrix entries must be numbers or {num, den} objects");
}

Term term_from_json(const Json &t, unsigned q, double tol, ValidationReport &report) {
  if (!t.is_object() || !t.contains("qudits")) {
    throw ParseError("term needs a qudits field");
  }
  auto qudits = qudits_from_json(t.at("qudits"));
  std::string form = t.value("form", t.contains("classes") ? "sets" : "matrix");
  if (form == "sets") {
    if (!t.contains("classes")) {
      throw ParseError("set-form term needs classes");
    }
    return Term::from_sets(qudits, classes_from_json(t.at("classes"), q), q);
  }
  if (form != "matrix") {
    throw ParseError("form must be \"sets\" or \"matrix\"");
  }
  if (!t.contains("entries") || !t.at("entries").is_array()) {
    throw ParseError("matrix-form term needs an entries array");
  }
  const Json &rows = t.at("entries");
  auto dim = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(dim, dim);
  RationalMatrix exact(static_cast<std::size_t>(dim));
  bool all_exact = true;
  for (Eigen::Index r = 0; r < dim; r++) {
    const Json &row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
      throw ParseError("entries must be a square array of rows");
    }
    for (Eigen::Index c = 0; c < dim; c++) {
      Rational e;
      all_exact = entry_from_json(row[static_cast<std::size_t>(c)], m(r, c), e) && all_exact;
      exact(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = e;
    }
  }
  if (all_exact) {
    for (const auto &e : exact.entries) {
      report.entry_set.insert(to_string(e));
    }
    return Term::from_matrix(qudits, std::move(m), std::move(exact), q, tol);
  }
  report.entries_exact = false;
  return Term::from_matrix(qudits, std::move(m), std::nullopt, q, tol);
}

std::size_t field(const Json &doc, const char *name, std::vector<std::string> &violations) {
  if (!doc.contains(name) || !doc.at(name).is_number_integer() || doc.at(name).get<long long>() < 0) {
    violations.push_back(std::string("missing or invalid field '") + name + "'");
    return 0;
  }
  return doc.at(name).get<std::size_t>();
}

}  // namespace

Json string_to_json(const DitString &s, unsigned q) {
  if (q <= 10) {
    return s.to_string(q);
  }
  Json a = Json::array();
  for (auto v : s.dits()) {
    a.push_back(static_cast<int>(v));
  }
  return a;
}

DitString string_from_json(const Json &j, unsigned q) {
  if (j.is_string()) {
    return DitString::parse(j.get<std::string>(), q);
  }
  if (j.is_array()) {
    std::vector<Symbol> v;
    for (const auto &e : j) {
      if (!e.is_number_integer() || e.get<long long>() < 0 || e.get<long long>() >= q) {
        throw ParseError("string symbol outside the alphabet");
      }
      v.push_back(static_cast<Symbol>(e.get<int>()));
    }
    return DitString(std::move(v));
  }
  throw ParseError("strings must be digit strings or integer arrays");
}

Json rational_to_json(const Rational &r) {
  const BigInt &den = boost::multiprecision::denominator(r);
  const BigInt &num = boost::multiprecision::numerator(r);
  if (den == 1) {
    return num.convert_to<long long>();
  }
  return Json{{"num", num.convert_to<long long>()}, {"den", den.convert_to<long long>()}};
}

LoadResult load_instance(const Json &doc, double tol) {
  LoadResult out;
  ValidationReport &rep = out.report;
  if (!doc.is_object()) {
    rep.violations.push_back("instance document must be a JSON object");
    return out;
  }
  std::size_t q = field(doc, "alphabet_size", rep.violations);
  std::size_t n = field(doc, "num_dits", rep.violations);
  const char *list = doc.contains("constraints") ? "constraints" : "terms";
  if (!doc.contains(list) || !doc.at(list).is_array()) {
    rep.violations.push_back("missing 'terms' array");
  }
  if (!rep.violations.empty()) {
    return out;
  }
  if (q < 2 || q > 255) {
    rep.violations.push_back("alphabet_size must be in [2, 255]");
    return out;
  }
  std::vector<Term> terms;
  std::vector<std::vector<std::size_t>> term_qudits;
  const Json &items = doc.at(list);
  for (std::size_t i = 0; i < items.size(); i++) {
    try {
      Term t = term_from_json(items[i], static_cast<unsigned>(q), tol, rep);
      if (std::abs(t.shift()) > tol) {
        rep.shifts.push_back(TermShift{i, t.shift()});
      }
      if (!t.uniform()) {
        rep.nonuniform.push_back(TermNote{i, t.nonuniform_reason()});
      }
      term_qudits.push_back(t.qudits());
      terms.push_back(std::move(t));
    } catch (const std::exception &e) {
      rep.violations.push_back("term " + std::to_string(i) + ": " + e.what());
      try {
        term_qudits.push_back(qudits_from_json(items[i].at("qudits")));
      } catch (...) {
      }
    }
  }
  std::vector<std::size_t> deg(n, 0);
  for (const auto &b : term_qudits) {
    rep.max_arity = std::max(rep.max_arity, b.size());
    for (auto v : b) {
      if (v < n) {
        rep.max_degree = std::max(rep.max_degree, ++deg[v]);
      }
    }
  }
  rep.num_terms = items.size();
  std::size_t k = doc.contains("locality") ? field(doc, "locality", rep.violations) : rep.max_arity;
  std::size_t d = doc.contains("degree") ? field(doc, "degree", rep.violations) : rep.max_degree;
  auto structural = structural_violations(n, static_cast<unsigned>(q), k, d, term_qudits);
  rep.violations.insert(rep.violations.end(), structural.begin(), structural.end());
  if (rep.ok()) {
    out.instance.emplace(n, static_cast<unsigned>(q), k, d, std::move(terms));
  }
  return out;
}

HamiltonianInstance parse_instance(std::string_view text, double tol) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception &e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  LoadResult r = load_instance(doc, tol);
  if (!r.instance) {
    std::string msg;
    for (const auto &v : r.report.violations) {
      msg += (msg.empty() ? "" : "; ") + v;
    }
    throw ValidationError(msg);
  }
  return std::move(*r.instance);
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::exception &e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

HamiltonianInstance read_instance_file(const std::string &path, double tol) {
  return parse_instance(read_json_file(path).dump(), tol);
}

Json instance_to_json(const HamiltonianInstance &h) {
  Json terms = Json::array();
  for (const auto &t : h.terms()) {
    Json jt;
    jt["qudits"] = t.qudits();
    if (t.form() == TermForm::kSets) {
      jt["form"] = "sets";
      jt["classes"] = classes_to_json(t.classes(), h.q());
    } else {
      jt["form"] = "matrix";
      Json rows = Json::array();
      auto dim = t.raw_entries().rows();
      for (Eigen::Index r = 0; r < dim; r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < dim; c++) {
          if (t.exact_matrix()) {
            row.push_back(rational_to_json((*t.exact_matrix())(static_cast<std::size_t>(r), static_cast<std::size_t>(c))));
          } else {
            row.push_back(t.raw_entries()(r, c));
          }
        }
        rows.push_back(std::move(row));
      }
      jt["entries"] = std::move(rows);
    }
    terms.push_back(std::move(jt));
  }
  return Json{{"alphabet_size", h.q()}, {"num_dits", h.n()}, {"locality", h.k()}, {"degree", h.d()}, {"terms", terms}};
}

Json setcsp_to_json(const SetCSPInstance &c) {
  Json cons = Json::array();
  for (const auto &con : c.constraints()) {
    cons.push_back(Json{{"qudits", con.qudits}, {"classes", classes_to_json(con.classes, c.q())}});
  }
  return Json{{"alphabet_size", c.q()}, {"num_dits", c.n()}, {"locality", c.k()}, {"degree", c.d()},
              {"constraints", cons}};
}

SetCSPInstance parse_setcsp(const Json &doc) {
  try {
    auto q = doc.at("alphabet_size").get<unsigned>();
    auto n = doc.at("num_dits").get<std::size_t>();
    std::vector<SetConstraint> cons;
    std::size_t max_arity = 0;
    for (const auto &c : doc.at("constraints")) {
      SetConstraint sc{qudits_from_json(c.at("qudits")), classes_from_json(c.at("classes"), q)};
      max_arity = std::max(max_arity, sc.qudits.size());
      cons.push_back(std::move(sc));
    }
    std::size_t k = doc.value("locality", max_arity);
    std::size_t d = doc.value("degree", cons.size());
    return SetCSPInstance(n, q, k, d, std::move(cons));
  } catch (const Json::exception &e) {
    throw ParseError(std::string("invalid set-constraint document: ") + e.what());
  }
}

Json report_to_json(const ValidationReport &r) {
  Json shifts = Json::array();
  for (const auto &s : r.shifts) {
    shifts.push_back(Json{{"term", s.term}, {"shift", s.shift}});
  }
  Json nonuniform = Json::array();
  for (const auto &s : r.nonuniform) {
    nonuniform.push_back(Json{{"term", s.term}, {"reason", s.note}});
  }
  return Json{{"valid", r.ok()},
              {"violations", r.violations},
              {"shifts", shifts},
              {"nonuniform_terms", nonuniform},
              {"uniform", r.nonuniform.empty()},
              {"entry_set", r.entry_set},
              {"entries_exact", r.entries_exact},
              {"num_terms", r.num_terms},
              {"max_arity", r.max_arity},
              {"max_degree", r.max_degree}};
}

ReversibleCircuit parse_circuit(const Json &doc) {
  ReversibleCircuit c;
  try {
    for (const auto &w : doc.at("wires")) {
      std::string role = w.is_string() ? w.get<std::string>() : w.at("role").get<std::string>();
      if (role == "witness") {
        c.wires.push_back(WireRole::kWitness);
      } else if (role == "ancilla-zero") {
        c.wires.push_back(WireRole::kAncillaZero);
      } else if (role == "ancilla-plus") {
        c.wires.push_back(WireRole::kAncillaPlus);
      } else {
        throw ParseError("unknown wire role '" + role + "'");
      }
    }
    for (const auto &g : doc.at("gates")) {
      std::string kind = g.at("kind").get<std::string>();
      Gate gate{GateKind::kNot, {}};
      if (kind == "NOT") {
        gate.kind = GateKind::kNot;
      } else if (kind == "CNOT") {
        gate.kind = GateKind::kCnot;
      } else if (kind == "TOFFOLI") {
        gate.kind = GateKind::kToffoli;
      } else {
        throw ParseError("unknown gate kind '" + kind + "'");
      }
      gate.wires = g.at("targets").get<std::vector<std::size_t>>();
      c.gates.push_back(std::move(gate));
    }
    c.output = doc.at("output").get<std::size_t>();
  } catch (const Json::exception &e) {
    throw ParseError(std::string("invalid circuit document: ") + e.what());
  }
  c.validate();
  return c;
}

Json circuit_to_json(const ReversibleCircuit &c) {
  Json wires = Json::array();
  for (auto r : c.wires) {
    wires.push_back(Json{{"role", to_string(r)}});
  }
  Json gates = Json::array();
  for (const auto &g : c.gates) {
    gates.push_back(Json{{"kind", to_string(g.kind)}, {"targets", g.wires}});
  }
  return Json{{"wires", wires}, {"gates", gates}, {"output", c.output}};
}

Json to_json(const WalkVerdict &v, unsigned q) {
  Json path = Json::array();
  for (const auto &s : v.path) {
    path.push_back(Json{{"term", s.term}, {"string", string_to_json(s.string, q)}});
  }
  Json out{{"outcome", v.outcome == Outcome::kAccept ? "accept" : "reject"},
           {"start", string_to_json(v.start, q)},
           {"end", string_to_json(v.end(), q)},
           {"path", path},
           {"steps_taken", v.steps_taken}};
  if (v.violated_term) {
    out["violated_term"] = *v.violated_term;
  }
  if (v.overlap) {
    out["overlap"] = *v.overlap;
    out["threshold"] = v.threshold.value_or("");
    out["exact"] = v.exact;
  }
  return out;
}

Json to_json(const PathWitness &p, unsigned q) {
  Json steps = Json::array();
  for (const auto &s : p.steps) {
    steps.push_back(Json{{"term", s.term}, {"string", string_to_json(s.string, q)}});
  }
  return Json{{"start", string_to_json(p.start, q)},
              {"end", string_to_json(p.end(), q)},
              {"steps", steps},
              {"length", p.length()},
              {"violated_term", p.violated_term}};
}

}  // namespace stoqnp
