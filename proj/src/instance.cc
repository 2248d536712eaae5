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

#include "stoqnp/instance.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "stoqnp/errors.h"
#include "stoqnp/stoq_decompose.h"

namespace stoqnp {

namespace {

std::string join(const std::vector<std::string> &v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); i++) {
    out += (i ? "; " : "") + v[i];
  }
  return out;
}

void canonicalize(std::vector<std::vector<DitString>> &classes) {
  for (auto &c : classes) {
    std::sort(c.begin(), c.end());
  }
  std::sort(classes.begin(), classes.end());
}

}  // namespace

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd out(dim, dim);
  for (std::size_t r = 0; r < dim; r++) {
    for (std::size_t c = 0; c < dim; c++) {
      out(r, c) = stoqnp::to_double((*this)(r, c));
    }
  }
  return out;
}

std::vector<std::string> class_violations(const std::vector<std::vector<DitString>> &classes, std::size_t arity,
                                          unsigned q) {
  std::vector<std::string> out;
  if (classes.empty()) {
    out.push_back("empty class list");
  }
  std::set<DitString> seen;
  for (std::size_t c = 0; c < classes.size(); c++) {
    if (classes[c].empty()) {
      out.push_back("class " + std::to_string(c) + " is empty");
    }
    for (const auto &s : classes[c]) {
      if (s.size() != arity) {
        out.push_back("class string '" + s.to_string(q) + "' has length " + std::to_string(s.size()) +
                      ", term acts on " + std::to_string(arity) + " qudits");
        continue;
      }
      bool in_range = std::all_of(s.dits().begin(), s.dits().end(), [&](Symbol v) { return v < q; });
      if (!in_range) {
        out.push_back("class string has a symbol outside the alphabet");
        continue;
      }
      if (!seen.insert(s).second) {
        out.push_back("string '" + s.to_string(q) + "' appears in more than one class (classes must be disjoint)");
      }
    }
  }
  return out;
}

std::vector<std::string> structural_violations(std::size_t num_dits, unsigned alphabet_size, std::size_t locality,
                                               std::size_t degree,
                                               const std::vector<std::vector<std::size_t>> &term_qudits) {
  std::vector<std::string> out;
  if (alphabet_size < 2 || alphabet_size > 255) {
    out.push_back("alphabet_size must be in [2, 255]");
  }
  if (num_dits == 0) {
    out.push_back("num_dits must be positive");
  }
  std::vector<std::size_t> deg(num_dits, 0);
  for (std::size_t i = 0; i < term_qudits.size(); i++) {
    const auto &b = term_qudits[i];
    std::string who = "term " + std::to_string(i);
    if (b.empty()) {
      out.push_back(who + " acts on no qudits");
    }
    if (b.size() > locality) {
      out.push_back(who + " acts on " + std::to_string(b.size()) + " qudits, locality is " +
                    std::to_string(locality));
    }
    std::set<std::size_t> distinct;
    for (std::size_t v : b) {
      if (v >= num_dits) {
        out.push_back(who + " references qudit " + std::to_string(v) + " >= num_dits");
        continue;
      }
      if (!distinct.insert(v).second) {
        out.push_back(who + " lists qudit " + std::to_string(v) + " twice");
        continue;
      }
      deg[v]++;
    }
  }
  for (std::size_t v = 0; v < num_dits; v++) {
    if (deg[v] > degree) {
      out.push_back("qudit " + std::to_string(v) + " is in " + std::to_string(deg[v]) + " terms, degree is " +
                    std::to_string(degree));
    }
  }
  return out;
}

Term Term::from_sets(std::vector<std::size_t> qudits, std::vector<std::vector<DitString>> classes, unsigned q) {
  auto problems = class_violations(classes, qudits.size(), q);
  if (!problems.empty()) {
    throw ValidationError(join(problems));
  }
  Term t;
  t.form_ = TermForm::kSets;
  t.qudits_ = std::move(qudits);
  t.q_ = q;
  canonicalize(classes);
  t.classes_ = std::move(classes);
  t.build_lookup();
  auto dim = static_cast<Eigen::Index>(t.local_dim());
  t.local_operator_ = Eigen::MatrixXd::Identity(dim, dim);
  for (const auto &members : t.members_) {
    double w = 1.0 / static_cast<double>(members.size());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    for (auto a : members) {
      v(static_cast<Eigen::Index>(a)) = std::sqrt(w);
      for (auto b : members) {
        t.local_operator_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) -= w;
      }
    }
    t.states_.push_back(std::move(v));
  }
  t.raw_entries_ = t.local_operator_;
  return t;
}

Term Term::from_matrix(std::vector<std::size_t> qudits, Eigen::MatrixXd entries, std::optional<RationalMatrix> exact,
                       unsigned q, double tol) {
  std::uint64_t dim = checked_pow(q, qudits.size());
  if (static_cast<std::uint64_t>(entries.rows()) != dim || static_cast<std::uint64_t>(entries.cols()) != dim) {
    throw ValidationError("matrix is " + std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()) +
                          ", expected " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  std::vector<std::string> problems;
  for (Eigen::Index r = 0; r < entries.rows(); r++) {
    for (Eigen::Index c = r + 1; c < entries.cols(); c++) {
      bool asym = exact ? (*exact)(r, c) != (*exact)(c, r) : std::abs(entries(r, c) - entries(c, r)) > tol;
      if (asym) {
        problems.push_back("matrix is not symmetric at (" + std::to_string(r) + "," + std::to_string(c) + ")");
      }
      for (auto [a, b] : {std::pair{r, c}, std::pair{c, r}}) {
        bool positive = exact ? (*exact)(a, b) > 0 : entries(a, b) > tol;
        if (positive) {
          problems.push_back("positive off-diagonal entry at (" + std::to_string(a) + "," + std::to_string(b) +
                             "); term is not stoquastic");
        }
      }
    }
  }
  if (!problems.empty()) {
    throw ValidationError(join(problems));
  }
  GroundspaceProjector gp;
  try {
    gp = groundspace_projector(entries, tol);
  } catch (const DegenerateToleranceError &e) {
    throw ValidationError(e.what());
  }
  if (gp.lambda_max - gp.lambda_min > 1.0 + tol) {
    throw ValidationError("operator norm after shifting the minimum eigenvalue to 0 is " +
                          std::to_string(gp.lambda_max - gp.lambda_min) + " > 1");
  }
  NonNegDecomposition dec;
  try {
    dec = nonneg_decomposition(gp.projector, tol);
  } catch (const DecompositionError &e) {
    throw ValidationError(e.what());
  }

  Term t;
  t.form_ = TermForm::kMatrix;
  t.qudits_ = std::move(qudits);
  t.q_ = q;
  t.shift_ = gp.lambda_min;
  t.raw_entries_ = entries;
  t.local_operator_ = entries - gp.lambda_min * Eigen::MatrixXd::Identity(entries.rows(), entries.cols());
  t.exact_ = std::move(exact);

  std::vector<std::vector<std::uint64_t>> supports;
  try {
    supports = uniformize(dec, tol);
  } catch (const NonUniformError &e) {
    t.uniform_ = false;
    t.nonuniform_reason_ = e.what();
    supports.clear();
    for (const auto &v : dec.states) {
      std::vector<std::uint64_t> s;
      for (Eigen::Index i = 0; i < v.size(); i++) {
        if (v(i) > tol) {
          s.push_back(static_cast<std::uint64_t>(i));
        }
      }
      supports.push_back(std::move(s));
    }
  }
  std::vector<std::pair<std::vector<DitString>, Eigen::VectorXd>> paired;
  for (std::size_t c = 0; c < supports.size(); c++) {
    std::vector<DitString> cls;
    for (auto a : supports[c]) {
      cls.push_back(DitString::from_index(a, t.qudits_.size(), q));
    }
    std::sort(cls.begin(), cls.end());
    Eigen::VectorXd state = dec.states[c];
    if (t.uniform_) {
      state.setZero();
      for (auto a : supports[c]) {
        state(static_cast<Eigen::Index>(a)) = 1.0 / std::sqrt(static_cast<double>(supports[c].size()));
      }
    }
    paired.emplace_back(std::move(cls), std::move(state));
  }
  std::sort(paired.begin(), paired.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  for (auto &[cls, state] : paired) {
    t.classes_.push_back(std::move(cls));
    t.states_.push_back(std::move(state));
  }
  t.build_lookup();
  return t;
}

void Term::build_lookup() {
  std::uint64_t dim = checked_pow(q_, qudits_.size());
  local_class_.assign(dim, -1);
  members_.clear();
  for (std::size_t c = 0; c < classes_.size(); c++) {
    std::vector<std::uint64_t> idx;
    for (const auto &s : classes_[c]) {
      auto a = s.to_index(q_);
      local_class_[a] = static_cast<std::int32_t>(c);
      idx.push_back(a);
    }
    members_.push_back(std::move(idx));
  }
}

std::uint64_t Term::local_index(const DitString &x) const {
  return stoqnp::local_index(x, qudits_, q_);
}

HamiltonianInstance::HamiltonianInstance(std::size_t num_dits, unsigned alphabet_size, std::size_t locality,
                                         std::size_t degree, std::vector<Term> terms)
    : n_(num_dits), q_(alphabet_size), k_(locality), d_(degree), terms_(std::move(terms)) {
  std::vector<std::vector<std::size_t>> qs;
  for (const auto &t : terms_) {
    qs.push_back(t.qudits());
  }
  auto problems = structural_violations(n_, q_, k_, d_, qs);
  for (std::size_t i = 0; i < terms_.size(); i++) {
    if (terms_[i].alphabet_size() != q_) {
      problems.push_back("term " + std::to_string(i) + " built for a different alphabet size");
    }
  }
  if (!problems.empty()) {
    throw ValidationError(join(problems));
  }
}

bool HamiltonianInstance::uniform() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term &t) { return t.uniform(); });
}

void HamiltonianInstance::require_uniform(std::string_view operation) const {
  for (std::size_t i = 0; i < terms_.size(); i++) {
    if (!terms_[i].uniform()) {
      throw NonUniformError(std::string(operation) + " needs a uniform instance; term " + std::to_string(i) +
                            " is not: " + terms_[i].nonuniform_reason());
    }
  }
}

std::size_t HamiltonianInstance::max_arity() const {
  std::size_t r = 0;
  for (const auto &t : terms_) {
    r = std::max(r, t.arity());
  }
  return r;
}

std::size_t HamiltonianInstance::max_degree() const {
  std::vector<std::size_t> deg(n_, 0);
  for (const auto &t : terms_) {
    for (auto v : t.qudits()) {
      deg[v]++;
    }
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::uint64_t HamiltonianInstance::dimension() const {
  return checked_pow(q_, n_);
}

SetCSPInstance::SetCSPInstance(std::size_t num_dits, unsigned alphabet_size, std::size_t locality,
                               std::size_t degree, std::vector<SetConstraint> constraints)
    : n_(num_dits), q_(alphabet_size), k_(locality), d_(degree), constraints_(std::move(constraints)) {
  std::vector<std::vector<std::size_t>> qs;
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < constraints_.size(); i++) {
    qs.push_back(constraints_[i].qudits);
    for (const auto &p : class_violations(constraints_[i].classes, constraints_[i].qudits.size(), q_)) {
      problems.push_back("constraint " + std::to_string(i) + ": " + p);
    }
    canonicalize(constraints_[i].classes);
  }
  auto more = structural_violations(n_, q_, k_, d_, qs);
  problems.insert(problems.end(), more.begin(), more.end());
  if (!problems.empty()) {
    throw ValidationError(join(problems));
  }
}

SetCSPInstance to_setcsp(const HamiltonianInstance &h) {
  h.require_uniform("to_setcsp");
  std::vector<SetConstraint> cs;
  for (const auto &t : h.terms()) {
    cs.push_back(SetConstraint{t.qudits(), t.classes()});
  }
  return SetCSPInstance(h.n(), h.q(), h.k(), h.d(), std::move(cs));
}

HamiltonianInstance from_setcsp(const SetCSPInstance &c, double tol) {
  std::vector<Term> terms;
  for (const auto &con : c.constraints()) {
    std::uint64_t dim = checked_pow(c.q(), con.qudits.size());
    RationalMatrix m(dim);
    for (std::uint64_t i = 0; i < dim; i++) {
      m(i, i) = 1;
    }
    for (const auto &cls : con.classes) {
      Rational w(1, static_cast<long long>(cls.size()));
      for (const auto &a : cls) {
        for (const auto &b : cls) {
          m(a.to_index(c.q()), b.to_index(c.q())) -= w;
        }
      }
    }
    Eigen::MatrixXd md = m.to_double();
    terms.push_back(Term::from_matrix(con.qudits, std::move(md), std::move(m), c.q(), tol));
  }
  return HamiltonianInstance(c.n(), c.q(), c.k(), c.d(), std::move(terms));
}

HamiltonianInstance as_set_form(const SetCSPInstance &c) {
  std::vector<Term> terms;
  for (const auto &con : c.constraints()) {
    terms.push_back(Term::from_sets(con.qudits, con.classes, c.q()));
  }
  return HamiltonianInstance(c.n(), c.q(), c.k(), c.d(), std::move(terms));
}

Rational subset_unsat(const Term &term, std::span<const DitString> support) {
  if (support.empty()) {
    throw PreconditionError("subset energy of an empty support");
  }
  if (!term.uniform()) {
    throw NonUniformError("subset energy needs a uniform term: " + term.nonuniform_reason());
  }
  // Key: the string with the term's positions blanked, followed by the class id.
  std::unordered_map<DitString, std::uint64_t, DitStringHash> counts;
  std::vector<Symbol> key;
  for (const auto &x : support) {
    std::int32_t c = term.class_of_local(term.local_index(x));
    if (c < 0) {
      continue;
    }
    key.assign(x.dits().begin(), x.dits().end());
    for (auto p : term.qudits()) {
      key[p] = 0xFF;
    }
    key.push_back(static_cast<Symbol>(c & 0xFF));
    key.push_back(static_cast<Symbol>((c >> 8) & 0xFF));
    key.push_back(static_cast<Symbol>((c >> 16) & 0xFF));
    counts[DitString(key)]++;
  }
  // sum over groups of count^2 / |class|, accumulated per class size.
  std::map<std::size_t, BigInt> by_size;
  for (const auto &[k, cnt] : counts) {
    std::size_t n = k.size();
    std::int32_t c = k[n - 3] | (k[n - 2] << 8) | (k[n - 1] << 16);
    by_size[term.members(static_cast<std::size_t>(c)).size()] += BigInt(cnt) * cnt;
  }
  Rational overlap = 0;
  for (const auto &[size, acc] : by_size) {
    overlap += Rational(acc, BigInt(size));
  }
  return Rational(1) - overlap / Rational(BigInt(support.size()));
}

Rational unsat(const SetCSPInstance &c, std::span<const DitString> support) {
  if (c.m() == 0) {
    return 0;
  }
  Rational total = 0;
  for (const auto &con : c.constraints()) {
    total += subset_unsat(Term::from_sets(con.qudits, con.classes, c.q()), support);
  }
  return total / Rational(BigInt(c.m()));
}

}  // namespace stoqnp
