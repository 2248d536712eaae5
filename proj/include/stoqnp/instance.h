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

#ifndef STOQNP_INSTANCE_H
#define STOQNP_INSTANCE_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "stoqnp/dit_string.h"
#include "stoqnp/rational.h"
#include "stoqnp/tolerances.h"

namespace stoqnp {

enum class TermForm { kSets, kMatrix };

/// Dense square matrix of exact rationals, row-major.
struct RationalMatrix {
  std::size_t dim = 0;
  std::vector<Rational> entries;

  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : dim(n), entries(n * n) {}
  const Rational &operator()(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
  Rational &operator()(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
  Eigen::MatrixXd to_double() const;
};

/// A k-local term. Set-form terms carry their classes directly. Matrix-form
/// terms carry the local operator; their classes are the supports of the
/// non-negative groundspace basis recovered at load time.
///
/// Local strings are indexed base q with the first listed qudit most
/// significant; matrix rows and columns use the same order.
class Term {
 public:
  static Term from_sets(std::vector<std::size_t> qudits, std::vector<std::vector<DitString>> classes, unsigned q);
  static Term from_matrix(
      std::vector<std::size_t> qudits,
      Eigen::MatrixXd entries,
      std::optional<RationalMatrix> exact,
      unsigned q,
      double tol = tol::kEigenZero);

  TermForm form() const { return form_; }
  const std::vector<std::size_t> &qudits() const { return qudits_; }
  std::size_t arity() const { return qudits_.size(); }
  unsigned alphabet_size() const { return q_; }

  bool uniform() const { return uniform_; }
  const std::string &nonuniform_reason() const { return nonuniform_reason_; }

  /// Groundspace classes, canonically ordered.
  const std::vector<std::vector<DitString>> &classes() const { return classes_; }
  /// Class id of a local index, or -1 when that local string is bad.
  std::int32_t class_of_local(std::uint64_t local) const { return local_class_[local]; }
  /// Local indices of the members of class `c`.
  const std::vector<std::uint64_t> &members(std::size_t c) const { return members_[c]; }
  std::uint64_t local_index(const DitString &x) const;
  std::uint64_t local_dim() const { return local_class_.size(); }

  /// The operator the term contributes, shifted so its minimum eigenvalue is 0.
  /// For set-form terms this is I minus the sum of class projectors.
  const Eigen::MatrixXd &local_operator() const { return local_operator_; }
  double shift() const { return shift_; }
  const std::optional<RationalMatrix> &exact_matrix() const { return exact_; }
  const Eigen::MatrixXd &raw_entries() const { return raw_entries_; }
  /// Non-negative groundspace states (normalised, local basis).
  const std::vector<Eigen::VectorXd> &groundspace_states() const { return states_; }

 private:
  void build_lookup();

  TermForm form_ = TermForm::kSets;
  std::vector<std::size_t> qudits_;
  unsigned q_ = 2;
  bool uniform_ = true;
  std::string nonuniform_reason_;
  std::vector<std::vector<DitString>> classes_;
  std::vector<std::int32_t> local_class_;
  std::vector<std::vector<std::uint64_t>> members_;
  Eigen::MatrixXd local_operator_;
  Eigen::MatrixXd raw_entries_;
  std::optional<RationalMatrix> exact_;
  std::vector<Eigen::VectorXd> states_;
  double shift_ = 0.0;
};

/// H = (1/m) sum_i H_i over n qudits of dimension q, with each term acting on
/// at most k qudits and each qudit touched by at most d terms.
class HamiltonianInstance {
 public:
  /// Throws ValidationError listing every structural violation.
  HamiltonianInstance(std::size_t num_dits, unsigned alphabet_size, std::size_t locality, std::size_t degree,
                      std::vector<Term> terms);

  std::size_t n() const { return n_; }
  unsigned q() const { return q_; }
  std::size_t k() const { return k_; }
  std::size_t d() const { return d_; }
  std::size_t m() const { return terms_.size(); }
  const std::vector<Term> &terms() const { return terms_; }
  const Term &term(std::size_t i) const { return terms_.at(i); }

  bool uniform() const;
  /// Throws NonUniformError naming the first non-uniform term.
  void require_uniform(std::string_view operation) const;
  std::size_t max_arity() const;
  std::size_t max_degree() const;
  /// q^n, throwing when it does not fit in 64 bits.
  std::uint64_t dimension() const;

 private:
  std::size_t n_;
  unsigned q_;
  std::size_t k_;
  std::size_t d_;
  std::vector<Term> terms_;
};

/// Structural problems with a candidate instance, empty when it is valid.
std::vector<std::string> structural_violations(
    std::size_t num_dits, unsigned alphabet_size, std::size_t locality, std::size_t degree,
    const std::vector<std::vector<std::size_t>> &term_qudits);

/// Problems with a class list for a term of the given arity.
std::vector<std::string> class_violations(
    const std::vector<std::vector<DitString>> &classes, std::size_t arity, unsigned q);

struct SetConstraint {
  std::vector<std::size_t> qudits;
  std::vector<std::vector<DitString>> classes;
};

/// Classical set-constraint view of a uniform instance.
class SetCSPInstance {
 public:
  SetCSPInstance(std::size_t num_dits, unsigned alphabet_size, std::size_t locality, std::size_t degree,
                 std::vector<SetConstraint> constraints);

  std::size_t n() const { return n_; }
  unsigned q() const { return q_; }
  std::size_t k() const { return k_; }
  std::size_t d() const { return d_; }
  std::size_t m() const { return constraints_.size(); }
  const std::vector<SetConstraint> &constraints() const { return constraints_; }

 private:
  std::size_t n_;
  unsigned q_;
  std::size_t k_;
  std::size_t d_;
  std::vector<SetConstraint> constraints_;
};

/// Requires every term to be uniform.
SetCSPInstance to_setcsp(const HamiltonianInstance &h);
/// Matrix-form terms I - sum_j |T_j><T_j| with exact rational entries.
HamiltonianInstance from_setcsp(const SetCSPInstance &c, double tol = tol::kEigenZero);
/// Set-form terms carrying the constraint classes directly.
HamiltonianInstance as_set_form(const SetCSPInstance &c);

/// Energy of the subset state |S> under one term:
/// 1 - sum_j sum_y |T_j cap S_{B,y}|^2 / (|T_j| |S|).
/// `support` must be non-empty and free of duplicates.
Rational subset_unsat(const Term &term, std::span<const DitString> support);

/// Average of subset_unsat over all constraints.
Rational unsat(const SetCSPInstance &c, std::span<const DitString> support);

}  // namespace stoqnp

#endif
