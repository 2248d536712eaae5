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

#ifndef STOQNP_SERIALIZE_H
#define STOQNP_SERIALIZE_H

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "stoqnp/circuit2ham.h"
#include "stoqnp/instance.h"
#include "stoqnp/tolerances.h"
#include "stoqnp/walk_graph.h"

namespace stoqnp {

using Json = nlohmann::json;

struct TermShift {
  std::size_t term;
  double shift;
};

struct TermNote {
  std::size_t term;
  std::string note;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<TermShift> shifts;
  std::vector<TermNote> nonuniform;
  /// Distinct exact entries of matrix-form terms, as "p/q" text.
  std::set<std::string> entry_set;
  bool entries_exact = true;
  std::size_t num_terms = 0;
  std::size_t max_arity = 0;
  std::size_t max_degree = 0;

  bool ok() const { return violations.empty(); }
};

struct LoadResult {
  std::optional<HamiltonianInstance> instance;
  ValidationReport report;
};

/// Reads an instance document, collecting every violation instead of
/// stopping at the first. Documents with "constraints" instead of "terms"
/// are set-constraint instances and load as set-form terms.
LoadResult load_instance(const Json &doc, double tol = tol::kEigenZero);

/// Throws ParseError or ValidationError.
HamiltonianInstance parse_instance(std::string_view text, double tol = tol::kEigenZero);
HamiltonianInstance read_instance_file(const std::string &path, double tol = tol::kEigenZero);
Json read_json_file(const std::string &path);

Json instance_to_json(const HamiltonianInstance &h);
Json setcsp_to_json(const SetCSPInstance &c);
SetCSPInstance parse_setcsp(const Json &doc);
Json report_to_json(const ValidationReport &r);

Json string_to_json(const DitString &s, unsigned q);
DitString string_from_json(const Json &j, unsigned q);
Json rational_to_json(const Rational &r);

ReversibleCircuit parse_circuit(const Json &doc);
Json circuit_to_json(const ReversibleCircuit &c);

Json to_json(const WalkVerdict &v, unsigned q);
Json to_json(const PathWitness &p, unsigned q);

}  // namespace stoqnp

#endif
