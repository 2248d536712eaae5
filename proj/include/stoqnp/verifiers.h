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

#ifndef STOQNP_VERIFIERS_H
#define STOQNP_VERIFIERS_H

#include <cstdint>
#include <optional>
#include <string>

#include "stoqnp/dit_string.h"
#include "stoqnp/instance.h"
#include "stoqnp/rational.h"
#include "stoqnp/tolerances.h"
#include "stoqnp/walk_graph.h"

namespace stoqnp {

struct VerifierConfig {
  /// Promise gap; used to derive the search radius when none is given.
  std::optional<Rational> epsilon;
  std::optional<std::uint64_t> radius;
  /// 0 means default_walk_steps.
  std::uint64_t steps = 0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t state_cap = tol::kDefaultStateCap;
  unsigned threads = 1;
  double tol = tol::kEigenZero;
};

/// Radius from the config, or the light-cone path bound for epsilon.
std::uint64_t resolve_radius(const HamiltonianInstance &h, const VerifierConfig &cfg);

/// Deterministic search: reject iff a bad string is within the radius of
/// the witness. The path found is the evidence.
WalkVerdict np_verify(const HamiltonianInstance &h, const DitString &witness, const VerifierConfig &cfg);

/// Same search with an explicit radius t.
WalkVerdict negligible_verify(const HamiltonianInstance &h, const DitString &witness, std::uint64_t t,
                              const VerifierConfig &cfg);

/// np_verify on the all-zeros string.
WalkVerdict pinned_verify(const HamiltonianInstance &h, const VerifierConfig &cfg);

struct CommutingCheck {
  bool commuting = true;
  /// First pair found not to commute.
  std::optional<std::pair<std::size_t, std::size_t>> witness_pair;
  double max_commutator = 0.0;
};

/// Pairwise commutators of overlapping terms on the union of their supports.
CommutingCheck check_commuting(const HamiltonianInstance &h, double tol = tol::kEigenZero);

/// Reject iff <x_Q|P_i|x_Q> <= 1/(2 q^k) for some term i. Exact for terms
/// with known classes or exact rational entries; otherwise computed in
/// floating point, whose error is far below the 1/(4 q^k) budget.
/// Throws PreconditionError when the terms do not commute.
WalkVerdict commuting_verify(const HamiltonianInstance &h, const DitString &witness, const VerifierConfig &cfg);

struct MaStatistics {
  double accept_rate = 0.0;
  std::uint64_t accepts = 0;
  std::uint64_t trials = 0;
  std::uint64_t steps = 0;
  /// First rejecting trial, if any.
  std::optional<WalkVerdict> sample_reject;
  std::optional<std::uint64_t> sample_reject_trial;
};

/// Runs `trials` walks seeded by derive_seed(seed, t).
MaStatistics ma_verify(const HamiltonianInstance &h, const DitString &witness, const VerifierConfig &cfg);

}  // namespace stoqnp

#endif
