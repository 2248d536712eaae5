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

#ifndef STOQNP_WALK_GRAPH_H
#define STOQNP_WALK_GRAPH_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stoqnp/dit_string.h"
#include "stoqnp/instance.h"
#include "stoqnp/rational.h"
#include "stoqnp/tolerances.h"

namespace stoqnp {

enum class Outcome { kAccept, kReject };

/// One move: `term` carried the previous string to `string` inside one class.
struct PathStep {
  std::size_t term;
  DitString string;
};

struct WalkVerdict {
  Outcome outcome = Outcome::kAccept;
  DitString start;
  std::vector<PathStep> path;
  std::uint64_t steps_taken = 0;
  /// Term the final string is bad for, on reject.
  std::optional<std::size_t> violated_term;
  /// Commuting mode evidence: <x_Q|P_i|x_Q> for the violated term and the threshold.
  std::optional<std::string> overlap;
  std::optional<std::string> threshold;
  bool exact = true;

  const DitString &end() const { return path.empty() ? start : path.back().string; }
};

struct PathWitness {
  DitString start;
  std::vector<PathStep> steps;
  std::size_t violated_term = 0;

  const DitString &end() const { return steps.empty() ? start : steps.back().string; }
  std::size_t length() const { return steps.size(); }
};

struct Neighbor {
  std::size_t term;
  DitString string;
  friend bool operator==(const Neighbor &, const Neighbor &) = default;
};

/// Class of term `i` containing the restriction of x, if any.
std::optional<std::vector<DitString>> class_of(const DitString &x, const HamiltonianInstance &h, std::size_t i);
std::optional<std::size_t> class_index_of(const DitString &x, const Term &term);

/// G(H) neighbours of x: strings reached by swapping the restriction of x for
/// another member of its class, one entry per (term, string). x itself is
/// excluded.
std::vector<Neighbor> neighbors(const DitString &x, const HamiltonianInstance &h);

/// Checks that `path` is a walk in G(H) from `start` (self moves allowed)
/// and returns a description of the first broken step, if any.
std::optional<std::string> check_path(const DitString &start, const std::vector<PathStep> &path,
                                      const HamiltonianInstance &h);

/// Seeded random walk: before each step reject if the current string is
/// bad; otherwise pick a term uniformly and replace the restriction with a
/// uniform member of its class (self included). After the last step the
/// final string is checked once more.
WalkVerdict bt_walk(const DitString &x0, const HamiltonianInstance &h, std::uint64_t steps, std::uint64_t seed);

/// 64 n m.
std::uint64_t default_walk_steps(const HamiltonianInstance &h);

/// Shortest G(H) path from x to a bad string within `radius` steps.
/// Throws CapacityError once more than `state_cap` strings are visited.
std::optional<PathWitness> bfs_to_bad(const DitString &x, const HamiltonianInstance &h, std::uint64_t radius,
                                      std::size_t state_cap = tol::kDefaultStateCap);

struct RadiusBound {
  /// ceil((2kd/eps) log_{1+eps/4} q): layers needed before a bad string shows up.
  std::uint64_t layers = 0;
  /// sum_{j=2}^{layers+1} k^j: length of the reconstructed light-cone path.
  BigInt path_bound;
  /// k^layers.
  BigInt headline_bound;
};

/// Throws std::invalid_argument unless 0 < eps <= 1.
RadiusBound theoretical_radius(const Rational &eps, std::size_t k, std::size_t d, unsigned q);

/// Radius clamped to 64 bits for searching.
std::uint64_t clamp_radius(const BigInt &r);

}  // namespace stoqnp

#endif
