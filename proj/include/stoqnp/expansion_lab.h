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

#ifndef STOQNP_EXPANSION_LAB_H
#define STOQNP_EXPANSION_LAB_H

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "stoqnp/dit_string.h"
#include "stoqnp/instance.h"
#include "stoqnp/rational.h"
#include "stoqnp/walk_graph.h"

namespace stoqnp {

/// Sorted, duplicate-free set of strings: the support of a subset state.
class SubsetSupport {
 public:
  SubsetSupport() = default;
  /// Sorts and removes duplicates.
  explicit SubsetSupport(std::vector<DitString> strings);

  std::size_t size() const { return strings_.size(); }
  bool empty() const { return strings_.empty(); }
  bool contains(const DitString &x) const;
  const std::vector<DitString> &strings() const { return strings_; }
  std::span<const DitString> span() const { return strings_; }
  auto begin() const { return strings_.begin(); }
  auto end() const { return strings_.end(); }
  friend bool operator==(const SubsetSupport &, const SubsetSupport &) = default;

 private:
  std::vector<DitString> strings_;
};

/// <S|H_i|S> for the subset state on S.
Rational term_energy_subset(const SubsetSupport &s, const Term &term);
/// <S|H|S>, the average over terms.
Rational instance_energy_subset(const SubsetSupport &s, const HamiltonianInstance &h);

/// Support of P_i|S>: every string of S that is good for the term expands to
/// the full class with the same outside part. Throws PreconditionError when
/// every string is bad (the projector annihilates |S>).
SubsetSupport apply_projector_subset(const SubsetSupport &s, const Term &term);

/// Ordered, pairwise non-overlapping terms.
struct Layer {
  std::vector<std::size_t> terms;
  bool empty() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }
};

/// Greedy layer: repeatedly take the lowest-index available term whose
/// energy on the current support is at least eps/2, apply it, and drop every
/// term sharing a qudit with it from the available set.
Layer find_frustrated_layer(const SubsetSupport &s, const HamiltonianInstance &h, const Rational &eps);

/// Applies the layer's terms in order.
SubsetSupport apply_layer(const SubsetSupport &s, const Layer &layer, const HamiltonianInstance &h);

struct LayersRun {
  /// A bad string was reached.
  bool found = false;
  /// No further layer could be formed, or the layer budget ran out.
  bool exhausted = false;
  std::vector<Layer> layers;
  /// S_0 = {x}, then S_l after each layer.
  std::vector<SubsetSupport> supports;
  /// Lexicographically least bad string of the last support.
  std::optional<DitString> bad_string;
  /// Lowest-index term bad_string is bad for.
  std::optional<std::size_t> apex;
  /// |S_l| / |S_{l-1}| per layer.
  std::vector<Rational> growth;
};

/// Layers from {x} until a bad string appears. `max_layers` defaults to
/// the layer count of theoretical_radius.
LayersRun layers_to_bad(const DitString &x, const HamiltonianInstance &h, const Rational &eps,
                        std::optional<std::uint64_t> max_layers = std::nullopt);

struct LightCone {
  /// Filtered layers, same indexing as the run's layers.
  std::vector<Layer> layers;
  std::size_t apex = 0;
  /// qudit_sets[j]: qudits touched by cone terms in layers j.. and the apex,
  /// sorted. qudit_sets[layers.size()] is the apex's own qudits.
  std::vector<std::vector<std::size_t>> qudit_sets;
};

/// Keeps, going downward from the apex, only the terms that share a qudit
/// with something already in the cone.
LightCone lightcone(const std::vector<Layer> &layers, std::size_t apex, const HamiltonianInstance &h);

/// Replays only the cone layers on {x}, keeping the support before each
/// term so the path can be traced back.
struct ConeReplay {
  std::vector<std::size_t> terms;
  /// before[t]: support before terms[t]; before.back() is the final support.
  std::vector<SubsetSupport> before;
};
ConeReplay replay_cone(const DitString &x, const LightCone &cone, const HamiltonianInstance &h);

/// A G(H) path from x to a string bad for the apex, one class-internal hop
/// per cone term at most. Throws PreconditionError if the replay reaches no
/// such string.
PathWitness reconstruct_path(const DitString &x, const LightCone &cone, const HamiltonianInstance &h);

}  // namespace stoqnp

#endif
