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

#include "stoqnp/expansion_lab.h"

#include <algorithm>
#include <set>

#include "stoqnp/errors.h"
#include "stoqnp/stoq_decompose.h"

namespace stoqnp {

namespace {

bool overlaps(const std::vector<std::size_t> &a, const std::vector<std::size_t> &b) {
  for (auto v : a) {
    if (std::find(b.begin(), b.end(), v) != b.end()) {
      return true;
    }
  }
  return false;
}

}  // namespace

SubsetSupport::SubsetSupport(std::vector<DitString> strings) : strings_(std::move(strings)) {
  std::sort(strings_.begin(), strings_.end());
  strings_.erase(std::unique(strings_.begin(), strings_.end()), strings_.end());
}

bool SubsetSupport::contains(const DitString &x) const {
  return std::binary_search(strings_.begin(), strings_.end(), x);
}

Rational term_energy_subset(const SubsetSupport &s, const Term &term) {
  return subset_unsat(term, s.span());
}

Rational instance_energy_subset(const SubsetSupport &s, const HamiltonianInstance &h) {
  if (h.m() == 0) {
    return 0;
  }
  Rational total = 0;
  for (const auto &t : h.terms()) {
    total += term_energy_subset(s, t);
  }
  return total / Rational(BigInt(h.m()));
}

SubsetSupport apply_projector_subset(const SubsetSupport &s, const Term &term) {
  if (!term.uniform()) {
    throw NonUniformError("apply_projector_subset needs a uniform term: " + term.nonuniform_reason());
  }
  std::vector<DitString> out;
  for (const auto &x : s) {
    auto c = class_index_of(x, term);
    if (!c) {
      continue;
    }
    for (const auto &v : term.classes()[*c]) {
      out.push_back(splice(x, term.qudits(), v));
    }
  }
  if (out.empty()) {
    throw PreconditionError("projector annihilates the subset state: every string is bad for the term");
  }
  return SubsetSupport(std::move(out));
}

Layer find_frustrated_layer(const SubsetSupport &s, const HamiltonianInstance &h, const Rational &eps) {
  h.require_uniform("find_frustrated_layer");
  const Rational half = eps / 2;
  std::vector<bool> available(h.m(), true);
  SubsetSupport cur = s;
  Layer layer;
  while (true) {
    std::optional<std::size_t> pick;
    for (std::size_t j = 0; j < h.m(); j++) {
      if (available[j] && term_energy_subset(cur, h.term(j)) >= half) {
        pick = j;
        break;
      }
    }
    if (!pick) {
      break;
    }
    layer.terms.push_back(*pick);
    for (std::size_t j = 0; j < h.m(); j++) {
      if (available[j] && overlaps(h.term(j).qudits(), h.term(*pick).qudits())) {
        available[j] = false;
      }
    }
    cur = apply_projector_subset(cur, h.term(*pick));
  }
  return layer;
}

SubsetSupport apply_layer(const SubsetSupport &s, const Layer &layer, const HamiltonianInstance &h) {
  SubsetSupport cur = s;
  for (auto t : layer.terms) {
    cur = apply_projector_subset(cur, h.term(t));
  }
  return cur;
}

LayersRun layers_to_bad(const DitString &x, const HamiltonianInstance &h, const Rational &eps,
                        std::optional<std::uint64_t> max_layers) {
  h.require_uniform("layers_to_bad");
  if (x.size() != h.n()) {
    throw ParseError("start string length does not match the instance");
  }
  std::uint64_t budget = max_layers ? *max_layers : theoretical_radius(eps, h.k(), h.d(), h.q()).layers;
  LayersRun run;
  run.supports.emplace_back(std::vector<DitString>{x});
  if (auto bad = first_bad_term(x, h)) {
    run.found = true;
    run.bad_string = x;
    run.apex = bad;
    return run;
  }
  for (std::uint64_t l = 0; l < budget; l++) {
    const SubsetSupport &cur = run.supports.back();
    Layer layer = find_frustrated_layer(cur, h, eps);
    if (layer.empty()) {
      run.exhausted = true;
      return run;
    }
    SubsetSupport next = apply_layer(cur, layer, h);
    run.growth.emplace_back(BigInt(next.size()), BigInt(cur.size()));
    run.layers.push_back(std::move(layer));
    run.supports.push_back(std::move(next));
    for (const auto &y : run.supports.back()) {
      if (auto bad = first_bad_term(y, h)) {
        run.found = true;
        run.bad_string = y;
        run.apex = bad;
        return run;
      }
    }
  }
  run.exhausted = true;
  return run;
}

LightCone lightcone(const std::vector<Layer> &layers, std::size_t apex, const HamiltonianInstance &h) {
  LightCone cone;
  cone.apex = apex;
  cone.layers.resize(layers.size());
  cone.qudit_sets.resize(layers.size() + 1);
  std::set<std::size_t> d(h.term(apex).qudits().begin(), h.term(apex).qudits().end());
  cone.qudit_sets[layers.size()].assign(d.begin(), d.end());
  for (std::size_t j = layers.size(); j-- > 0;) {
    std::vector<std::size_t> added;
    for (auto t : layers[j].terms) {
      const auto &b = h.term(t).qudits();
      bool touches = std::any_of(b.begin(), b.end(), [&](std::size_t v) { return d.count(v) > 0; });
      if (touches) {
        cone.layers[j].terms.push_back(t);
        added.insert(added.end(), b.begin(), b.end());
      }
    }
    d.insert(added.begin(), added.end());
    cone.qudit_sets[j].assign(d.begin(), d.end());
  }
  return cone;
}

ConeReplay replay_cone(const DitString &x, const LightCone &cone, const HamiltonianInstance &h) {
  ConeReplay r;
  r.before.emplace_back(std::vector<DitString>{x});
  for (const auto &layer : cone.layers) {
    for (auto t : layer.terms) {
      r.terms.push_back(t);
      r.before.push_back(apply_projector_subset(r.before.back(), h.term(t)));
    }
  }
  return r;
}

PathWitness reconstruct_path(const DitString &x, const LightCone &cone, const HamiltonianInstance &h) {
  ConeReplay replay = replay_cone(x, cone, h);
  const Term &apex = h.term(cone.apex);
  std::optional<DitString> target;
  for (const auto &y : replay.before.back()) {
    if (is_bad(y, apex)) {
      target = y;
      break;
    }
  }
  if (!target) {
    throw PreconditionError("light-cone replay reaches no string bad for term " + std::to_string(cone.apex));
  }
  DitString y = *target;
  std::vector<PathStep> hops;
  for (std::size_t idx = replay.terms.size(); idx-- > 0;) {
    const SubsetSupport &prev = replay.before[idx];
    if (prev.contains(y)) {
      continue;
    }
    const Term &term = h.term(replay.terms[idx]);
    auto c = class_index_of(y, term);
    bool moved = false;
    if (c) {
      for (const auto &v : term.classes()[*c]) {
        DitString cand = splice(y, term.qudits(), v);
        if (prev.contains(cand)) {
          hops.push_back(PathStep{replay.terms[idx], y});
          y = std::move(cand);
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      throw PreconditionError("no predecessor for '" + y.to_string(h.q()) + "' before term " +
                              std::to_string(replay.terms[idx]));
    }
  }
  if (y != x) {
    throw PreconditionError("path reconstruction did not return to the start string");
  }
  std::reverse(hops.begin(), hops.end());
  return PathWitness{x, std::move(hops), cone.apex};
}

}  // namespace stoqnp
