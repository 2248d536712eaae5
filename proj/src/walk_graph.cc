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

#include "stoqnp/walk_graph.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "stoqnp/errors.h"
#include "stoqnp/rng.h"
#include "stoqnp/stoq_decompose.h"

namespace stoqnp {

namespace {

void require_length(const DitString &x, const HamiltonianInstance &h) {
  if (x.size() != h.n()) {
    throw ParseError("string has " + std::to_string(x.size()) + " symbols, instance has " + std::to_string(h.n()) +
                     " qudits");
  }
  for (auto s : x.dits()) {
    if (s >= h.q()) {
      throw ParseError("string symbol outside the alphabet");
    }
  }
}

}  // namespace

std::optional<std::size_t> class_index_of(const DitString &x, const Term &term) {
  std::int32_t c = term.class_of_local(term.local_index(x));
  if (c < 0) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(c);
}

std::optional<std::vector<DitString>> class_of(const DitString &x, const HamiltonianInstance &h, std::size_t i) {
  auto c = class_index_of(x, h.term(i));
  if (!c) {
    return std::nullopt;
  }
  return h.term(i).classes()[*c];
}

std::vector<Neighbor> neighbors(const DitString &x, const HamiltonianInstance &h) {
  require_length(x, h);
  std::vector<Neighbor> out;
  for (std::size_t i = 0; i < h.m(); i++) {
    const Term &t = h.term(i);
    auto c = class_index_of(x, t);
    if (!c) {
      continue;
    }
    for (const auto &v : t.classes()[*c]) {
      DitString y = splice(x, t.qudits(), v);
      if (y != x) {
        out.push_back(Neighbor{i, std::move(y)});
      }
    }
  }
  return out;
}

std::optional<std::string> check_path(const DitString &start, const std::vector<PathStep> &path,
                                      const HamiltonianInstance &h) {
  DitString prev = start;
  for (std::size_t s = 0; s < path.size(); s++) {
    const auto &step = path[s];
    std::string where = "step " + std::to_string(s) + ": ";
    if (step.term >= h.m()) {
      return where + "term index out of range";
    }
    const Term &t = h.term(step.term);
    if (step.string.size() != prev.size()) {
      return where + "string length changed";
    }
    auto a = class_index_of(prev, t);
    auto b = class_index_of(step.string, t);
    if (!a || !b || *a != *b) {
      return where + "strings are not in one class of term " + std::to_string(step.term);
    }
    for (std::size_t p = 0; p < prev.size(); p++) {
      bool inside = std::find(t.qudits().begin(), t.qudits().end(), p) != t.qudits().end();
      if (!inside && prev[p] != step.string[p]) {
        return where + "qudit " + std::to_string(p) + " outside term " + std::to_string(step.term) + " changed";
      }
    }
    prev = step.string;
  }
  return std::nullopt;
}

std::uint64_t default_walk_steps(const HamiltonianInstance &h) {
  return 64 * static_cast<std::uint64_t>(h.n()) * static_cast<std::uint64_t>(h.m());
}

WalkVerdict bt_walk(const DitString &x0, const HamiltonianInstance &h, std::uint64_t steps, std::uint64_t seed) {
  require_length(x0, h);
  h.require_uniform("bt_walk");
  WalkVerdict v;
  v.start = x0;
  CounterRng rng(seed);
  DitString x = x0;
  for (std::uint64_t t = 0; t < steps; t++) {
    if (auto bad = first_bad_term(x, h)) {
      v.outcome = Outcome::kReject;
      v.violated_term = bad;
      v.steps_taken = t;
      return v;
    }
    if (h.m() == 0) {
      break;
    }
    std::size_t i = rng.uniform(h.m());
    const Term &term = h.term(i);
    const auto &cls = term.classes()[*class_index_of(x, term)];
    const DitString &pick = cls[rng.uniform(cls.size())];
    x = splice(x, term.qudits(), pick);
    v.path.push_back(PathStep{i, x});
    v.steps_taken = t + 1;
  }
  if (auto bad = first_bad_term(x, h)) {
    v.outcome = Outcome::kReject;
    v.violated_term = bad;
    return v;
  }
  v.outcome = Outcome::kAccept;
  return v;
}

std::optional<PathWitness> bfs_to_bad(const DitString &x, const HamiltonianInstance &h, std::uint64_t radius,
                                      std::size_t state_cap) {
  require_length(x, h);
  if (auto bad = first_bad_term(x, h)) {
    return PathWitness{x, {}, *bad};
  }
  std::vector<DitString> nodes{x};
  std::vector<std::size_t> parent{0};
  std::vector<std::size_t> via{0};
  std::unordered_map<DitString, std::size_t, DitStringHash> seen{{x, 0}};
  std::size_t frontier_begin = 0;
  for (std::uint64_t depth = 0; depth < radius; depth++) {
    std::size_t frontier_end = nodes.size();
    if (frontier_begin == frontier_end) {
      break;
    }
    for (std::size_t u = frontier_begin; u < frontier_end; u++) {
      for (auto &nb : neighbors(nodes[u], h)) {
        if (seen.count(nb.string)) {
          continue;
        }
        if (nodes.size() >= state_cap) {
          throw CapacityError("breadth-first search visited more than " + std::to_string(state_cap) +
                              " strings; lower the radius or raise the cap");
        }
        std::size_t id = nodes.size();
        seen.emplace(nb.string, id);
        nodes.push_back(nb.string);
        parent.push_back(u);
        via.push_back(nb.term);
        if (auto bad = first_bad_term(nodes[id], h)) {
          PathWitness w;
          w.start = x;
          w.violated_term = *bad;
          for (std::size_t cur = id; cur != 0; cur = parent[cur]) {
            w.steps.push_back(PathStep{via[cur], nodes[cur]});
          }
          std::reverse(w.steps.begin(), w.steps.end());
          return w;
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return std::nullopt;
}

RadiusBound theoretical_radius(const Rational &eps, std::size_t k, std::size_t d, unsigned q) {
  if (eps <= 0 || eps > 1) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  if (k == 0 || d == 0 || q < 2) {
    throw std::invalid_argument("locality, degree and alphabet size must be positive (q >= 2)");
  }
  using Dec = boost::multiprecision::cpp_dec_float_100;
  Dec e = Dec(boost::multiprecision::numerator(eps).str()) / Dec(boost::multiprecision::denominator(eps).str());
  Dec v = (Dec(2 * k * d) / e) * boost::multiprecision::log(Dec(q)) / boost::multiprecision::log1p(e / 4);
  Dec fl = boost::multiprecision::floor(v);
  if (fl > Dec(1e15)) {
    throw std::overflow_error("layer bound exceeds 1e15");
  }
  // Only an exact integer value keeps its floor; 100 digits separate that from rounding noise.
  auto layers = fl.convert_to<std::uint64_t>();
  if (v - fl > Dec("1e-80")) {
    layers++;
  }
  RadiusBound out;
  out.layers = layers;
  if (layers > (std::uint64_t{1} << 20)) {
    // k^layers has more bits than is useful to store; searches clamp to 64 bits anyway.
    out.path_bound = BigInt(1) << 1024;
    out.headline_bound = out.path_bound;
    return out;
  }
  BigInt kk = k;
  out.headline_bound = boost::multiprecision::pow(kk, static_cast<unsigned>(layers));
  if (k == 1) {
    out.path_bound = layers;
  } else {
    BigInt top = boost::multiprecision::pow(kk, static_cast<unsigned>(layers + 2));
    out.path_bound = (top - kk * kk) / (kk - 1);
  }
  return out;
}

std::uint64_t clamp_radius(const BigInt &r) {
  if (r >= BigInt(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return r.convert_to<std::uint64_t>();
}

}  // namespace stoqnp
