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

#include "stoqnp/verifiers.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stoqnp/errors.h"
#include "stoqnp/parallel.h"
#include "stoqnp/rng.h"
#include "stoqnp/stoq_decompose.h"

namespace stoqnp {

namespace {

WalkVerdict search(const HamiltonianInstance &h, const DitString &witness, std::uint64_t radius,
                   const VerifierConfig &cfg) {
  h.require_uniform("deterministic verifier");
  WalkVerdict v;
  v.start = witness;
  auto found = bfs_to_bad(witness, h, radius, cfg.state_cap);
  if (found) {
    v.outcome = Outcome::kReject;
    v.path = std::move(found->steps);
    v.violated_term = found->violated_term;
    v.steps_taken = v.path.size();
  }
  return v;
}

// Local operator of `t` embedded on the sorted qudit list `u`.
Eigen::MatrixXd embed(const Term &t, const std::vector<std::size_t> &u, unsigned q) {
  std::uint64_t dim = checked_pow(q, u.size());
  std::vector<std::size_t> pos;
  for (auto v : t.qudits()) {
    pos.push_back(static_cast<std::size_t>(std::find(u.begin(), u.end(), v) - u.begin()));
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < u.size(); i++) {
    if (std::find(pos.begin(), pos.end(), i) == pos.end()) {
      rest.push_back(i);
    }
  }
  auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  const auto &m = t.local_operator();
  for (std::uint64_t x = 0; x < dim; x++) {
    DitString sx = DitString::from_index(x, u.size(), q);
    for (std::uint64_t y = 0; y < dim; y++) {
      DitString sy = DitString::from_index(y, u.size(), q);
      if (restrict_to(sx, rest) != restrict_to(sy, rest)) {
        continue;
      }
      auto a = static_cast<Eigen::Index>(local_index(sx, pos, q));
      auto b = static_cast<Eigen::Index>(local_index(sy, pos, q));
      out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = m(a, b);
    }
  }
  return out;
}

struct Overlap {
  Rational exact;
  double value = 0.0;
  bool is_exact = true;
};

Overlap diagonal_overlap(const Term &t, const DitString &w) {
  std::uint64_t local = t.local_index(w);
  Overlap o;
  if (t.uniform()) {
    std::int32_t c = t.class_of_local(local);
    o.exact = c < 0 ? Rational(0) : Rational(1, static_cast<long long>(t.members(static_cast<std::size_t>(c)).size()));
    o.value = to_double(o.exact);
    return o;
  }
  if (t.exact_matrix()) {
    auto p = exact_groundspace_projector(*t.exact_matrix(), t.shift());
    if (p) {
      Rational trace = 0;
      for (std::size_t i = 0; i < p->dim; i++) {
        trace += (*p)(i, i);
      }
      if (trace == Rational(BigInt(t.groundspace_states().size()))) {
        o.exact = (*p)(local, local);
        o.value = to_double(o.exact);
        return o;
      }
    }
  }
  o.is_exact = false;
  for (const auto &phi : t.groundspace_states()) {
    double a = phi(static_cast<Eigen::Index>(local));
    o.value += a * a;
  }
  return o;
}

}  // namespace

std::uint64_t resolve_radius(const HamiltonianInstance &h, const VerifierConfig &cfg) {
  if (cfg.radius) {
    return *cfg.radius;
  }
  if (cfg.epsilon) {
    return clamp_radius(theoretical_radius(*cfg.epsilon, h.k(), h.d(), h.q()).path_bound);
  }
  throw std::invalid_argument("verifier needs a radius or an epsilon");
}

WalkVerdict np_verify(const HamiltonianInstance &h, const DitString &witness, const VerifierConfig &cfg) {
  return search(h, witness, resolve_radius(h, cfg), cfg);
}

WalkVerdict negligible_verify(const HamiltonianInstance &h, const DitString &witness, std::uint64_t t,
                              const VerifierConfig &cfg) {
  return search(h, witness, t, cfg);
}

WalkVerdict pinned_verify(const HamiltonianInstance &h, const VerifierConfig &cfg) {
  return np_verify(h, DitString(h.n(), 0), cfg);
}

CommutingCheck check_commuting(const HamiltonianInstance &h, double tol) {
  CommutingCheck out;
  for (std::size_t i = 0; i < h.m(); i++) {
    for (std::size_t j = i + 1; j < h.m(); j++) {
      const auto &a = h.term(i).qudits();
      const auto &b = h.term(j).qudits();
      std::vector<std::size_t> u(a.begin(), a.end());
      u.insert(u.end(), b.begin(), b.end());
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      if (u.size() == a.size() + b.size()) {
        continue;
      }
      Eigen::MatrixXd ea = embed(h.term(i), u, h.q());
      Eigen::MatrixXd eb = embed(h.term(j), u, h.q());
      double c = (ea * eb - eb * ea).cwiseAbs().maxCoeff();
      out.max_commutator = std::max(out.max_commutator, c);
      if (c > tol && out.commuting) {
        out.commuting = false;
        out.witness_pair = std::pair{i, j};
      }
    }
  }
  return out;
}

WalkVerdict commuting_verify(const HamiltonianInstance &h, const DitString &witness, const VerifierConfig &cfg) {
  if (witness.size() != h.n()) {
    throw ParseError("witness length does not match the instance");
  }
  CommutingCheck cc = check_commuting(h, cfg.tol);
  if (!cc.commuting) {
    throw PreconditionError("terms " + std::to_string(cc.witness_pair->first) + " and " +
                            std::to_string(cc.witness_pair->second) + " do not commute");
  }
  const Rational threshold(BigInt(1), BigInt(2) * boost::multiprecision::pow(BigInt(h.q()), static_cast<unsigned>(h.k())));
  const double threshold_d = to_double(threshold);
  WalkVerdict v;
  v.start = witness;
  v.threshold = to_string(threshold);
  std::optional<Overlap> lowest;
  for (std::size_t i = 0; i < h.m(); i++) {
    Overlap o = diagonal_overlap(h.term(i), witness);
    v.exact = v.exact && o.is_exact;
    bool fails = o.is_exact ? o.exact <= threshold : o.value <= threshold_d;
    if (!lowest || o.value < lowest->value) {
      lowest = o;
    }
    if (fails) {
      v.outcome = Outcome::kReject;
      v.violated_term = i;
      v.overlap = o.is_exact ? to_string(o.exact) : std::to_string(o.value);
      return v;
    }
  }
  v.outcome = Outcome::kAccept;
  if (lowest) {
    v.overlap = lowest->is_exact ? to_string(lowest->exact) : std::to_string(lowest->value);
  }
  return v;
}

MaStatistics ma_verify(const HamiltonianInstance &h, const DitString &witness, const VerifierConfig &cfg) {
  h.require_uniform("ma_verify");
  MaStatistics s;
  s.trials = cfg.trials;
  s.steps = cfg.steps ? cfg.steps : default_walk_steps(h);
  std::vector<char> accepted(cfg.trials, 0);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    accepted[t] = bt_walk(witness, h, s.steps, derive_seed(cfg.seed, t)).outcome == Outcome::kAccept;
  });
  for (std::uint64_t t = 0; t < cfg.trials; t++) {
    if (accepted[t]) {
      s.accepts++;
    } else if (!s.sample_reject) {
      // Walks are pure functions of their seed, so the evidence is a replay.
      s.sample_reject = bt_walk(witness, h, s.steps, derive_seed(cfg.seed, t));
      s.sample_reject_trial = t;
    }
  }
  s.accept_rate = cfg.trials ? static_cast<double>(s.accepts) / static_cast<double>(cfg.trials) : 0.0;
  return s;
}

}  // namespace stoqnp
