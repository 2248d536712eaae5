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

#include "doctest.h"

#include <algorithm>
#include <random>

#include "stoqnp/errors.h"
#include "stoqnp/spectral_oracle.h"
#include "stoqnp/stoq_decompose.h"
#include "stoqnp/verifiers.h"
#include "support/dense_reference.h"
#include "support/generators.h"

using namespace stoqnp;
using namespace stoqnp::testing;

namespace {

DitString s2(const char *x) { return DitString::parse(x, 2); }

VerifierConfig with_radius(std::uint64_t r) {
  VerifierConfig c;
  c.radius = r;
  return c;
}

// Dense projector of a uniform term on the full register, from reference entries.
Eigen::MatrixXd dense_projector(const Term &t, std::size_t n, unsigned q) {
  auto all = all_strings(n, q);
  auto dim = static_cast<Eigen::Index>(all.size());
  Eigen::MatrixXd p(dim, dim);
  for (Eigen::Index a = 0; a < dim; a++) {
    for (Eigen::Index b = 0; b < dim; b++) {
      std::vector<int> xa(all[a].dits().begin(), all[a].dits().end());
      std::vector<int> xb(all[b].dits().begin(), all[b].dits().end());
      p(a, b) = to_double(reference_projector_entry(t, xa, xb));
    }
  }
  return p;
}

}  // namespace

TEST_CASE("np verifier examples") {
  auto e1 = load_fixture("E1.json");
  CHECK(np_verify(e1, s2("0000"), with_radius(10)).outcome == Outcome::kAccept);

  auto e5 = load_fixture("E5.json");
  auto v = np_verify(e5, s2("000"), with_radius(2));
  CHECK(v.outcome == Outcome::kReject);
  REQUIRE(v.path.size() == 2);
  CHECK(v.end() == s2("101"));
  CHECK(v.violated_term == std::optional<std::size_t>{2});
  CHECK(np_verify(e5, s2("000"), with_radius(1)).outcome == Outcome::kAccept);

  auto e3 = load_fixture("E3.json");
  for (const auto &x : all_strings(2, 2)) {
    CHECK(np_verify(e3, x, with_radius(0)).outcome == Outcome::kReject);
  }
  CHECK_THROWS_AS(np_verify(e1, s2("000"), with_radius(1)), std::exception);
}

TEST_CASE("radius derived from epsilon") {
  auto e5 = load_fixture("E5.json");
  VerifierConfig c;
  c.epsilon = Rational(1, 4);
  auto b = theoretical_radius(Rational(1, 4), e5.k(), e5.d(), e5.q());
  CHECK(resolve_radius(e5, c) == clamp_radius(b.path_bound));
  CHECK(np_verify(e5, s2("000"), c).outcome == Outcome::kReject);
  CHECK_THROWS(resolve_radius(e5, VerifierConfig{}));
}

TEST_CASE("negligible verifier") {
  // E6: E1 plus a weak penalty on 1111
  auto e6 = load_fixture("E6.json");
  VerifierConfig c;
  CHECK(negligible_verify(e6, s2("0000"), 1, c).outcome == Outcome::kAccept);
  auto far = negligible_verify(e6, s2("0000"), 2, c);
  CHECK(far.outcome == Outcome::kReject);
  CHECK(far.end() == s2("1111"));
  // the 1-ball of 0000 is all good
  for (const auto &n : neighbors(s2("0000"), e6)) {
    CHECK(!first_bad_term(n.string, e6));
  }
  auto e5 = load_fixture("E5.json");
  CHECK(negligible_verify(e5, s2("000"), 2, c).outcome == Outcome::kReject);
  for (const auto &x : all_strings(3, 2)) {
    CHECK((negligible_verify(e5, x, 0, c).outcome == Outcome::kReject) == first_bad_term(x, e5).has_value());
  }
}

TEST_CASE("pinned verifier") {
  auto cfg = with_radius(6);
  CHECK(pinned_verify(load_fixture("E1.json"), cfg).outcome == Outcome::kAccept);
  CHECK(pinned_verify(load_fixture("E3.json"), cfg).outcome == Outcome::kReject);
  auto v = pinned_verify(load_fixture("E5.json"), cfg);
  CHECK(v.outcome == Outcome::kReject);
  REQUIRE(v.path.size() == 2);
  CHECK(v.path[0].string == s2("110"));
  CHECK(v.path[1].string == s2("101"));
}

TEST_CASE("commuting checks") {
  CHECK(check_commuting(load_fixture("E3.json")).commuting);
  CHECK(check_commuting(load_fixture("E1.json")).commuting);
  CHECK(check_commuting(load_fixture("E4.json")).commuting);
  auto e5 = check_commuting(load_fixture("E5.json"));
  CHECK(!e5.commuting);
  CHECK(e5.witness_pair.has_value());
  CHECK(e5.max_commutator > 0.1);
}

TEST_CASE("commuting check matches the dense commutator") {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 60; t++) {
    auto h = random_uniform_instance(rng, {.n_min = 2, .n_max = 4, .arity_max = 2, .density = 0.8, .keep = 0.9});
    bool dense = true;
    std::vector<Eigen::MatrixXd> ps;
    for (const auto &term : h.terms()) {
      ps.push_back(dense_projector(term, h.n(), h.q()));
    }
    for (std::size_t a = 0; a < ps.size(); a++) {
      for (std::size_t b = a + 1; b < ps.size(); b++) {
        if ((ps[a] * ps[b] - ps[b] * ps[a]).cwiseAbs().maxCoeff() > 1e-9) {
          dense = false;
        }
      }
    }
    CHECK(check_commuting(h).commuting == dense);
  }
}

TEST_CASE("commuting verifier examples") {
  VerifierConfig c;
  auto e3 = commuting_verify(load_fixture("E3.json"), s2("00"), c);
  CHECK(e3.outcome == Outcome::kReject);
  CHECK(e3.violated_term == std::optional<std::size_t>{1});
  CHECK(e3.overlap == std::optional<std::string>{"0"});
  CHECK(e3.threshold == std::optional<std::string>{"1/8"});
  CHECK(e3.exact);

  auto e2 = commuting_verify(load_fixture("E2.json"), s2("00"), c);
  CHECK(e2.outcome == Outcome::kAccept);
  CHECK(e2.overlap == std::optional<std::string>{"1/2"});

  auto m = commuting_verify(load_fixture("E1_matrix.json"), s2("0000"), c);
  CHECK(m.outcome == Outcome::kAccept);
  CHECK(m.exact);
  // float entries: <0|P|0> = 3/4 against 1/4
  auto f = commuting_verify(load_fixture("nonuniform.json"), DitString::parse("0", 2), c);
  CHECK(f.outcome == Outcome::kAccept);
  CHECK(!f.exact);
  CHECK_THROWS_AS(commuting_verify(load_fixture("E5.json"), s2("000"), c), PreconditionError);
}

TEST_CASE("commuting verifier agrees with the oracle") {
  std::mt19937_64 rng(113);
  int ff = 0, total = 0;
  std::vector<HamiltonianInstance> cases;
  for (auto name : {"E1.json", "E2.json", "E3.json", "E4.json"}) {
    cases.push_back(load_fixture(name));
  }
  for (int t = 0; t < 80; t++) {
    cases.push_back(random_commuting_instance(rng));
  }
  for (const auto &h : cases) {
    REQUIRE(check_commuting(h).commuting);
    bool oracle_ff = ground_energy(h).lambda_min <= tol::kZeroEnergy;
    auto w = witness_from_groundstate(h);
    auto v = commuting_verify(h, w, VerifierConfig{});
    CHECK((v.outcome == Outcome::kAccept) == oracle_ff);
    ff += oracle_ff;
    total++;
  }
  CHECK(ff > 5);
  CHECK(ff < total - 5);
}

TEST_CASE("ma verifier") {
  VerifierConfig c;
  c.steps = 30;
  c.trials = 50;
  c.seed = 3;
  auto e2 = ma_verify(load_fixture("E2.json"), s2("00"), c);
  CHECK(e2.accept_rate == 1.0);
  CHECK(!e2.sample_reject);
  auto e3 = ma_verify(load_fixture("E3.json"), s2("01"), c);
  CHECK(e3.accept_rate == 0.0);

  c.steps = 50;
  c.trials = 200;
  c.seed = 7;
  auto e5 = load_fixture("E5.json");
  auto r = ma_verify(e5, s2("000"), c);
  CHECK(r.accept_rate <= 0.25);
  REQUIRE(r.sample_reject);
  CHECK(!check_path(r.sample_reject->start, r.sample_reject->path, e5));

  // thread count does not change the statistics
  c.threads = 4;
  auto again = ma_verify(e5, s2("000"), c);
  CHECK(again.accepts == r.accepts);
  CHECK(again.sample_reject_trial == r.sample_reject_trial);
}
