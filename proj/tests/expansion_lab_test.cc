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
#include <numeric>
#include <random>
#include <set>

#include "stoqnp/errors.h"
#include "stoqnp/expansion_lab.h"
#include "stoqnp/spectral_oracle.h"
#include "stoqnp/stoq_decompose.h"
#include "support/dense_reference.h"
#include "support/generators.h"

using namespace stoqnp;
using namespace stoqnp::testing;

namespace {

SubsetSupport sup(std::initializer_list<const char *> xs) {
  std::vector<DitString> v;
  for (auto x : xs) {
    v.push_back(DitString::parse(x, 2));
  }
  return SubsetSupport(std::move(v));
}

bool overlaps(const Term &a, const Term &b) {
  for (auto v : a.qudits()) {
    if (std::find(b.qudits().begin(), b.qudits().end(), v) != b.qudits().end()) {
      return true;
    }
  }
  return false;
}

// Instances whose ground energy is at least 0.01, with eps a rational just below it.
struct Certified {
  HamiltonianInstance h;
  Rational eps;
};

std::vector<Certified> certified_corpus(std::uint64_t seed, std::size_t count, std::size_t n_max) {
  std::mt19937_64 rng(seed);
  std::vector<Certified> out;
  while (out.size() < count) {
    auto h = random_uniform_instance(rng, {.n_min = 3, .n_max = n_max});
    double lambda = ground_energy(h).lambda_min;
    if (lambda < 0.01) {
      continue;
    }
    // floor to 1/10000 and back off by one unit for eigensolver error
    auto num = static_cast<long long>(lambda * 10000) - 1;
    out.push_back({std::move(h), Rational(num, 10000)});
  }
  return out;
}

}  // namespace

TEST_CASE("parallel-term example") {
  auto e1 = load_fixture("E1.json");
  auto s = sup({"0000", "0011", "1100", "1111"});
  CHECK(term_energy_subset(s, e1.term(0)) == Rational(1, 2));
  CHECK(term_energy_subset(s, e1.term(1)) == Rational(1, 2));
  // both terms are frustrated by one half on S
  CHECK(instance_energy_subset(s, e1) == Rational(1, 2));

  auto s_prime = apply_projector_subset(s, e1.term(0));
  CHECK(s_prime == sup({"0000", "0110", "0011", "0101", "1100", "1010", "1111", "1001"}));
  CHECK(term_energy_subset(s_prime, e1.term(1)) == 0);
  CHECK(term_energy_subset(s_prime, e1.term(0)) == 0);
}

TEST_CASE("subset energy hand cases") {
  auto e1 = load_fixture("E1.json");
  CHECK(instance_energy_subset(sup({"0000", "0110", "1001", "1111"}), e1) == 0);
  // one full class with fixed outside part
  CHECK(term_energy_subset(sup({"0100", "1101"}), e1.term(0)) == 0);

  auto e5 = load_fixture("E5.json");
  auto single = sup({"000"});
  Eigen::MatrixXd dense = reference_hamiltonian(e5);
  CHECK(to_double(instance_energy_subset(single, e5)) == doctest::Approx(dense(0, 0)).epsilon(1e-12));
}

TEST_CASE("subset energy matches the dense expectation") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 60; t++) {
    auto h = random_uniform_instance(rng, {.n_min = 2, .n_max = 6});
    Eigen::MatrixXd dense = reference_hamiltonian(h);
    std::size_t dim = h.dimension();
    auto s = random_support(rng, h.n(), h.q(), 1 + rng() % dim);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
    for (const auto &x : s) {
      v(static_cast<Eigen::Index>(x.to_index(h.q()))) = 1;
    }
    v /= v.norm();
    CHECK(to_double(instance_energy_subset(s, h)) == doctest::Approx(v.dot(dense * v)).epsilon(1e-12));
  }
}

TEST_CASE("projector action examples") {
  auto single = Term::from_sets({0, 1}, {{DitString::parse("00", 2), DitString::parse("11", 2)}}, 2);
  CHECK(apply_projector_subset(sup({"00"}), single) == sup({"00", "11"}));
  // bad strings are dropped
  CHECK(apply_projector_subset(sup({"00", "01"}), single) == sup({"00", "11"}));
  CHECK_THROWS_AS(apply_projector_subset(sup({"01", "10"}), single), PreconditionError);
}

TEST_CASE("projector action matches the dense support") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 300; t++) {
    auto h = random_uniform_instance(rng, {.n_min = 2, .n_max = 7});
    const auto &term = h.term(rng() % h.m());
    auto s = random_support(rng, h.n(), h.q(), 1 + rng() % 6);
    auto want = reference_apply(term, s, h.n(), h.q());
    if (want.empty()) {
      CHECK_THROWS_AS(apply_projector_subset(s, term), PreconditionError);
    } else {
      CHECK(apply_projector_subset(s, term) == SubsetSupport(want));
    }
  }
}

TEST_CASE("sequential application matches the dense composed projection") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 60; t++) {
    auto h = random_uniform_instance(rng, {.n_min = 3, .n_max = 6, .keep = 0.9});
    auto all = all_strings(h.n(), h.q());
    auto s = random_support(rng, h.n(), h.q(), 1 + rng() % 4);
    // dense: P_{i2} P_{i1} |S> with entries from the reference
    std::vector<std::size_t> order{rng() % h.m(), rng() % h.m()};
    std::vector<Rational> v(all.size());
    for (const auto &x : s) {
      v[x.to_index(h.q())] = 1;
    }
    for (auto i : order) {
      std::vector<Rational> w(all.size());
      for (std::size_t a = 0; a < all.size(); a++) {
        for (std::size_t b = 0; b < all.size(); b++) {
          if (v[b] != 0) {
            std::vector<int> xa(all[a].dits().begin(), all[a].dits().end());
            std::vector<int> xb(all[b].dits().begin(), all[b].dits().end());
            w[a] += reference_projector_entry(h.term(i), xa, xb) * v[b];
          }
        }
      }
      v = w;
    }
    std::vector<DitString> want;
    for (std::size_t a = 0; a < all.size(); a++) {
      if (v[a] != 0) {
        want.push_back(all[a]);
      }
    }
    SubsetSupport cur = s;
    bool annihilated = false;
    for (auto i : order) {
      try {
        cur = apply_projector_subset(cur, h.term(i));
      } catch (const PreconditionError &) {
        annihilated = true;
        break;
      }
    }
    if (annihilated) {
      CHECK(want.empty());
    } else {
      CHECK(cur == SubsetSupport(want));
    }
  }
}

TEST_CASE("one-term expansion and good-string retention") {
  std::mt19937_64 rng(59);
  int checked = 0;
  for (int t = 0; t < 1000; t++) {
    auto h = random_uniform_instance(rng, {.n_min = 2, .n_max = 6});
    const auto &term = h.term(rng() % h.m());
    auto raw = random_support(rng, h.n(), h.q(), 1 + rng() % 8);
    std::vector<DitString> good;
    for (const auto &x : raw) {
      if (!is_bad(x, term)) {
        good.push_back(x);
      }
    }
    if (good.empty()) {
      continue;
    }
    SubsetSupport s(good);
    Rational delta = term_energy_subset(s, term);
    auto out = apply_projector_subset(s, term);
    for (const auto &x : s) {
      CHECK(out.contains(x));
    }
    CHECK(Rational(BigInt(out.size())) >= (1 + delta / 2) * Rational(BigInt(s.size())));
    checked++;
  }
  CHECK(checked > 500);
}

TEST_CASE("greedy layer examples") {
  auto e1 = load_fixture("E1.json");
  auto layer = find_frustrated_layer(sup({"0000"}), e1, Rational(1));
  CHECK(layer.terms == std::vector<std::size_t>{0, 1});
  CHECK(apply_layer(sup({"0000"}), layer, e1) == sup({"0000", "1001", "0110", "1111"}));
  CHECK(find_frustrated_layer(sup({"0000", "0110", "1001", "1111"}), e1, Rational(1)).empty());
  CHECK(apply_layer(sup({"0000"}), Layer{}, e1) == sup({"0000"}));
}

TEST_CASE("layer order does not matter") {
  std::mt19937_64 rng(61);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 100; t++) {
    auto h = random_uniform_instance(rng, {.n_min = 4, .n_max = 8, .arity_max = 2, .keep = 0.9});
    auto s = random_support(rng, h.n(), h.q(), 1 + rng() % 3);
    // greedy non-overlapping set in random order
    std::vector<std::size_t> idx(h.m());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    Layer layer;
    for (auto i : idx) {
      bool ok = std::none_of(layer.terms.begin(), layer.terms.end(),
                             [&](std::size_t j) { return overlaps(h.term(i), h.term(j)); });
      if (ok) {
        layer.terms.push_back(i);
      }
    }
    if (layer.size() < 2) {
      continue;
    }
    SubsetSupport first;
    try {
      first = apply_layer(s, layer, h);
    } catch (const PreconditionError &) {
      continue;
    }
    for (int p = 0; p < 4; p++) {
      std::shuffle(layer.terms.begin(), layer.terms.end(), rng);
      CHECK(apply_layer(s, layer, h) == first);
    }
    checked++;
  }
  CHECK(checked == 100);
}

TEST_CASE("runs on the two frustrated-chain fixture") {
  auto e5 = load_fixture("E5.json");
  auto x = DitString::parse("000", 2);
  auto run = layers_to_bad(x, e5, Rational(1, 4));
  REQUIRE(run.found);
  CHECK(run.layers.size() <= 2);
  CHECK(*run.bad_string == DitString::parse("101", 2));
  CHECK(*run.apex == 2);

  auto cone = lightcone(run.layers, *run.apex, e5);
  CHECK(cone.qudit_sets.back() == std::vector<std::size_t>{0, 2});
  auto path = reconstruct_path(x, cone, e5);
  REQUIRE(path.length() == 2);
  CHECK(path.steps[0].string == DitString::parse("110", 2));
  CHECK(path.steps[1].string == DitString::parse("101", 2));
  CHECK(path.violated_term == 2);
  CHECK(!check_path(x, path.steps, e5));
}

TEST_CASE("runs on a frustration-free fixture exhaust") {
  auto e1 = load_fixture("E1.json");
  auto run = layers_to_bad(DitString::parse("0000", 2), e1, Rational(1));
  CHECK(!run.found);
  CHECK(run.exhausted);
  CHECK(run.layers.size() == 1);
  CHECK(run.supports.back() == sup({"0000", "0110", "1001", "1111"}));
}

TEST_CASE("light cone hand cases") {
  // terms on {0,1}, {2,3}, {1,2}; apex on {4}
  std::vector<Term> terms;
  auto all2 = std::vector<std::vector<DitString>>{{DitString::parse("00", 2), DitString::parse("11", 2)},
                                                  {DitString::parse("01", 2), DitString::parse("10", 2)}};
  terms.push_back(Term::from_sets({0, 1}, all2, 2));
  terms.push_back(Term::from_sets({2, 3}, all2, 2));
  terms.push_back(Term::from_sets({1, 2}, all2, 2));
  terms.push_back(Term::from_sets({4}, {{DitString::parse("0", 2)}}, 2));
  HamiltonianInstance h(5, 2, 2, 2, terms);
  std::vector<Layer> layers{Layer{{0, 1}}};
  auto far = lightcone(layers, 3, h);
  CHECK(far.layers[0].empty());
  CHECK(far.qudit_sets[0] == std::vector<std::size_t>{4});

  // apex {1,2} pulls both terms of the layer below
  auto near = lightcone(layers, 2, h);
  CHECK(near.layers[0].terms == std::vector<std::size_t>{0, 1});
  CHECK(near.qudit_sets[0] == std::vector<std::size_t>{0, 1, 2, 3});

  // x bad for the apex, empty cone: zero-length path
  auto p = reconstruct_path(DitString::parse("00001", 2), far, h);
  CHECK(p.length() == 0);
}

TEST_CASE("frustrated-term count on certified instances") {
  auto corpus = certified_corpus(67, 20, 7);
  std::mt19937_64 rng(71);
  for (const auto &[h, eps] : corpus) {
    for (int t = 0; t < 10; t++) {
      auto s = random_support(rng, h.n(), h.q(), 1 + rng() % 6);
      std::size_t frustrated = 0;
      for (const auto &term : h.terms()) {
        if (term_energy_subset(s, term) >= eps / 2) {
          frustrated++;
        }
      }
      CHECK(Rational(BigInt(frustrated)) >= eps * Rational(BigInt(h.m())) / 2);
    }
  }
}

TEST_CASE("greedy guarantees, cone and path on certified instances") {
  auto corpus = certified_corpus(73, 25, 7);
  for (const auto &[h, eps] : corpus) {
    for (const auto &x : all_strings(h.n(), h.q())) {
      if (first_bad_term(x, h)) {
        continue;
      }
      auto run = layers_to_bad(x, h, eps);
      REQUIRE(run.found);
      for (std::size_t l = 0; l < run.layers.size(); l++) {
        const auto &layer = run.layers[l];
        // sequentially eps/2 frustrated
        SubsetSupport cur = run.supports[l];
        for (std::size_t a = 0; a < layer.size(); a++) {
          CHECK(term_energy_subset(cur, h.term(layer.terms[a])) >= eps / 2);
          for (std::size_t b = a + 1; b < layer.size(); b++) {
            CHECK(!overlaps(h.term(layer.terms[a]), h.term(layer.terms[b])));
          }
          cur = apply_projector_subset(cur, h.term(layer.terms[a]));
        }
        CHECK(cur == run.supports[l + 1]);
        CHECK(Rational(BigInt(layer.size())) >= eps * Rational(BigInt(h.m())) / (2 * Rational(BigInt(h.k() * h.d()))));
        CHECK(run.growth[l] >= 1);
      }
      auto cone = lightcone(run.layers, *run.apex, h);
      std::size_t ell = run.layers.size();
      for (std::size_t j = 0; j <= ell; j++) {
        BigInt cap = boost::multiprecision::pow(BigInt(h.k()), static_cast<unsigned>(ell - j + 1));
        CHECK(BigInt(cone.qudit_sets[j].size()) <= cap);
      }
      auto path = reconstruct_path(x, cone, h);
      CHECK(!check_path(x, path.steps, h));
      CHECK(is_bad(path.end(), h.term(*run.apex)));
      CHECK(BigInt(path.length()) <= theoretical_radius(eps, h.k(), h.d(), h.q()).path_bound);
    }
  }
}
