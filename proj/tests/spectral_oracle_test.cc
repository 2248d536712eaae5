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

#include <cmath>
#include <random>

#include "stoqnp/errors.h"
#include "stoqnp/expansion_lab.h"
#include "stoqnp/spectral_oracle.h"
#include "stoqnp/stoq_decompose.h"
#include "support/dense_reference.h"
#include "support/generators.h"

using namespace stoqnp;
using namespace stoqnp::testing;

namespace {

DitString s2(const char *x) { return DitString::parse(x, 2); }

Eigen::VectorXd subset_vector(const std::vector<DitString> &s, const HamiltonianInstance &h) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(h.dimension()));
  for (const auto &x : s) {
    v(static_cast<Eigen::Index>(x.to_index(h.q()))) = 1;
  }
  return v / v.norm();
}

}  // namespace

TEST_CASE("ground energies of the fixtures") {
  auto e2 = load_fixture("E2.json");
  auto g2 = ground_energy(e2);
  CHECK(std::abs(g2.lambda_min) <= 1e-9);
  CHECK(g2.groundstate(0) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(g2.groundstate(3) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(g2.groundstate(1)) <= 1e-9);

  auto e3 = load_fixture("E3.json");
  CHECK(ground_energy(e3).lambda_min == doctest::Approx(0.5).epsilon(1e-12));

  auto e1 = load_fixture("E1.json");
  auto g1 = ground_energy(e1);
  CHECK(std::abs(g1.lambda_min) <= 1e-9);
  CHECK(g1.residual <= tol::kResidual);
  CHECK(g1.groundstate.minCoeff() >= -1e-10);
}

TEST_CASE("matrix-free application matches the reference matrix") {
  std::mt19937_64 rng(79);
  for (int t = 0; t < 30; t++) {
    auto h = random_uniform_instance(rng, {.n_min = 2, .n_max = 7});
    Eigen::MatrixXd ref = reference_hamiltonian(h);
    CHECK((dense_hamiltonian(h) - ref).norm() < 1e-12);
    auto psi = random_nonneg_state(rng, h.dimension(), 0.3);
    CHECK((apply_hamiltonian(h, psi) - ref * psi).norm() < 1e-12);
    CHECK(expectation(h, psi) == doctest::Approx(psi.dot(ref * psi)).epsilon(1e-12));
  }
}

TEST_CASE("dense and iterative agree with the reference") {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 40; t++) {
    auto h = random_uniform_instance(rng, {.n_min = 3, .n_max = 9});
    double ref = reference_lambda_min(h);
    auto dense = ground_energy(h, OracleMethod::kDense);
    auto iter = ground_energy(h, OracleMethod::kIterative);
    CAPTURE(t);
    CHECK(std::abs(dense.lambda_min - ref) <= 1e-9);
    CHECK(std::abs(iter.lambda_min - dense.lambda_min) <= tol::kDenseIterativeAgreement);
    CHECK(dense.residual <= tol::kResidual);
    CHECK(iter.residual <= tol::kResidual);
    CHECK(iter.groundstate.minCoeff() >= -1e-10);
    // same projection of the uniform vector
    CHECK((iter.groundstate - dense.groundstate).norm() <= 1e-5);
  }
}

TEST_CASE("iterative method beyond the dense limit") {
  // 14-qubit ring of two-Bell terms: frustration-free
  std::vector<Term> terms;
  std::vector<std::vector<DitString>> bell{{s2("00"), s2("11")}, {s2("01"), s2("10")}};
  for (std::size_t i = 0; i < 14; i++) {
    terms.push_back(Term::from_sets({i, (i + 1) % 14}, bell, 2));
  }
  HamiltonianInstance h(14, 2, 2, 2, terms);
  auto g = ground_energy(h);
  CHECK(g.method == OracleMethod::kIterative);
  CHECK(std::abs(g.lambda_min) <= 1e-8);
  CHECK_THROWS_AS(ground_energy(h, OracleMethod::kDense), CapacityError);
}

TEST_CASE("frustration-free certificate") {
  auto e1 = load_fixture("E1.json");
  auto c = exact_frustration_free(e1);
  CHECK(c.frustration_free);
  CHECK(c.component == std::vector<DitString>{s2("0000"), s2("0110"), s2("1001"), s2("1111")});
  CHECK(c.component_energy == 0);
  CHECK(instance_energy_subset(SubsetSupport(c.component), e1) == 0);

  CHECK(!exact_frustration_free(load_fixture("E3.json")).frustration_free);
  CHECK(!exact_frustration_free(load_fixture("E5.json")).frustration_free);
}

TEST_CASE("frustration-free iff zero ground energy") {
  std::vector<HamiltonianInstance> cases;
  for (auto name : {"E1.json", "E2.json", "E3.json", "E4.json", "E5.json"}) {
    cases.push_back(load_fixture(name));
  }
  std::mt19937_64 rng(89);
  for (int t = 0; t < 100; t++) {
    cases.push_back(random_uniform_instance(rng, {.keep = 0.85}));
  }
  int ff = 0;
  for (const auto &h : cases) {
    bool zero = ground_energy(h).lambda_min <= tol::kZeroEnergy;
    auto c = exact_frustration_free(h);
    CHECK(c.frustration_free == zero);
    ff += c.frustration_free;
  }
  // both branches exercised
  CHECK(ff > 3);
  CHECK(ff < static_cast<int>(cases.size()) - 3);
}

TEST_CASE("minimum unsat by enumeration") {
  auto e2 = to_setcsp(load_fixture("E2.json"));
  auto r2 = min_unsat_over_subsets(e2);
  CHECK(r2.value == 0);
  CHECK(r2.argmin == std::vector<DitString>{s2("00"), s2("11")});

  auto r3 = min_unsat_over_subsets(to_setcsp(load_fixture("E3.json")));
  CHECK(r3.value == Rational(1, 2));

  // variational bound on small random instances
  std::mt19937_64 rng(97);
  for (int t = 0; t < 30; t++) {
    auto h = random_uniform_instance(rng, {.n_min = 2, .n_max = 4, .arity_max = 2});
    auto r = min_unsat_over_subsets(to_setcsp(h));
    CHECK(to_double(r.value) >= ground_energy(h).lambda_min - 1e-9);
    CHECK(unsat(to_setcsp(h), r.argmin) == r.value);
  }
  std::vector<Term> five;
  for (std::size_t i = 0; i + 1 < 5; i++) {
    five.push_back(Term::from_sets({i, i + 1}, {{s2("00"), s2("11")}}, 2));
  }
  CHECK_THROWS_AS(min_unsat_over_subsets(to_setcsp(HamiltonianInstance(5, 2, 2, 2, five))), CapacityError);
}

TEST_CASE("subset energy equals the constraint view") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 200; t++) {
    auto h = random_uniform_instance(rng, {.n_min = 2, .n_max = 8});
    auto s = random_support(rng, h.n(), h.q(), 1 + rng() % 20);
    CHECK(instance_energy_subset(s, h) == unsat(to_setcsp(h), s.span()));
  }
}

TEST_CASE("variational consistency") {
  std::mt19937_64 rng(103);
  for (auto name : {"E1.json", "E3.json", "E4.json", "E5.json", "E6.json"}) {
    auto h = load_fixture(name);
    double lambda = ground_energy(h).lambda_min;
    for (int t = 0; t < 50; t++) {
      auto s = random_support(rng, h.n(), h.q(), 1 + rng() % h.dimension());
      CHECK(lambda <= to_double(instance_energy_subset(s, h)) + 1e-12);
    }
  }
}

TEST_CASE("weight bounds") {
  auto e1 = load_fixture("E1.json");
  auto single = subset_vector({s2("0000")}, e1);
  auto b = boundary_weight_check(single, e1);
  // both terms see |0000> with energy 1/2
  CHECK(b.lhs == doctest::Approx(0.5));
  CHECK(b.rhs == doctest::Approx(1.0 / 8.0));
  CHECK(b.holds);

  auto closed = subset_vector({s2("0000"), s2("0110"), s2("1001"), s2("1111")}, e1);
  auto c = boundary_weight_check(closed, e1);
  CHECK(c.rhs == 0);
  CHECK(c.holds);

  auto e2 = load_fixture("E2.json");
  auto g = ground_energy(e2);
  auto w = bad_weight_check(g.groundstate, e2);
  CHECK(w.lhs == doctest::Approx(0.0));
  CHECK(w.holds);

  auto e5 = load_fixture("E5.json");
  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(8, 1 / std::sqrt(8.0));
  auto u = bad_weight_check(uniform, e5);
  // tight: the Bell terms are satisfied and the third term's energy is exactly the bad weight
  CHECK(u.holds);
  CHECK(u.lhs == doctest::Approx(0.25));
  CHECK(u.rhs == doctest::Approx(0.25));

  // the weak penalty on 1111 counts as a full projector term
  auto e6 = load_fixture("E6.json");
  auto top = bad_weight_check(subset_vector({s2("1111")}, e6), e6);
  CHECK(top.lhs == doctest::Approx(1.0));
  CHECK(top.rhs == doctest::Approx(2.0));
  CHECK_THROWS_AS(bad_weight_check(Eigen::VectorXd::Ones(2), load_fixture("nonuniform.json")), PreconditionError);

  std::mt19937_64 rng(107);
  for (auto name : {"E1.json", "E2.json", "E3.json", "E4.json", "E5.json", "E6.json"}) {
    auto h = load_fixture(name);
    for (int t = 0; t < 50; t++) {
      auto psi = random_nonneg_state(rng, h.dimension(), 0.5);
      CHECK(bad_weight_check(psi, h).holds);
      CHECK(boundary_weight_check(psi, h).holds);
    }
  }
}

TEST_CASE("witness from the groundstate") {
  CHECK(witness_from_groundstate(load_fixture("E2.json")) == s2("00"));
  CHECK(witness_from_groundstate(load_fixture("E1.json")) == s2("0000"));
}

TEST_CASE("bad distance table") {
  auto e5 = load_fixture("E5.json");
  auto t = bad_distance_table(e5);
  CHECK(t[s2("000").to_index(2)] == 2);
  CHECK(t[s2("101").to_index(2)] == 0);
  auto e1 = load_fixture("E1.json");
  for (auto d : bad_distance_table(e1)) {
    CHECK(d == -1);
  }
}
