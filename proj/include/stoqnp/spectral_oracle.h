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

#ifndef STOQNP_SPECTRAL_ORACLE_H
#define STOQNP_SPECTRAL_ORACLE_H

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stoqnp/dit_string.h"
#include "stoqnp/instance.h"
#include "stoqnp/rational.h"

namespace stoqnp {

enum class OracleMethod { kAuto, kDense, kIterative };

std::string to_string(OracleMethod m);

struct GroundReport {
  double lambda_min = 0.0;
  /// Non-negative, normalised, indexed by DitString::to_index.
  Eigen::VectorXd groundstate;
  OracleMethod method = OracleMethod::kDense;
  double residual = 0.0;
};

/// Ground energy of H and a non-negative groundstate. The state returned is
/// the groundspace projection of the uniform vector, so dense and iterative
/// runs agree even on degenerate groundspaces.
GroundReport ground_energy(const HamiltonianInstance &h, OracleMethod method = OracleMethod::kAuto);

/// H|psi> without forming H.
Eigen::VectorXd apply_hamiltonian(const HamiltonianInstance &h, const Eigen::VectorXd &psi);
/// <psi|H|psi>.
double expectation(const HamiltonianInstance &h, const Eigen::VectorXd &psi);
/// H as a dense matrix; dimension at most 2^13.
Eigen::MatrixXd dense_hamiltonian(const HamiltonianInstance &h);

struct FrustrationFreeCertificate {
  bool frustration_free = false;
  /// A G(H) component with no bad strings (lexicographically first), when one exists.
  std::vector<DitString> component;
  Rational component_energy;
  std::size_t components = 0;
};

/// Enumerates G(H) components; H is frustration-free exactly when one of
/// them contains no bad string.
FrustrationFreeCertificate exact_frustration_free(const HamiltonianInstance &h);

struct MinUnsat {
  Rational value;
  std::vector<DitString> argmin;
};

/// Minimum UNSAT over all non-empty subsets; q^n at most 16.
MinUnsat min_unsat_over_subsets(const SetCSPInstance &c);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Both bounds read H with every term replaced by I - P_i, P_i its groundspace
/// projector; identical for set-form terms. Uniform instances only.
/// sum_{x bad} alpha_x^2 <= m <psi|H|psi>.
BoundCheck bad_weight_check(const Eigen::VectorXd &psi, const HamiltonianInstance &h);
/// <psi|H|psi> >= (1 / (q^k m)) sum_{x in N} alpha_x^2, N being the support
/// strings with a G(H) neighbour outside the support.
BoundCheck boundary_weight_check(const Eigen::VectorXd &psi, const HamiltonianInstance &h);

/// Largest-amplitude string of the oracle groundstate, ties broken
/// lexicographically.
DitString witness_from_groundstate(const HamiltonianInstance &h, OracleMethod method = OracleMethod::kAuto);

/// Distance in G(H) from every string to the nearest bad string, -1 when
/// none is reachable. Indexed by DitString::to_index.
std::vector<std::int64_t> bad_distance_table(const HamiltonianInstance &h);

}  // namespace stoqnp

#endif
