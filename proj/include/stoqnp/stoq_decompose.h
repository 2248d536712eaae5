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

#ifndef STOQNP_STOQ_DECOMPOSE_H
#define STOQNP_STOQ_DECOMPOSE_H

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "stoqnp/dit_string.h"
#include "stoqnp/instance.h"
#include "stoqnp/tolerances.h"

namespace stoqnp {

struct GroundspaceProjector {
  Eigen::MatrixXd projector;
  /// Minimum eigenvalue; the projector is the eigenspace of H - lambda_min I at 0.
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  /// Distance from the groundspace cluster to the next eigenvalue (infinite if none).
  double gap = 0.0;
  std::size_t rank = 0;
};

/// Projector onto the minimum eigenspace of a real symmetric matrix.
/// Throws DegenerateToleranceError when some eigenvalue lies above the
/// cluster but within kDegenerateFactor * tol of it.
GroundspaceProjector groundspace_projector(const Eigen::MatrixXd &h, double tol = tol::kEigenZero);

struct NonNegDecomposition {
  /// Normalised non-negative vectors with pairwise disjoint supports.
  std::vector<Eigen::VectorXd> states;
};

/// Splits a stoquastic projector into a sum of rank-1 projectors onto
/// non-negative vectors with disjoint supports. Blocks are found by
/// union-find over entries above tol; each block must be rank 1 with
/// non-negative entries or DecompositionError is thrown.
NonNegDecomposition nonneg_decomposition(const Eigen::MatrixXd &projector, double tol = tol::kEigenZero);

/// Supports (as local indices) of the decomposition states, when every state
/// is uniform on its support up to tol. Throws NonUniformError otherwise.
std::vector<std::vector<std::uint64_t>> uniformize(const NonNegDecomposition &d, double tol = tol::kEigenZero);

/// Exact projector onto the kernel of h - lambda I, where lambda is the
/// exact minimum eigenvalue guessed from `lambda_hint`. Returns nothing when
/// no rational candidate is confirmed exactly.
std::optional<RationalMatrix> exact_groundspace_projector(const RationalMatrix &h, double lambda_hint);

/// x is bad for a term when its restriction lies in none of the term's classes.
bool is_bad(const DitString &x, const Term &term);

struct BadnessReport {
  /// Indices of terms x is bad for, ascending.
  std::vector<std::size_t> terms;
  bool bad() const { return !terms.empty(); }
};

BadnessReport bad_terms(const DitString &x, const HamiltonianInstance &h);
/// Lowest index of a term x is bad for.
std::optional<std::size_t> first_bad_term(const DitString &x, const HamiltonianInstance &h);

}  // namespace stoqnp

#endif
