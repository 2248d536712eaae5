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

#include "stoqnp/stoq_decompose.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "stoqnp/errors.h"

namespace stoqnp {

namespace {

std::size_t find_root(std::vector<std::size_t> &parent, std::size_t a) {
  while (parent[a] != a) {
    parent[a] = parent[parent[a]];
    a = parent[a];
  }
  return a;
}

// Exact reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>> &a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); c++) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) {
      p++;
    }
    if (p == a.size()) {
      continue;
    }
    std::swap(a[p], a[row]);
    Rational inv = Rational(1) / a[row][c];
    for (auto &v : a[row]) {
      v *= inv;
    }
    for (std::size_t r = 0; r < a.size(); r++) {
      if (r != row && a[r][c] != 0) {
        Rational f = a[r][c];
        for (std::size_t j = c; j < cols; j++) {
          a[r][j] -= f * a[row][j];
        }
      }
    }
    pivots.push_back(c);
    row++;
  }
  return pivots;
}

// Rational approximations of x with small denominators, best first.
std::vector<Rational> rational_candidates(double x) {
  std::vector<Rational> out;
  if (std::abs(x) <= 1e-6) {
    out.emplace_back(0);
  }
  // Continued fraction convergents.
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 40; it++) {
    double a = std::floor(r);
    if (std::abs(a) > 1e12) {
      break;
    }
    auto ai = static_cast<long long>(a);
    long long h2 = ai * h1 + h0;
    long long k2 = ai * k1 + k0;
    if (k2 > 1000000 || k2 <= 0) {
      break;
    }
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::abs(approx - x) <= 1e-9) {
      out.emplace_back(h1, k1);
      break;
    }
    double frac = r - a;
    if (frac < 1e-15) {
      break;
    }
    r = 1.0 / frac;
  }
  return out;
}

}  // namespace

GroundspaceProjector groundspace_projector(const Eigen::MatrixXd &h, double tol) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("groundspace_projector needs a non-empty square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("eigensolver failed on a local term");
  }
  const auto &ev = es.eigenvalues();
  double lmin = ev(0);
  Eigen::Index r = 1;
  while (r < ev.size() && ev(r) - lmin <= tol) {
    r++;
  }
  GroundspaceProjector out;
  out.lambda_min = lmin;
  out.lambda_max = ev(ev.size() - 1);
  out.rank = static_cast<std::size_t>(r);
  out.gap = r < ev.size() ? ev(r) - lmin : std::numeric_limits<double>::infinity();
  if (r < ev.size() && out.gap < tol::kDegenerateFactor * tol) {
    std::ostringstream msg;
    msg << "eigenvalue " << ev(r) << " lies " << out.gap << " above the minimum " << lmin
        << "; cannot separate the groundspace at tolerance " << tol;
    throw DegenerateToleranceError(msg.str());
  }
  Eigen::MatrixXd v = es.eigenvectors().leftCols(r);
  out.projector = v * v.transpose();
  return out;
}

NonNegDecomposition nonneg_decomposition(const Eigen::MatrixXd &p, double tol) {
  auto dim = static_cast<std::size_t>(p.rows());
  for (Eigen::Index i = 0; i < p.rows(); i++) {
    for (Eigen::Index j = 0; j < p.cols(); j++) {
      if (p(i, j) < -tol) {
        std::ostringstream msg;
        msg << "projector entry (" << i << "," << j << ") = " << p(i, j) << " is negative";
        throw DecompositionError(msg.str());
      }
    }
  }
  std::vector<std::size_t> parent(dim);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < dim; i++) {
    for (std::size_t j = i + 1; j < dim; j++) {
      if (p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > tol) {
        parent[find_root(parent, i)] = find_root(parent, j);
      }
    }
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::ptrdiff_t> block_of(dim, -1);
  for (std::size_t i = 0; i < dim; i++) {
    if (p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) <= tol) {
      continue;
    }
    std::size_t root = find_root(parent, i);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<std::ptrdiff_t>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(block_of[root])].push_back(i);
  }

  NonNegDecomposition out;
  Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(p.rows(), p.cols());
  for (const auto &block : blocks) {
    std::size_t best = block.front();
    for (auto i : block) {
      if (p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) >
          p(static_cast<Eigen::Index>(best), static_cast<Eigen::Index>(best))) {
        best = i;
      }
    }
    auto b = static_cast<Eigen::Index>(best);
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(p.rows());
    for (auto i : block) {
      phi(static_cast<Eigen::Index>(i)) = p(static_cast<Eigen::Index>(i), b) / std::sqrt(p(b, b));
    }
    Eigen::MatrixXd outer = phi * phi.transpose();
    for (auto i : block) {
      for (auto j : block) {
        auto ii = static_cast<Eigen::Index>(i);
        auto jj = static_cast<Eigen::Index>(j);
        if (std::abs(outer(ii, jj) - p(ii, jj)) > tol::kDegenerateFactor * tol) {
          throw DecompositionError("block containing local index " + std::to_string(best) +
                                   " is not rank 1; the projector is not stoquastic");
        }
      }
    }
    rebuilt += outer;
    phi /= phi.norm();
    out.states.push_back(std::move(phi));
  }
  if ((rebuilt - p).cwiseAbs().maxCoeff() > tol::kDegenerateFactor * tol) {
    throw DecompositionError("rank-1 blocks do not reassemble the projector");
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> uniformize(const NonNegDecomposition &d, double tol) {
  std::vector<std::vector<std::uint64_t>> out;
  for (std::size_t s = 0; s < d.states.size(); s++) {
    const auto &v = d.states[s];
    std::vector<std::uint64_t> support;
    for (Eigen::Index i = 0; i < v.size(); i++) {
      if (v(i) < -tol) {
        throw NonUniformError("state " + std::to_string(s) + " has a negative amplitude");
      }
      if (v(i) > tol) {
        support.push_back(static_cast<std::uint64_t>(i));
      }
    }
    if (support.empty()) {
      throw NonUniformError("state " + std::to_string(s) + " is zero");
    }
    double target = 1.0 / std::sqrt(static_cast<double>(support.size()));
    for (auto i : support) {
      double a = v(static_cast<Eigen::Index>(i));
      if (std::abs(a - target) > tol) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "state " << s << " has amplitude " << a << " at local index " << i << ", uniform on "
            << support.size() << " strings needs " << target;
        throw NonUniformError(msg.str());
      }
    }
    out.push_back(std::move(support));
  }
  return out;
}

std::optional<RationalMatrix> exact_groundspace_projector(const RationalMatrix &h, double lambda_hint) {
  const std::size_t n = h.dim;
  for (const Rational &lambda : rational_candidates(lambda_hint)) {
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t r = 0; r < n; r++) {
      for (std::size_t c = 0; c < n; c++) {
        a[r][c] = h(r, c) - (r == c ? lambda : Rational(0));
      }
    }
    auto pivots = rref(a, n);
    if (pivots.size() == n) {
      continue;
    }
    // Kernel basis: one vector per free column.
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) {
      is_pivot[c] = true;
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < n; f++) {
      if (is_pivot[f]) {
        continue;
      }
      std::vector<Rational> v(n, Rational(0));
      v[f] = 1;
      for (std::size_t r = 0; r < pivots.size(); r++) {
        v[pivots[r]] = -a[r][f];
      }
      basis.push_back(std::move(v));
    }
    const std::size_t k = basis.size();
    // P = N (N^T N)^{-1} N^T.
    std::vector<std::vector<Rational>> g(k, std::vector<Rational>(2 * k));
    for (std::size_t i = 0; i < k; i++) {
      for (std::size_t j = 0; j < k; j++) {
        Rational s = 0;
        for (std::size_t t = 0; t < n; t++) {
          s += basis[i][t] * basis[j][t];
        }
        g[i][j] = s;
      }
      g[i][k + i] = 1;
    }
    rref(g, 2 * k);
    RationalMatrix p(n);
    for (std::size_t r = 0; r < n; r++) {
      for (std::size_t c = r; c < n; c++) {
        Rational s = 0;
        for (std::size_t i = 0; i < k; i++) {
          if (basis[i][r] == 0) {
            continue;
          }
          for (std::size_t j = 0; j < k; j++) {
            if (basis[j][c] != 0 && g[i][k + j] != 0) {
              s += basis[i][r] * g[i][k + j] * basis[j][c];
            }
          }
        }
        p(r, c) = s;
        p(c, r) = s;
      }
    }
    return p;
  }
  return std::nullopt;
}

bool is_bad(const DitString &x, const Term &term) {
  return term.class_of_local(term.local_index(x)) < 0;
}

BadnessReport bad_terms(const DitString &x, const HamiltonianInstance &h) {
  BadnessReport r;
  for (std::size_t i = 0; i < h.m(); i++) {
    if (is_bad(x, h.term(i))) {
      r.terms.push_back(i);
    }
  }
  return r;
}

std::optional<std::size_t> first_bad_term(const DitString &x, const HamiltonianInstance &h) {
  for (std::size_t i = 0; i < h.m(); i++) {
    if (is_bad(x, h.term(i))) {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace stoqnp
