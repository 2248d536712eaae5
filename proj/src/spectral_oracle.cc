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

#include "stoqnp/spectral_oracle.h"

#include <algorithm>
#include <cmath>
#include <bit>
#include <deque>
#include <map>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "stoqnp/errors.h"
#include "stoqnp/expansion_lab.h"
#include "stoqnp/stoq_decompose.h"
#include "stoqnp/tolerances.h"

namespace stoqnp {

namespace {

// Above this the automatic method switches from dense to iterative.
constexpr std::uint64_t kAutoDenseMaxDim = 1024;

struct Entry {
  std::uint64_t col;
  double value;
};

// Index arithmetic for one term over the full register.
struct TermIndexer {
  std::vector<std::uint64_t> strides;   // stride of each term qudit in the global index
  std::vector<std::uint64_t> offsets;   // global offset of each local string
  std::vector<std::vector<Entry>> rows;  // sparse local operator
  unsigned q = 2;

  TermIndexer(const Term &t, std::size_t n, unsigned q_) : q(q_) {
    for (auto p : t.qudits()) {
      strides.push_back(checked_pow(q, n - 1 - p));
    }
    std::uint64_t dim = t.local_dim();
    offsets.resize(dim);
    for (std::uint64_t v = 0; v < dim; v++) {
      std::uint64_t rem = v, off = 0;
      for (std::size_t i = strides.size(); i-- > 0;) {
        off += (rem % q) * strides[i];
        rem /= q;
      }
      offsets[v] = off;
    }
    const auto &m = t.local_operator();
    rows.resize(dim);
    for (std::uint64_t r = 0; r < dim; r++) {
      for (std::uint64_t c = 0; c < dim; c++) {
        double v = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if (v != 0.0) {
          rows[r].push_back(Entry{c, v});
        }
      }
    }
  }

  // Local index of x and x with the term's digits zeroed.
  std::pair<std::uint64_t, std::uint64_t> split(std::uint64_t x) const {
    std::uint64_t local = 0, base = x;
    for (auto s : strides) {
      std::uint64_t digit = (x / s) % q;
      local = local * q + digit;
      base -= digit * s;
    }
    return {local, base};
  }
};

std::vector<TermIndexer> indexers(const HamiltonianInstance &h) {
  std::vector<TermIndexer> out;
  for (const auto &t : h.terms()) {
    out.emplace_back(t, h.n(), h.q());
  }
  return out;
}

std::uint64_t checked_dimension(const HamiltonianInstance &h, std::uint64_t limit, const char *what) {
  std::uint64_t dim = h.dimension();
  if (dim > limit) {
    throw CapacityError(std::string(what) + ": q^n = " + std::to_string(dim) + " exceeds " + std::to_string(limit));
  }
  return dim;
}

Eigen::VectorXd apply_with(const HamiltonianInstance &h, const std::vector<TermIndexer> &ix,
                           const Eigen::VectorXd &psi) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(psi.size());
  if (h.m() == 0) {
    return out;
  }
  for (const auto &t : ix) {
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(psi.size()); x++) {
      auto [local, base] = t.split(x);
      double acc = 0;
      for (const auto &e : t.rows[local]) {
        acc += e.value * psi(static_cast<Eigen::Index>(base + t.offsets[e.col]));
      }
      out(static_cast<Eigen::Index>(x)) += acc;
    }
  }
  return out / static_cast<double>(h.m());
}

// Non-negative groundstate and its residual; throws when |v| is not an eigenvector.
GroundReport finish(const HamiltonianInstance &h, const std::vector<TermIndexer> &ix, Eigen::VectorXd v,
                    OracleMethod method) {
  v = v.cwiseAbs();
  v /= v.norm();
  Eigen::VectorXd hv = apply_with(h, ix, v);
  double lambda = v.dot(hv);
  double residual = (hv - lambda * v).norm();
  if (residual > tol::kResidual) {
    throw ConvergenceError("non-negative groundstate residual " + std::to_string(residual) + " exceeds " +
                           std::to_string(tol::kResidual));
  }
  GroundReport r;
  r.lambda_min = lambda;
  r.groundstate = std::move(v);
  r.method = method;
  r.residual = residual;
  return r;
}

GroundReport dense_ground(const HamiltonianInstance &h) {
  checked_dimension(h, tol::kDenseMaxDim, "dense diagonalisation");
  Eigen::MatrixXd hd = dense_hamiltonian(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hd);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("dense eigensolver failed");
  }
  const auto &ev = es.eigenvalues();
  Eigen::Index r = 1;
  while (r < ev.size() && ev(r) - ev(0) <= tol::kEigenZero) {
    r++;
  }
  Eigen::MatrixXd v = es.eigenvectors().leftCols(r);
  // Groundspace projection of the all-ones vector: non-negative because the
  // groundspace projector of a stoquastic H has non-negative entries.
  Eigen::VectorXd psi = v * (v.transpose() * Eigen::VectorXd::Ones(hd.rows()));
  if (psi.norm() < 1e-8) {
    Eigen::Index best = 0;
    v.rowwise().squaredNorm().maxCoeff(&best);
    psi = v * v.row(best).transpose();
  }
  return finish(h, indexers(h), psi, OracleMethod::kDense);
}

GroundReport iterative_ground(const HamiltonianInstance &h) {
  std::uint64_t dim = checked_dimension(h, tol::kIterativeMaxDim, "iterative solver");
  auto ix = indexers(h);
  auto n = static_cast<Eigen::Index>(dim);
  // Krylov basis size bounded by roughly 128 MiB of storage.
  Eigen::Index basis = std::clamp<Eigen::Index>(static_cast<Eigen::Index>((std::uint64_t{1} << 24) / dim), 8, 80);
  basis = std::min(basis, n);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  double best_residual = INFINITY;
  for (int restart = 0; restart < 400; restart++) {
    Eigen::MatrixXd V(n, basis);
    std::vector<double> alpha, beta;
    V.col(0) = v;
    Eigen::Index used = basis;
    for (Eigen::Index j = 0; j < basis; j++) {
      Eigen::VectorXd w = apply_with(h, ix, V.col(j));
      alpha.push_back(V.col(j).dot(w));
      for (int pass = 0; pass < 2; pass++) {
        w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
      }
      double b = w.norm();
      if (j + 1 == basis || b < 1e-12) {
        used = j + 1;
        break;
      }
      beta.push_back(b);
      V.col(j + 1) = w / b;
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(used, used);
    for (Eigen::Index i = 0; i < used; i++) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < used) {
        t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    Eigen::VectorXd x = V.leftCols(used) * es.eigenvectors().col(0);
    x /= x.norm();
    Eigen::VectorXd hx = apply_with(h, ix, x);
    double theta = x.dot(hx);
    double residual = (hx - theta * x).norm();
    best_residual = std::min(best_residual, residual);
    v = x;
    if (residual <= 1e-11 || used < basis) {
      break;
    }
  }
  if (best_residual > tol::kResidual) {
    throw ConvergenceError("iterative solver stalled at residual " + std::to_string(best_residual));
  }
  return finish(h, ix, v, OracleMethod::kIterative);
}

// Union-find components of G(H) over indices.
struct Components {
  std::vector<std::uint64_t> root;
  std::vector<bool> bad;
};

std::uint64_t find(std::vector<std::uint64_t> &p, std::uint64_t a) {
  while (p[a] != a) {
    p[a] = p[p[a]];
    a = p[a];
  }
  return a;
}

Components components(const HamiltonianInstance &h) {
  std::uint64_t dim = checked_dimension(h, tol::kEnumerationMaxDim, "component enumeration");
  auto ix = indexers(h);
  Components c;
  c.root.resize(dim);
  std::iota(c.root.begin(), c.root.end(), 0);
  c.bad.assign(dim, false);
  for (std::size_t i = 0; i < h.m(); i++) {
    const Term &t = h.term(i);
    for (std::uint64_t x = 0; x < dim; x++) {
      auto [local, base] = ix[i].split(x);
      std::int32_t cls = t.class_of_local(local);
      if (cls < 0) {
        c.bad[x] = true;
        continue;
      }
      std::uint64_t anchor = base + ix[i].offsets[t.members(static_cast<std::size_t>(cls)).front()];
      c.root[find(c.root, x)] = find(c.root, anchor);
    }
  }
  for (std::uint64_t x = 0; x < dim; x++) {
    c.root[x] = find(c.root, x);
  }
  return c;
}

}  // namespace

std::string to_string(OracleMethod m) {
  switch (m) {
    case OracleMethod::kAuto:
      return "auto";
    case OracleMethod::kDense:
      return "dense";
    case OracleMethod::kIterative:
      return "iterative";
  }
  return "?";
}

Eigen::VectorXd apply_hamiltonian(const HamiltonianInstance &h, const Eigen::VectorXd &psi) {
  if (static_cast<std::uint64_t>(psi.size()) != h.dimension()) {
    throw std::invalid_argument("state dimension does not match q^n");
  }
  return apply_with(h, indexers(h), psi);
}

double expectation(const HamiltonianInstance &h, const Eigen::VectorXd &psi) {
  return psi.dot(apply_hamiltonian(h, psi));
}

Eigen::MatrixXd dense_hamiltonian(const HamiltonianInstance &h) {
  std::uint64_t dim = checked_dimension(h, tol::kDenseMaxDim, "dense Hamiltonian");
  auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  if (h.m() == 0) {
    return out;
  }
  double w = 1.0 / static_cast<double>(h.m());
  for (const auto &t : indexers(h)) {
    for (std::uint64_t x = 0; x < dim; x++) {
      auto [local, base] = t.split(x);
      for (const auto &e : t.rows[local]) {
        out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(base + t.offsets[e.col])) += w * e.value;
      }
    }
  }
  return out;
}

GroundReport ground_energy(const HamiltonianInstance &h, OracleMethod method) {
  if (method == OracleMethod::kAuto) {
    method = h.dimension() <= kAutoDenseMaxDim ? OracleMethod::kDense : OracleMethod::kIterative;
  }
  return method == OracleMethod::kDense ? dense_ground(h) : iterative_ground(h);
}

FrustrationFreeCertificate exact_frustration_free(const HamiltonianInstance &h) {
  h.require_uniform("exact_frustration_free");
  Components c = components(h);
  std::vector<bool> dirty(c.root.size(), false);
  std::vector<bool> is_root(c.root.size(), false);
  for (std::uint64_t x = 0; x < c.root.size(); x++) {
    is_root[c.root[x]] = true;
    if (c.bad[x]) {
      dirty[c.root[x]] = true;
    }
  }
  FrustrationFreeCertificate cert;
  cert.components = static_cast<std::size_t>(std::count(is_root.begin(), is_root.end(), true));
  // Scanning indices in order meets the component with the least member first.
  for (std::uint64_t x = 0; x < c.root.size(); x++) {
    if (!dirty[c.root[x]]) {
      std::uint64_t r = c.root[x];
      for (std::uint64_t y = x; y < c.root.size(); y++) {
        if (c.root[y] == r) {
          cert.component.push_back(DitString::from_index(y, h.n(), h.q()));
        }
      }
      cert.frustration_free = true;
      cert.component_energy = instance_energy_subset(SubsetSupport(cert.component), h);
      break;
    }
  }
  return cert;
}

MinUnsat min_unsat_over_subsets(const SetCSPInstance &c) {
  std::uint64_t dim = checked_pow(c.q(), c.n());
  if (dim > tol::kMinUnsatMaxDim) {
    throw CapacityError("subset enumeration needs q^n <= 16, got " + std::to_string(dim));
  }
  if (c.m() == 0) {
    return MinUnsat{0, {DitString::from_index(0, c.n(), c.q())}};
  }
  long long lcm = 1;
  for (const auto &con : c.constraints()) {
    for (const auto &cls : con.classes) {
      lcm = std::lcm(lcm, static_cast<long long>(cls.size()));
    }
  }
  // Per constraint: group id of each string (same outside part and class), -1 when bad.
  std::vector<std::vector<int>> group(c.m(), std::vector<int>(dim, -1));
  std::vector<std::vector<long long>> weight(c.m());
  for (std::size_t i = 0; i < c.m(); i++) {
    Term t = Term::from_sets(c.constraints()[i].qudits, c.constraints()[i].classes, c.q());
    std::map<std::pair<DitString, int>, int> ids;
    for (std::uint64_t x = 0; x < dim; x++) {
      DitString s = DitString::from_index(x, c.n(), c.q());
      auto cls = t.class_of_local(t.local_index(s));
      if (cls < 0) {
        continue;
      }
      DitString outside = s;
      for (auto p : t.qudits()) {
        outside[p] = 0xFF;
      }
      auto [it, fresh] = ids.emplace(std::pair{outside, cls}, static_cast<int>(ids.size()));
      if (fresh) {
        weight[i].push_back(lcm / static_cast<long long>(t.members(static_cast<std::size_t>(cls)).size()));
      }
      group[i][x] = it->second;
    }
  }
  // UNSAT(S) = 1 - A(S) / (m lcm |S|); minimise by maximising A(S)/|S|.
  long long best_a = -1, best_size = 1;
  std::uint64_t best_mask = 1;
  std::vector<long long> counts;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << dim); mask++) {
    long long a = 0;
    long long size = std::popcount(mask);
    for (std::size_t i = 0; i < c.m(); i++) {
      counts.assign(weight[i].size(), 0);
      for (std::uint64_t x = 0; x < dim; x++) {
        if ((mask >> x & 1) && group[i][x] >= 0) {
          counts[static_cast<std::size_t>(group[i][x])]++;
        }
      }
      for (std::size_t g = 0; g < counts.size(); g++) {
        a += counts[g] * counts[g] * weight[i][g];
      }
    }
    if (static_cast<__int128>(a) * best_size > static_cast<__int128>(best_a) * size) {
      best_a = a;
      best_size = size;
      best_mask = mask;
    }
  }
  MinUnsat out;
  out.value = Rational(1) - Rational(BigInt(best_a), BigInt(static_cast<long long>(c.m()) * lcm * best_size));
  for (std::uint64_t x = 0; x < dim; x++) {
    if (best_mask >> x & 1) {
      out.argmin.push_back(DitString::from_index(x, c.n(), c.q()));
    }
  }
  return out;
}

// <psi| (1/m) sum_i (I - P_i) |psi> with P_i the groundspace projector of
// term i. Equal to <psi|H|psi> for set-form terms; a weak penalty term like
// 0.001|x><x| counts as |x><x| here, which is the setting the bounds need.
double projector_energy(const HamiltonianInstance &h, const std::vector<TermIndexer> &ix,
                        const Eigen::VectorXd &psi) {
  if (!h.uniform()) {
    throw PreconditionError("weight bounds need a uniform instance");
  }
  double total = 0;
  for (std::size_t i = 0; i < h.m(); i++) {
    double kept = 0;
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(psi.size()); x++) {
      auto [local, base] = ix[i].split(x);
      std::int32_t cls = h.term(i).class_of_local(local);
      if (cls < 0) {
        continue;
      }
      const auto &members = h.term(i).members(static_cast<std::size_t>(cls));
      double acc = 0;
      for (auto v : members) {
        acc += psi(static_cast<Eigen::Index>(base + ix[i].offsets[v]));
      }
      kept += psi(static_cast<Eigen::Index>(x)) * acc / static_cast<double>(members.size());
    }
    total += 1.0 - kept;
  }
  return h.m() == 0 ? 0.0 : total / static_cast<double>(h.m());
}

BoundCheck bad_weight_check(const Eigen::VectorXd &psi_in, const HamiltonianInstance &h) {
  Eigen::VectorXd psi = psi_in / psi_in.norm();
  auto ix = indexers(h);
  double bad = 0;
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(psi.size()); x++) {
    for (std::size_t i = 0; i < h.m(); i++) {
      if (h.term(i).class_of_local(ix[i].split(x).first) < 0) {
        bad += psi(static_cast<Eigen::Index>(x)) * psi(static_cast<Eigen::Index>(x));
        break;
      }
    }
  }
  BoundCheck r;
  r.lhs = bad;
  r.rhs = static_cast<double>(h.m()) * projector_energy(h, ix, psi);
  // Rounding slack for sums of O(q^n) doubles.
  r.holds = r.lhs <= r.rhs + 1e-12;
  return r;
}

BoundCheck boundary_weight_check(const Eigen::VectorXd &psi_in, const HamiltonianInstance &h) {
  Eigen::VectorXd psi = psi_in / psi_in.norm();
  auto ix = indexers(h);
  double boundary = 0;
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(psi.size()); x++) {
    double a = psi(static_cast<Eigen::Index>(x));
    if (a == 0.0) {
      continue;
    }
    bool escapes = false;
    for (std::size_t i = 0; i < h.m() && !escapes; i++) {
      auto [local, base] = ix[i].split(x);
      std::int32_t cls = h.term(i).class_of_local(local);
      if (cls < 0) {
        continue;
      }
      for (auto v : h.term(i).members(static_cast<std::size_t>(cls))) {
        if (psi(static_cast<Eigen::Index>(base + ix[i].offsets[v])) == 0.0) {
          escapes = true;
          break;
        }
      }
    }
    if (escapes) {
      boundary += a * a;
    }
  }
  BoundCheck r;
  r.lhs = projector_energy(h, ix, psi);
  r.rhs = boundary / (std::pow(static_cast<double>(h.q()), static_cast<double>(h.k())) * static_cast<double>(h.m()));
  r.holds = r.lhs + 1e-12 >= r.rhs;
  return r;
}

DitString witness_from_groundstate(const HamiltonianInstance &h, OracleMethod method) {
  GroundReport g = ground_energy(h, method);
  double top = g.groundstate.maxCoeff();
  for (Eigen::Index x = 0; x < g.groundstate.size(); x++) {
    if (g.groundstate(x) >= top * (1.0 - tol::kAmplitudeTie)) {
      return DitString::from_index(static_cast<std::uint64_t>(x), h.n(), h.q());
    }
  }
  return DitString::from_index(0, h.n(), h.q());
}

std::vector<std::int64_t> bad_distance_table(const HamiltonianInstance &h) {
  std::uint64_t dim = checked_dimension(h, tol::kEnumerationMaxDim, "distance table");
  auto ix = indexers(h);
  std::vector<std::int64_t> dist(dim, -1);
  std::deque<std::uint64_t> queue;
  for (std::uint64_t x = 0; x < dim; x++) {
    for (std::size_t i = 0; i < h.m(); i++) {
      if (h.term(i).class_of_local(ix[i].split(x).first) < 0) {
        dist[x] = 0;
        queue.push_back(x);
        break;
      }
    }
  }
  // G(H) is undirected, so distances to the bad set grow outward from it.
  while (!queue.empty()) {
    std::uint64_t x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < h.m(); i++) {
      auto [local, base] = ix[i].split(x);
      std::int32_t cls = h.term(i).class_of_local(local);
      if (cls < 0) {
        continue;
      }
      for (auto v : h.term(i).members(static_cast<std::size_t>(cls))) {
        std::uint64_t y = base + ix[i].offsets[v];
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  return dist;
}

}  // namespace stoqnp
