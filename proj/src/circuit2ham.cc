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

#include "stoqnp/circuit2ham.h"

#include <algorithm>
#include <set>

#include "stoqnp/errors.h"

namespace stoqnp {

namespace {

std::size_t arity(GateKind g) {
  switch (g) {
    case GateKind::kNot:
      return 1;
    case GateKind::kCnot:
      return 2;
    case GateKind::kToffoli:
      return 3;
  }
  return 0;
}

// Applies a gate to a local bit pattern whose most significant bit is the
// first listed wire.
std::uint64_t apply_gate(std::uint64_t a, std::size_t width) {
  bool controls = true;
  for (std::size_t i = 0; i + 1 < width; i++) {
    controls = controls && ((a >> (width - 1 - i)) & 1);
  }
  return controls ? a ^ 1 : a;
}

struct PendingTerm {
  std::vector<std::size_t> qudits;
  RationalMatrix m;
};

}  // namespace

std::string to_string(WireRole r) {
  switch (r) {
    case WireRole::kWitness:
      return "witness";
    case WireRole::kAncillaZero:
      return "ancilla-zero";
    case WireRole::kAncillaPlus:
      return "ancilla-plus";
  }
  return "?";
}

std::string to_string(GateKind g) {
  switch (g) {
    case GateKind::kNot:
      return "NOT";
    case GateKind::kCnot:
      return "CNOT";
    case GateKind::kToffoli:
      return "TOFFOLI";
  }
  return "?";
}

void ReversibleCircuit::validate() const {
  if (wires.empty()) {
    throw ValidationError("circuit has no wires");
  }
  if (output >= wires.size()) {
    throw ValidationError("output wire " + std::to_string(output) + " does not exist");
  }
  for (std::size_t g = 0; g < gates.size(); g++) {
    const auto &gate = gates[g];
    if (gate.wires.size() != arity(gate.kind)) {
      throw ValidationError("gate " + std::to_string(g) + " (" + to_string(gate.kind) + ") needs " +
                            std::to_string(arity(gate.kind)) + " wires");
    }
    std::set<std::size_t> distinct(gate.wires.begin(), gate.wires.end());
    if (distinct.size() != gate.wires.size()) {
      throw ValidationError("gate " + std::to_string(g) + " repeats a wire");
    }
    for (auto w : gate.wires) {
      if (w >= wires.size()) {
        throw ValidationError("gate " + std::to_string(g) + " uses missing wire " + std::to_string(w));
      }
    }
  }
}

std::size_t ReversibleCircuit::count(WireRole r) const {
  return static_cast<std::size_t>(std::count(wires.begin(), wires.end(), r));
}

std::vector<std::size_t> ReversibleCircuit::wire_uses() const {
  std::vector<std::size_t> uses(wires.size(), 0);
  for (const auto &g : gates) {
    for (auto w : g.wires) {
      uses[w]++;
    }
  }
  return uses;
}

bool simulate_circuit(const ReversibleCircuit &c, std::span<const std::uint8_t> witness,
                      std::span<const std::uint8_t> random) {
  c.validate();
  if (witness.size() != c.count(WireRole::kWitness) || random.size() != c.count(WireRole::kAncillaPlus)) {
    throw std::invalid_argument("bit counts do not match the circuit's witness and random wires");
  }
  std::vector<std::uint8_t> bits(c.wires.size(), 0);
  std::size_t wi = 0, ri = 0;
  for (std::size_t w = 0; w < c.wires.size(); w++) {
    if (c.wires[w] == WireRole::kWitness) {
      bits[w] = witness[wi++] & 1;
    } else if (c.wires[w] == WireRole::kAncillaPlus) {
      bits[w] = random[ri++] & 1;
    }
  }
  for (const auto &g : c.gates) {
    bool on = true;
    for (std::size_t i = 0; i + 1 < g.wires.size(); i++) {
      on = on && bits[g.wires[i]];
    }
    if (on) {
      bits[g.wires.back()] ^= 1;
    }
  }
  return bits[c.output] == 1;
}

bool accepts_for_all_random(const ReversibleCircuit &c) {
  std::size_t nw = c.count(WireRole::kWitness);
  std::size_t nr = c.count(WireRole::kAncillaPlus);
  if (nw > 20 || nr > 20) {
    throw CapacityError("too many witness or random wires to enumerate");
  }
  std::vector<std::uint8_t> w(nw), r(nr);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << nw); a++) {
    for (std::size_t i = 0; i < nw; i++) {
      w[i] = (a >> i) & 1;
    }
    bool all = true;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << nr) && all; b++) {
      for (std::size_t i = 0; i < nr; i++) {
        r[i] = (b >> i) & 1;
      }
      all = simulate_circuit(c, w, r);
    }
    if (all) {
      return true;
    }
  }
  return false;
}

ReversibleCircuit degree_reduce(const ReversibleCircuit &c) {
  c.validate();
  auto uses = c.wire_uses();
  if (std::all_of(uses.begin(), uses.end(), [](std::size_t u) { return u <= 3; })) {
    return c;
  }
  ReversibleCircuit out;
  out.wires = c.wires;
  std::vector<std::size_t> alias(c.wires.size());
  for (std::size_t w = 0; w < alias.size(); w++) {
    alias[w] = w;
  }
  std::vector<bool> touched(c.wires.size(), false);
  for (const auto &g : c.gates) {
    Gate mapped{g.kind, {}};
    for (auto w : g.wires) {
      if (uses[w] > 3 && touched[w]) {
        std::size_t fresh = out.wires.size();
        out.wires.push_back(WireRole::kAncillaZero);
        out.gates.push_back(Gate{GateKind::kCnot, {alias[w], fresh}});
        alias[w] = fresh;
      }
      touched[w] = true;
      mapped.wires.push_back(alias[w]);
    }
    out.gates.push_back(std::move(mapped));
  }
  out.output = alias[c.output];
  return out;
}

HamiltonianInstance compile(const ReversibleCircuit &c, const CompileOptions &opts) {
  c.validate();
  const std::size_t wires = c.wires.size();
  const std::size_t steps = c.gates.size();
  auto clock = [&](std::size_t j) { return wires + j - 1; };  // clock qubits are 1-based
  const Rational half(1, 2);
  std::vector<PendingTerm> pending;

  for (std::size_t j = 1; j < steps; j++) {
    PendingTerm t{{clock(j), clock(j + 1)}, RationalMatrix(4)};
    t.m(1, 1) = 1;  // |01>: a 0 followed by a 1 is not a unary clock state
    pending.push_back(std::move(t));
  }

  for (std::size_t s = 1; s <= steps; s++) {
    const Gate &g = c.gates[s - 1];
    std::size_t lo = std::max<std::size_t>(1, s - 1);
    std::size_t hi = std::min(steps, s + 1);
    std::vector<std::size_t> window;
    for (std::size_t j = lo; j <= hi; j++) {
      window.push_back(j);
    }
    auto pattern = [&](std::size_t time) {
      std::uint64_t p = 0;
      for (auto j : window) {
        p = (p << 1) | (j <= time ? 1 : 0);
      }
      return p;
    };
    std::size_t width = g.wires.size();
    PendingTerm t;
    for (auto j : window) {
      t.qudits.push_back(clock(j));
    }
    t.qudits.insert(t.qudits.end(), g.wires.begin(), g.wires.end());
    t.m = RationalMatrix(std::size_t{1} << t.qudits.size());
    std::uint64_t before = pattern(s - 1), after = pattern(s);
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << width); a++) {
      std::uint64_t i = (before << width) | a;
      std::uint64_t k = (after << width) | apply_gate(a, width);
      t.m(i, i) += half;
      t.m(k, k) += half;
      t.m(i, k) -= half;
      t.m(k, i) -= half;
    }
    pending.push_back(std::move(t));
  }

  // Input checks sit on the clock qubit of the wire's first gate: before that
  // time the wire still holds its initial value.
  std::vector<std::size_t> first_use(wires, 0);
  for (std::size_t s = steps; s >= 1; s--) {
    for (auto w : c.gates[s - 1].wires) {
      first_use[w] = s;
    }
  }
  for (std::size_t w = 0; w < wires; w++) {
    WireRole role = c.wires[w];
    if (role == WireRole::kWitness && opts.pinned) {
      role = WireRole::kAncillaZero;
    }
    if (role == WireRole::kWitness) {
      continue;
    }
    bool timed = first_use[w] != 0;
    PendingTerm t;
    t.qudits.push_back(w);
    if (timed) {
      t.qudits.push_back(clock(first_use[w]));
    }
    t.m = RationalMatrix(timed ? 4 : 2);
    // Local index of wire value b with the clock qubit at 0.
    auto at = [&](std::size_t b) { return timed ? 2 * b : b; };
    if (role == WireRole::kAncillaZero) {
      t.m(at(1), at(1)) = 1;
    } else {
      t.m(at(0), at(0)) = half;
      t.m(at(1), at(1)) = half;
      t.m(at(0), at(1)) = -half;
      t.m(at(1), at(0)) = -half;
    }
    pending.push_back(std::move(t));
  }

  {
    PendingTerm t;
    t.qudits.push_back(c.output);
    if (steps > 0) {
      t.qudits.push_back(clock(steps));
      t.m = RationalMatrix(4);
      t.m(1, 1) = 1;  // output 0 at the final time
    } else {
      t.m = RationalMatrix(2);
      t.m(0, 0) = 1;
    }
    pending.push_back(std::move(t));
  }

  std::size_t n = wires + steps;
  std::vector<std::size_t> degree(n, 0);
  std::size_t k = 0;
  std::vector<Term> terms;
  for (auto &p : pending) {
    k = std::max(k, p.qudits.size());
    for (auto v : p.qudits) {
      degree[v]++;
    }
    Eigen::MatrixXd md = p.m.to_double();
    terms.push_back(Term::from_matrix(p.qudits, std::move(md), std::move(p.m), 2));
  }
  std::size_t d = *std::max_element(degree.begin(), degree.end());
  return HamiltonianInstance(n, 2, k, d, std::move(terms));
}

}  // namespace stoqnp
