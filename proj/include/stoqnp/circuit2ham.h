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

#ifndef STOQNP_CIRCUIT2HAM_H
#define STOQNP_CIRCUIT2HAM_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stoqnp/instance.h"

namespace stoqnp {

enum class WireRole { kWitness, kAncillaZero, kAncillaPlus };
enum class GateKind { kNot, kCnot, kToffoli };

std::string to_string(WireRole r);
std::string to_string(GateKind g);

/// Controls first, target last.
struct Gate {
  GateKind kind;
  std::vector<std::size_t> wires;
};

/// Classical reversible circuit. Witness wires are set by the prover,
/// ancilla-zero wires start at 0 and ancilla-plus wires hold uniformly random
/// bits. It accepts when the output wire ends at 1.
struct ReversibleCircuit {
  std::vector<WireRole> wires;
  std::vector<Gate> gates;
  std::size_t output = 0;

  /// Throws ValidationError on arity mismatches, repeated or unknown wires.
  void validate() const;
  std::size_t count(WireRole r) const;
  /// Number of gates each wire takes part in.
  std::vector<std::size_t> wire_uses() const;
};

/// Output bit for the given witness and random bits (in wire order per role).
bool simulate_circuit(const ReversibleCircuit &c, std::span<const std::uint8_t> witness,
                      std::span<const std::uint8_t> random);

/// Whether some witness is accepted for every choice of random bits.
bool accepts_for_all_random(const ReversibleCircuit &c);

/// Rewrites wires used by more than 3 gates: before each further use the
/// value is copied by CNOT into a fresh ancilla-zero wire, so every wire is
/// the target of one copy, used by one gate, and the source of the next copy.
/// Circuits with every wire used at most 3 times are returned unchanged.
ReversibleCircuit degree_reduce(const ReversibleCircuit &c);

struct CompileOptions {
  /// Pin witness wires to 0 with the same input terms as ancilla-zero wires.
  bool pinned = false;
};

/// Clock construction with a unary clock of T qubits (T = number of gates)
/// after the data wires: time t is the clock state 1^t 0^(T-t). Terms:
///   clock:   |01><01| on adjacent clock qubits;
///   step t:  1/2 (|p><p| + |p'><p'|) - 1/2 (|p'><p| (x) U_t + h.c.), p and p'
///            the time t-1 and t patterns on clock qubits t-1..t+1 that exist;
///   input:   ancilla-zero |1><1|, ancilla-plus |-><-|, each tensored with
///            |0><0| on clock qubit t_w (time before the wire's first gate);
///            wires never touched get the same term without a clock qubit;
///   output:  |0><0| on the output wire (x) |1><1| on the last clock qubit.
/// All entries are exact rationals in {0, 1, 1/2, -1/2}.
HamiltonianInstance compile(const ReversibleCircuit &c, const CompileOptions &opts = {});

}  // namespace stoqnp

#endif
