// Copyright 2026 The RUS Synthesis Authors
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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rus/ring_matrix.hpp"

namespace rus {

enum class GateKind { H, S, Sdg, T, Tdg, X, Y, Z, CZ, CNOT, Cliff };

struct Gate {
    GateKind kind = GateKind::H;
    int q0 = 0;
    int q1 = -1;     // second qubit of CZ, target of CNOT
    int cliff = -1;  // table index for GateKind::Cliff

    bool two_qubit() const { return kind == GateKind::CZ || kind == GateKind::CNOT; }
    int t_weight() const { return kind == GateKind::T || kind == GateKind::Tdg; }
    bool operator==(const Gate &o) const = default;
};

/// Fixed gate names used in files and encodings: H, S, Sdg, T, Tdg, X, Y, Z, CZ, CNOT, C24:<index>.
std::string gate_name(const Gate &g);
Gate parse_gate(std::string_view name, const std::vector<int> &qubits);

/// Qubit 0 is the data qubit and the least significant tensor factor; ancillas are 1..m.
/// Gates apply to kets left to right.
struct Circuit {
    int width = 1;
    std::vector<Gate> gates;
    std::vector<int> measured;

    int raw_t() const;
    void validate() const;
    /// Compact single-line form, e.g. "H1 T1 CZ0.1 T0 |M1"; table Cliffords are written "C24:5@0".
    std::string encode() const;
    bool operator==(const Circuit &o) const = default;
};

/// Inverse of Circuit::encode. width 0 infers the width from the highest qubit used.
Circuit decode_circuit(std::string_view enc, int width = 0);

/// Maximum width accepted by circuit_unitary.
constexpr int kMaxCircuitWidth = 4;

Circuit concat(const Circuit &a, const Circuit &b);
/// Appends single-qubit gates from a matrix-order word (see word_matrix) acting on qubit q.
/// The word's rightmost letter is applied first.
void append_word(Circuit &c, const std::string &word, int q);
/// Gate sequence for a matrix-order word as circuit gates on qubit q.
std::vector<Gate> word_gates(const std::string &word, int q);

RingMatrix gate_matrix_1q(const Gate &g);
RingMatrix circuit_unitary(const Circuit &c);

}  // namespace rus
