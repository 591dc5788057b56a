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

#include "rus/circuit.hpp"

#include <algorithm>
#include <stdexcept>

#include "rus/clifford.hpp"

namespace rus {

std::string gate_name(const Gate &g) {
    switch (g.kind) {
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "Sdg";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "Tdg";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::CZ: return "CZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::Cliff: return "C24:" + std::to_string(g.cliff);
    }
    return "?";
}

Gate parse_gate(std::string_view name, const std::vector<int> &qubits) {
    Gate g;
    static const std::pair<std::string_view, GateKind> table[] = {
        {"H", GateKind::H},   {"S", GateKind::S}, {"Sdg", GateKind::Sdg}, {"T", GateKind::T},
        {"Tdg", GateKind::Tdg}, {"X", GateKind::X}, {"Y", GateKind::Y},     {"Z", GateKind::Z},
        {"CZ", GateKind::CZ}, {"CNOT", GateKind::CNOT}};
    bool ok = false;
    for (const auto &[n, k] : table) {
        if (n == name) {
            g.kind = k;
            ok = true;
        }
    }
    if (!ok && name.substr(0, 4) == "C24:") {
        g.kind = GateKind::Cliff;
        g.cliff = std::stoi(std::string(name.substr(4)));
        if (g.cliff < 0 || g.cliff >= CliffordTable::kSize) throw std::invalid_argument("gate index out of range");
        ok = true;
    }
    if (!ok) throw std::invalid_argument("unknown gate name '" + std::string(name) + "'");
    std::size_t need = g.two_qubit() ? 2 : 1;
    if (qubits.size() != need) throw std::invalid_argument("gate '" + std::string(name) + "' has wrong qubit count");
    g.q0 = qubits[0];
    if (need == 2) g.q1 = qubits[1];
    return g;
}

int Circuit::raw_t() const {
    int t = 0;
    for (const auto &g : gates) t += g.t_weight();
    return t;
}

void Circuit::validate() const {
    if (width < 1) throw std::invalid_argument("circuit width must be positive");
    for (const auto &g : gates) {
        if (g.q0 < 0 || g.q0 >= width) throw std::invalid_argument("gate target out of range");
        if (g.two_qubit() && (g.q1 < 0 || g.q1 >= width || g.q1 == g.q0))
            throw std::invalid_argument("two-qubit gate has invalid qubits");
    }
    for (int m : measured)
        if (m < 1 || m >= width) throw std::invalid_argument("measured qubit must be an ancilla");
}

std::string Circuit::encode() const {
    std::string s;
    for (const auto &g : gates) {
        if (!s.empty()) s += ' ';
        s += gate_name(g) + (g.kind == GateKind::Cliff ? "@" : "") + std::to_string(g.q0);
        if (g.two_qubit()) s += "." + std::to_string(g.q1);
    }
    s += " |M";
    for (std::size_t i = 0; i < measured.size(); ++i) s += (i ? "." : "") + std::to_string(measured[i]);
    return s;
}

namespace {

std::vector<int> parse_qubits(std::string_view s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t dot = s.find('.', pos);
        if (dot == std::string_view::npos) dot = s.size();
        std::string part(s.substr(pos, dot - pos));
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad qubit list '" + std::string(s) + "'");
        out.push_back(std::stoi(part));
        pos = dot + 1;
    }
    return out;
}

}  // namespace

Circuit decode_circuit(std::string_view enc, int width) {
    Circuit c;
    int top = 0;
    bool saw_measure = false;
    std::size_t pos = 0;
    while (pos < enc.size()) {
        if (enc[pos] == ' ') {
            ++pos;
            continue;
        }
        std::size_t end = enc.find(' ', pos);
        if (end == std::string_view::npos) end = enc.size();
        std::string_view tok = enc.substr(pos, end - pos);
        pos = end;
        if (tok.substr(0, 2) == "|M") {
            c.measured = tok.size() > 2 ? parse_qubits(tok.substr(2)) : std::vector<int>{};
            saw_measure = true;
            continue;
        }
        std::size_t split;
        if (tok.substr(0, 4) == "C24:") {
            // Clifford indices are digits too, so these tokens use '@' before the qubit.
            split = tok.find('@');
            if (split == std::string_view::npos) throw std::invalid_argument("C24 gate needs '@q' in encoding");
            c.gates.push_back(parse_gate(tok.substr(0, split), parse_qubits(tok.substr(split + 1))));
            continue;
        }
        split = tok.find_first_of("0123456789");
        if (split == std::string_view::npos || split == 0)
            throw std::invalid_argument("bad gate token '" + std::string(tok) + "'");
        c.gates.push_back(parse_gate(tok.substr(0, split), parse_qubits(tok.substr(split))));
    }
    if (!saw_measure) throw std::invalid_argument("encoding lacks a measurement section");
    for (const auto &g : c.gates) top = std::max({top, g.q0, g.q1});
    for (int q : c.measured) top = std::max(top, q);
    c.width = width > 0 ? width : top + 1;
    c.validate();
    return c;
}

Circuit concat(const Circuit &a, const Circuit &b) {
    Circuit c = a;
    c.width = std::max(a.width, b.width);
    c.gates.insert(c.gates.end(), b.gates.begin(), b.gates.end());
    for (int m : b.measured)
        if (std::find(c.measured.begin(), c.measured.end(), m) == c.measured.end()) c.measured.push_back(m);
    std::sort(c.measured.begin(), c.measured.end());
    return c;
}

std::vector<Gate> word_gates(const std::string &word, int q) {
    std::vector<Gate> out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        bool dag = i + 1 < word.size() && word[i + 1] == 'd';
        Gate g;
        g.q0 = q;
        switch (word[i]) {
            case 'H': g.kind = GateKind::H; break;
            case 'S': g.kind = dag ? GateKind::Sdg : GateKind::S; break;
            case 'T': g.kind = dag ? GateKind::Tdg : GateKind::T; break;
            case 'X': g.kind = GateKind::X; break;
            case 'Y': g.kind = GateKind::Y; break;
            case 'Z': g.kind = GateKind::Z; break;
            case 'I': continue;
            default: throw std::invalid_argument("word_gates: unknown letter in '" + word + "'");
        }
        if (dag) ++i;
        out.push_back(g);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

void append_word(Circuit &c, const std::string &word, int q) {
    auto g = word_gates(word, q);
    c.gates.insert(c.gates.end(), g.begin(), g.end());
}

RingMatrix gate_matrix_1q(const Gate &g) {
    switch (g.kind) {
        case GateKind::H: return gates::H();
        case GateKind::S: return gates::S();
        case GateKind::Sdg: return gates::Sdg();
        case GateKind::T: return gates::T();
        case GateKind::Tdg: return gates::Tdg();
        case GateKind::X: return gates::X();
        case GateKind::Y: return gates::Y();
        case GateKind::Z: return gates::Z();
        case GateKind::Cliff: return CliffordTable::get().matrix(g.cliff);
        default: throw std::invalid_argument("gate_matrix_1q: not a single-qubit gate");
    }
}

RingMatrix circuit_unitary(const Circuit &c) {
    if (c.width > kMaxCircuitWidth) throw std::invalid_argument("circuit_unitary: width exceeds limit of 4");
    c.validate();
    const std::size_t dim = std::size_t(1) << c.width;
    RingMatrix u = RingMatrix::identity(dim);
    for (const auto &g : c.gates) {
        if (g.kind == GateKind::CZ) {
            std::size_t mask = (std::size_t(1) << g.q0) | (std::size_t(1) << g.q1);
            for (std::size_t r = 0; r < dim; ++r) {
                if ((r & mask) != mask) continue;
                for (std::size_t col = 0; col < dim; ++col) u(r, col) = -u(r, col);
            }
        } else if (g.kind == GateKind::CNOT) {
            std::size_t cb = std::size_t(1) << g.q0, tb = std::size_t(1) << g.q1;
            for (std::size_t r = 0; r < dim; ++r) {
                if (!(r & cb) || (r & tb)) continue;
                for (std::size_t col = 0; col < dim; ++col) std::swap(u(r, col), u(r | tb, col));
            }
        } else {
            RingMatrix m = gate_matrix_1q(g);
            std::size_t b = std::size_t(1) << g.q0;
            for (std::size_t r = 0; r < dim; ++r) {
                if (r & b) continue;
                for (std::size_t col = 0; col < dim; ++col) {
                    RingScalar x = u(r, col), y = u(r | b, col);
                    u(r, col) = m(0, 0) * x + m(0, 1) * y;
                    u(r | b, col) = m(1, 0) * x + m(1, 1) * y;
                }
            }
        }
    }
    return u;
}

}  // namespace rus
