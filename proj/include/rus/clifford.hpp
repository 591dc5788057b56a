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

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "rus/exact64.hpp"
#include "rus/ring_matrix.hpp"

namespace rus {

namespace gates {
RingMatrix I();
RingMatrix H();
RingMatrix S();
RingMatrix Sdg();
RingMatrix T();
RingMatrix Tdg();
RingMatrix X();
RingMatrix Y();
RingMatrix Z();
/// Two-qubit gates in the qubit-0-is-LSB basis ordering.
RingMatrix CZ();
RingMatrix CNOT(int control, int target);
}  // namespace gates

/// Product of single-qubit gate letters in matrix order, e.g. "HS" is H*S.
/// Accepts H, S, T, X, Y, Z and a trailing "d" for S-dagger / T-dagger ("Sd", "Td").
RingMatrix word_matrix(const std::string &word);

/// The 24 single-qubit Cliffords modulo global phase.
///
/// Index 0 is the identity. Element order comes from a breadth-first closure
/// over right multiplication by H then S, so it is fixed across builds.
class CliffordTable {
   public:
    static constexpr int kSize = 24;

    static const CliffordTable &get();

    const RingMatrix &matrix(int i) const { return mats_[i]; }
    const M2 &matrix64(int i) const { return mats64_[i]; }
    /// Shortest word over {H, S} for the element (matrix order); "" for identity.
    const std::string &word(int i) const { return words_[i]; }
    int inverse(int i) const { return inv_[i]; }
    int mul(int a, int b) const { return mul_[a][b]; }
    /// j such that matrix(a) * matrix(b) == w^j * matrix(mul(a, b)).
    int mul_phase(int a, int b) const { return mul_phase_[a][b]; }

    /// Index of the element equal to m up to w^j, or -1. Sets *phase to j when found.
    int find(const RingMatrix &m, int *phase = nullptr) const;
    int find(const M2 &m, int *phase = nullptr) const;
    int find_word(const std::string &word) const;

    const std::array<int, 4> &g1() const { return g1_; }
    const std::array<int, 8> &g2() const { return g2_; }
    /// First (g1, g2) pair in G1 x G2 order whose product equals g up to phase.
    std::pair<int, int> factor_g1_g2(int g) const { return factor_[g]; }

    bool is_diagonal(int i) const;
    bool is_monomial(int i) const;

   private:
    CliffordTable();

    std::array<RingMatrix, kSize> mats_;
    std::array<M2, kSize> mats64_;
    std::array<std::string, kSize> words_;
    std::array<int, kSize> inv_{};
    std::array<std::array<int, kSize>, kSize> mul_{};
    std::array<std::array<int, kSize>, kSize> mul_phase_{};
    std::array<int, 4> g1_{};
    std::array<int, 8> g2_{};
    std::array<std::pair<int, int>, kSize> factor_{};
};

/// Names of the G1 and G2 coset representatives in table order.
extern const std::array<const char *, 4> kG1Words;
extern const std::array<const char *, 8> kG2Words;

}  // namespace rus
