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

#include "rus/clifford.hpp"

#include <deque>
#include <stdexcept>

namespace rus {

namespace gates {

namespace {
RingScalar w(int j) { return RingScalar::omega(j); }
RingScalar zero() { return RingScalar(); }
RingScalar one() { return RingScalar::from_int(1); }
}  // namespace

RingMatrix I() { return RingMatrix::identity(2); }
RingMatrix H() {
    RingScalar h = RingScalar::inv_sqrt2();
    return RingMatrix(2, 2, {h, h, h, -h});
}
RingMatrix S() { return RingMatrix(2, 2, {one(), zero(), zero(), w(2)}); }
RingMatrix Sdg() { return RingMatrix(2, 2, {one(), zero(), zero(), w(6)}); }
RingMatrix T() { return RingMatrix(2, 2, {one(), zero(), zero(), w(1)}); }
RingMatrix Tdg() { return RingMatrix(2, 2, {one(), zero(), zero(), w(7)}); }
RingMatrix X() { return RingMatrix(2, 2, {zero(), one(), one(), zero()}); }
RingMatrix Y() { return RingMatrix(2, 2, {zero(), w(6), w(2), zero()}); }
RingMatrix Z() { return RingMatrix(2, 2, {one(), zero(), zero(), -one()}); }

RingMatrix CZ() {
    RingMatrix m = RingMatrix::identity(4);
    m(3, 3) = -one();
    return m;
}

RingMatrix CNOT(int control, int target) {
    if (control == target || control < 0 || control > 1 || target < 0 || target > 1)
        throw std::invalid_argument("CNOT: qubits must be distinct and in {0, 1}");
    RingMatrix m(4, 4);
    for (int col = 0; col < 4; ++col) {
        int row = ((col >> control) & 1) ? col ^ (1 << target) : col;
        m(row, col) = one();
    }
    return m;
}

}  // namespace gates

RingMatrix word_matrix(const std::string &word) {
    RingMatrix m = gates::I();
    for (std::size_t i = 0; i < word.size(); ++i) {
        bool dag = i + 1 < word.size() && word[i + 1] == 'd';
        RingMatrix g;
        switch (word[i]) {
            case 'H': g = gates::H(); break;
            case 'S': g = dag ? gates::Sdg() : gates::S(); break;
            case 'T': g = dag ? gates::Tdg() : gates::T(); break;
            case 'X': g = gates::X(); break;
            case 'Y': g = gates::Y(); break;
            case 'Z': g = gates::Z(); break;
            case 'I': g = gates::I(); break;
            default: throw std::invalid_argument("word_matrix: unknown gate letter in '" + word + "'");
        }
        if (dag) {
            if (word[i] != 'S' && word[i] != 'T') throw std::invalid_argument("word_matrix: bad dagger in '" + word + "'");
            ++i;
        }
        m = m * g;
    }
    return m;
}

const std::array<const char *, 4> kG1Words = {"", "Z", "S", "Sd"};
const std::array<const char *, 8> kG2Words = {"", "H", "X", "XH", "HS", "XHS", "HSH", "XHSH"};

const CliffordTable &CliffordTable::get() {
    static const CliffordTable table;
    return table;
}

CliffordTable::CliffordTable() {
    std::vector<RingMatrix> found{gates::I()};
    std::vector<std::string> names{""};
    std::deque<std::size_t> queue{0};
    auto known = [&](const RingMatrix &m) {
        for (const auto &f : found)
            if (m.equal_up_to_omega(f)) return true;
        return false;
    };
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (char g : {'H', 'S'}) {
            RingMatrix m = found[i] * (g == 'H' ? gates::H() : gates::S());
            if (known(m)) continue;
            found.push_back(m);
            names.push_back(names[i] + g);
            queue.push_back(found.size() - 1);
        }
    }
    if (found.size() != kSize) throw std::logic_error("Clifford closure did not produce 24 elements");
    for (int i = 0; i < kSize; ++i) {
        mats_[i] = found[i];
        mats64_[i] = M2::from_ring(found[i]);
        words_[i] = names[i];
    }
    for (int a = 0; a < kSize; ++a) {
        for (int b = 0; b < kSize; ++b) {
            int ph = 0;
            int c = find(mats_[a] * mats_[b], &ph);
            if (c < 0) throw std::logic_error("Clifford table not closed");
            mul_[a][b] = c;
            mul_phase_[a][b] = ph;
            if (c == 0) inv_[a] = b;
        }
    }
    for (int i = 0; i < 4; ++i) g1_[i] = find_word(kG1Words[i]);
    for (int i = 0; i < 8; ++i) g2_[i] = find_word(kG2Words[i]);
    for (int g = 0; g < kSize; ++g) {
        factor_[g] = {-1, -1};
        for (int x : g1_) {
            for (int y : g2_) {
                if (mul_[x][y] == g) {
                    factor_[g] = {x, y};
                    break;
                }
            }
            if (factor_[g].first >= 0) break;
        }
        if (factor_[g].first < 0) throw std::logic_error("G1 x G2 does not cover the Clifford group");
    }
}

int CliffordTable::find(const RingMatrix &m, int *phase) const {
    for (int i = 0; i < kSize; ++i) {
        if (auto j = m.equal_up_to_omega(mats_[i])) {
            if (phase) *phase = *j;
            return i;
        }
    }
    return -1;
}

int CliffordTable::find(const M2 &m, int *phase) const {
    for (int i = 0; i < kSize; ++i) {
        if (m.k != mats64_[i].k) continue;
        for (int j = 0; j < 8; ++j) {
            if (m == mats64_[i].times_omega(j)) {
                if (phase) *phase = j;
                return i;
            }
        }
    }
    return -1;
}

int CliffordTable::find_word(const std::string &word) const { return find(word_matrix(word)); }

bool CliffordTable::is_diagonal(int i) const { return mats_[i](0, 1).is_zero() && mats_[i](1, 0).is_zero(); }

bool CliffordTable::is_monomial(int i) const {
    return is_diagonal(i) || (mats_[i](0, 0).is_zero() && mats_[i](1, 1).is_zero());
}

}  // namespace rus
