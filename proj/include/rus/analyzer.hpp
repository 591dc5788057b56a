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
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rus/circuit.hpp"
#include "rus/ring_matrix.hpp"

namespace rus {

enum class AnalysisErrorKind { NotUnitary, NoSuccessBranch, InconsistentSuccess, NonCliffordFailure, BadShape };

const char *analysis_error_name(AnalysisErrorKind k);

class AnalysisError : public std::runtime_error {
   public:
    AnalysisError(AnalysisErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    AnalysisErrorKind kind() const { return kind_; }

   private:
    AnalysisErrorKind kind_;
};

using Mat2c = std::array<Complex, 4>;

struct RusAnalysis {
    int ancillas = 1;
    /// Unnormalized success block of the first success outcome (W restricted to it).
    RingMatrix success_block;
    /// success_block / alpha0, multiplied by the conjugate phase of its first nonzero entry.
    Mat2c success_unitary{};
    double alpha0 = 0;  // sqrt(Tr(B^dagger B) / 2)
    std::vector<int> success_outcomes;
    /// Failure outcome -> Clifford table index that the failure block is proportional to.
    /// Undoing a failure means applying the inverse of that Clifford.
    std::map<int, int> recovery;
    std::vector<int> zero_outcomes;
    /// Squared Frobenius norm / 2 of every outcome block, indexed by outcome.
    std::vector<RealQuad> outcome_weight;
    RealQuad p;
    int raw_t = 0;
    double exp_t = 0;
    double var_t = 0;
    /// Exact key of the success unitary modulo global phase, see unitary_key().
    std::string key;

    int multiplicity() const { return static_cast<int>(success_outcomes.size()); }
    double p_double() const { return p.to_double(); }
};

/// Classifies W (dimension 2^(m+1), ancillas are qubits 1..m) as an RUS circuit.
/// Block for ancilla outcome a is rows 2a, 2a+1 and columns 0, 1 of W.
RusAnalysis analyze(const RingMatrix &w, int ancillas, int raw_t = 0);
/// analyze(circuit_unitary(c), c.width - 1, c.raw_t()).
RusAnalysis analyze_circuit(const Circuit &c);

/// Phase and scale invariant exact key of a nonzero 2x2 block: the entries divided by the
/// first nonzero entry, written over a common positive integer denominator in lowest terms.
std::string unitary_key(const RingMatrix &block);

/// t * Tr(B^dagger B) / (2 * 2^k).
RealQuad success_probability(const RingMatrix &block, int k, int t);

/// Checks sum_i |alpha_i|^2 == 2^k exactly with alpha_i^2 = weight_i * 2^k and k the largest
/// denominator exponent of W's first two columns.
bool unitarity_condition_holds(const RingMatrix &w, const RusAnalysis &a);

Mat2c normalized_phase_canonical(const RingMatrix &block, double *alpha = nullptr);

// --- Cost statistics ------------------------------------------------------

double expected_t(int raw_t, double p);
/// raw_t^2 (1 - p) / p^2, the variance of raw_t * N for geometric N.
double variance_t(int raw_t, double p);

struct CostStats {
    double mean = 0;
    double var = 0;
    uint64_t trials = 0;
};

/// Simulates repeat counts N ~ Geometric(p) and returns sample statistics of raw_t * N.
CostStats monte_carlo_cost(int raw_t, double p, uint64_t trials, uint64_t seed);
CostStats monte_carlo_cost(const RusAnalysis &a, uint64_t trials, uint64_t seed);

/// One stage of a circuit whose ancillas are measured in sequence. Stage i repeats
/// (all earlier stages plus t) until its measurement succeeds with probability p.
struct CostStage {
    int t = 0;
    double p = 1;
};

/// Expected T cost of a staged circuit. parity_t T gates are applied on the data qubit once
/// per attempt of the last stage and cost nothing when the attempt count is even (T^2 = S).
double staged_expected_cost(const std::vector<CostStage> &stages, int parity_t);

// --- Amplitude amplification ------------------------------------------------

struct AmplificationPlan {
    int j = 0;
    double amplified_p = 0;
    int amplified_t = 0;
    double gain = 1;
    double exp_t = 0;
};

AmplificationPlan optimize_amplification(int raw_t, double p);

/// Diagonal +-1 matrix on m qubits with -1 exactly on |1...1>.
RingMatrix cz_m(int m);
/// X^(x)m CZ(m) X^(x)m: -1 exactly on |0...0>.
RingMatrix s_prime(int m);

/// (-W S' W^dagger S')^j W with S' acting on the m ancillas (identity on the data qubit).
RingMatrix build_amplified(const RingMatrix &w, int m, int j);

struct AmplifiedResult {
    RingMatrix w;
    Circuit circuit;
    RusAnalysis analysis;
    bool failures_clifford = true;
    std::string note;
};

/// Amplifies a circuit with a single success outcome. When that outcome is not all-zeros the
/// ancillas are relabeled by X gates first. Failure blocks are re-checked rather than assumed
/// to stay Clifford; a violation is reported in failures_clifford / note.
AmplifiedResult amplify_circuit(const Circuit &c, int j);

/// Inverse circuit (reversed order, each gate inverted).
Circuit inverse_circuit(const Circuit &c);

}  // namespace rus
