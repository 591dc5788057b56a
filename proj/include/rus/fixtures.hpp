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

#include <optional>
#include <string>
#include <vector>

#include "rus/analyzer.hpp"
#include "rus/circuit.hpp"
#include "rus/ring_matrix.hpp"

namespace rus {

enum class FixtureConfidence {
    /// Circuit reproduces every published property (unitary, probability, T count, recovery).
    Exact,
    /// Implements the published unitary and probability, but some structural detail differs.
    Partial,
};

struct Fixture {
    std::string name;
    std::string description;
    Circuit circuit;
    /// Claimed success unitary, up to a nonzero scalar.
    RingMatrix target;
    RealQuad p;
    int raw_t = 0;
    /// Clifford index every failure outcome must be proportional to, when the claim is uniform.
    std::optional<int> recovery;
    /// Cost when ancillas are measured in sequence; empty for single-stage circuits.
    std::vector<CostStage> stages;
    int parity_t = 0;
    /// Published upper bound on the staged expected T count, or 0.
    double staged_bound = 0;
    FixtureConfidence confidence = FixtureConfidence::Exact;
    std::string note;
};

const std::vector<Fixture> &fixtures();
/// Throws std::out_of_range for unknown names.
const Fixture &fixture(const std::string &name);

/// diag(a + bi, a - bi), proportional to (aI + biZ)/sqrt(a^2 + b^2).
RingMatrix v_gate(long a, long b);

struct FixtureCheck {
    bool ok = true;
    std::vector<std::string> failures;
    RusAnalysis analysis;
};

/// Runs the exact analyzer and compares every claim with zero tolerance.
FixtureCheck check_fixture(const Fixture &f);

}  // namespace rus
