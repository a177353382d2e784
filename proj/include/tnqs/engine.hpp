// Copyright 2026 The tnqs Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tnqs/circuit.hpp"
#include "tnqs/schedule.hpp"

namespace tnqs {

/// One POVM element (or nothing) per Output vertex, in qubit-line order.
struct OutputAssignment {
    std::vector<std::optional<Matrix2>> effects;

    /// The effects stored on the graph's Output vertices.
    static OutputAssignment from_graph(const CircuitGraph &g);
    /// Every output left unmeasured.
    static OutputAssignment unspecified(const CircuitGraph &g);
    /// One character per output in line order: '0', '1', or 'x'/'-' for unspecified.
    static OutputAssignment from_bits(const CircuitGraph &g, const std::string &bits);
};

struct EngineOptions {
    int max_rank = kDefaultMaxRank;
    bool explicit_p1 = false;       // evaluate p1 instead of running joint - p0
    bool allow_nonphysical = false; // skip density and POVM checks, and the reality assertion
};

struct SampleRecord {
    std::string bits;         // one character per output, line order
    std::vector<double> chain; // conditional probability of each chosen bit
    std::uint64_t seed = 0;
    std::uint64_t shot = 0;
    double joint = 0;         // product of the chain times the initial total
};

inline constexpr double kRealityTol = 1e-9;
inline constexpr double kDegenerateJoint = 1e-12;

/**
 * Evaluates one graph under one schedule for many output assignments.
 *
 * Input and gate tensors are built once. Each evaluation walks the schedule in
 * postorder and releases operands as soon as they are consumed.
 */
class Simulator {
  public:
    Simulator(CircuitGraph g, Schedule s, EngineOptions opts = {});

    [[nodiscard]] const CircuitGraph &graph() const noexcept { return graph_; }
    [[nodiscard]] const Schedule &schedule() const noexcept { return schedule_; }
    [[nodiscard]] const ScheduleReport &report() const noexcept { return report_; }
    [[nodiscard]] int n_outputs() const noexcept { return static_cast<int>(outputs_.size()); }

    [[nodiscard]] double probability(const OutputAssignment &assign) const;

    /// (p0, p1) for output `target` (line order position) with the given bits
    /// fixed ('0'/'1') and everything else unmeasured.
    [[nodiscard]] std::pair<double, double> marginal(int target,
                                                     const std::string &conditioning = {}) const;

    [[nodiscard]] SampleRecord sample_one(std::uint64_t seed, std::uint64_t shot) const;
    [[nodiscard]] std::vector<SampleRecord> sample(std::uint64_t shots, std::uint64_t seed) const;

  private:
    using TensorPtr = std::shared_ptr<const OpTensor>;
    [[nodiscard]] TensorPtr evaluate(const Operand &op, const std::vector<TensorPtr> &leaves) const;
    [[nodiscard]] double probability_of(const std::string &pattern) const;

    CircuitGraph graph_;
    Schedule schedule_;
    EngineOptions opts_;
    ScheduleReport report_;
    std::vector<VertexId> outputs_;
    std::vector<TensorPtr> fixed_; // inputs and gates; null for outputs
    bool physical_ = true;
};

[[nodiscard]] double evaluate_probability(const CircuitGraph &g, const OutputAssignment &assign,
                                          const Schedule &s, const EngineOptions &opts = {});

[[nodiscard]] std::pair<double, double> marginal_distribution(const CircuitGraph &g,
                                                              const Schedule &s, int target,
                                                              const std::string &conditioning = {},
                                                              const EngineOptions &opts = {});

[[nodiscard]] std::vector<SampleRecord> sample(const CircuitGraph &g, const Schedule &s,
                                               std::uint64_t shots, std::uint64_t seed,
                                               const EngineOptions &opts = {});

/// Reorders a line-order bitstring by the outputs' logical indices, when present.
[[nodiscard]] std::string logical_bits(const CircuitGraph &g, const std::string &line_bits);

} // namespace tnqs
