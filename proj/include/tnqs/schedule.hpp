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
#include <string>
#include <vector>

#include "tnqs/circuit.hpp"

namespace tnqs {

/// One side of a contraction step: the tensor of an earlier step or a single vertex.
struct Operand {
    enum class Kind : std::uint8_t { Step, Vertex };
    Kind kind = Kind::Vertex;
    int index = 0;

    static Operand step(int s) { return {Kind::Step, s}; }
    static Operand vertex(VertexId v) { return {Kind::Vertex, v}; }
    [[nodiscard]] bool is_step() const { return kind == Kind::Step; }
    bool operator==(const Operand &) const = default;
};

struct Step {
    Operand left;
    Operand right;
    bool operator==(const Step &) const = default;
};

/// Ordered contraction steps. Step i's set is the union of its operands' sets.
struct Schedule {
    std::vector<Step> steps;
    std::string graph_ref; // fingerprint of the target graph, empty if unknown

    /// Appends a step and returns it as an operand.
    Operand add(Operand left, Operand right) {
        steps.push_back({left, right});
        return Operand::step(static_cast<int>(steps.size()) - 1);
    }
};

struct StepProfile {
    int boundary = 0; // E^i: edges leaving the step's set (= rank of its tensor)
    int shared = 0;   // edges between the two operands (summed indices)
    double cost = 0;  // 4^(boundary + shared)
};

struct ScheduleReport {
    std::vector<int> boundary_profile;
    std::vector<StepProfile> steps;
    int e_max = 0;
    int peak_step = -1;
    double cost_estimate = 0;
    int rank_ceiling = kDefaultMaxRank;
    bool feasible = true;
};

/// Checks the set-forest rules and computes the boundary profile.
/// Throws StructuralViolation naming the offending step.
[[nodiscard]] ScheduleReport validate_schedule(const Schedule &s, const CircuitGraph &g,
                                               int rank_ceiling = kDefaultMaxRank);

/// Same as validate_schedule; the report carries per-step shared counts and costs.
[[nodiscard]] ScheduleReport analyze_schedule(const Schedule &s, const CircuitGraph &g,
                                              int rank_ceiling = kDefaultMaxRank);

/// Sorted vertex set of every step. The schedule must be structurally valid.
[[nodiscard]] std::vector<std::vector<VertexId>> implied_sets(const Schedule &s, std::size_t n_vertices);

/// Accretes vertices one at a time onto a single growing set, in the given order.
[[nodiscard]] Schedule accretion_schedule(const std::vector<VertexId> &order);

enum class SweepDirection { TopDown, BottomUp };

/// Vertex order used by sweep_schedule: grouped by the first line touched in the
/// sweep direction, each group in timestep order.
[[nodiscard]] std::vector<VertexId> sweep_order(const CircuitGraph &g,
                                                SweepDirection dir = SweepDirection::TopDown);

[[nodiscard]] Schedule sweep_schedule(const CircuitGraph &g,
                                      SweepDirection dir = SweepDirection::TopDown);

/// The sweep order accreted backwards (outputs of the last line first).
[[nodiscard]] Schedule reversed_sweep_schedule(const CircuitGraph &g);

/// Random merge forest: repeatedly joins a random piece with a random neighbouring piece.
[[nodiscard]] Schedule random_schedule(const CircuitGraph &g, std::uint64_t seed);

/**
 * Ladder-by-ladder schedule for circuits whose gates carry ladder tags.
 *
 * Each ladder's gates are contracted in timestep order into one tensor. The
 * ladder tensors are then joined in ascending order; after each join every
 * not yet included Input vertex adjacent to the running set is accreted top to
 * bottom, followed by the adjacent Output vertices top to bottom.
 * Throws MissingLadderTags if a gate is untagged.
 */
[[nodiscard]] Schedule aqft_schedule(const CircuitGraph &g);

[[nodiscard]] std::string graph_fingerprint(const CircuitGraph &g);

/// "STEP i := <op> + <op>" per line with operands S<k> or V<id>; '#' starts a comment.
[[nodiscard]] std::string format_schedule(const Schedule &s);
[[nodiscard]] Schedule parse_schedule(const std::string &text);

} // namespace tnqs
