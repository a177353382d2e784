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

#include <map>
#include <set>
#include <vector>

#include "tnqs/circuit.hpp"
#include "tnqs/schedule.hpp"

namespace tnqs {

/// A set of a normalized schedule that contains wired boundary vertices.
struct BoundarySet {
    int step = 0;                  // index in the normalized schedule
    int group = 0;                 // i: which boundary subset it holds (0-based)
    int position = 0;              // j: order within the group (0-based)
    std::vector<VertexId> residue; // the set minus its wired boundary vertices (mu)
};

/**
 * Decomposition of two schedules across a wiring from A's outputs to B's
 * inputs. Both schedules are normalized so that sets without wired boundary
 * vertices come first and the remaining sets form one growing chain.
 */
struct CompositionPlan {
    std::map<VertexId, VertexId> wiring;
    ComposedGraph composed;
    Schedule a; // normalized
    Schedule b;
    int a_plain_steps = 0; // leading steps of `a` with no wired outputs
    int b_plain_steps = 0;
    std::vector<std::vector<VertexId>> omega_sets; // distinct wired-output subsets of A, in order
    std::vector<std::vector<VertexId>> eta_sets;   // matching wired-input subsets of B
    std::vector<BoundarySet> chain_a;
    std::vector<BoundarySet> chain_b;
};

/// Reorders a schedule so that steps whose sets avoid `boundary` come first,
/// keeping each group in its original relative order.
[[nodiscard]] Schedule normalize_for_composition(const Schedule &s, std::size_t n_vertices,
                                                 const std::set<VertexId> &boundary);

/**
 * Checks that every wired-output subset realised by a set of S_a is matched
 * by a set of S_b holding exactly the wired inputs, and builds the plan.
 * Throws NotComposable naming the first unmatched subset.
 */
[[nodiscard]] CompositionPlan check_composability(const Schedule &sa, const Schedule &sb,
                                                  const CircuitGraph &a, const CircuitGraph &b,
                                                  const std::map<VertexId, VertexId> &wiring);

/// Interleaved schedule for plan.composed.graph.
[[nodiscard]] Schedule compose_schedules(const CompositionPlan &plan);

} // namespace tnqs
