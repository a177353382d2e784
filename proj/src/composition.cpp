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

#include "tnqs/composition.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "tnqs/errors.hpp"

namespace tnqs {

namespace {

std::vector<VertexId> intersect(const std::vector<VertexId> &set, const std::set<VertexId> &keep) {
    std::vector<VertexId> out;
    for (VertexId v : set) {
        if (keep.count(v)) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<VertexId> subtract(const std::vector<VertexId> &set, const std::set<VertexId> &drop) {
    std::vector<VertexId> out;
    for (VertexId v : set) {
        if (!drop.count(v)) {
            out.push_back(v);
        }
    }
    return out;
}

std::string describe_subset(const CircuitGraph &g, const std::vector<VertexId> &subset) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < subset.size(); ++i) {
        const auto &v = g.vertex(subset[i]);
        os << (i ? ", " : "") << (v.is_output() ? "out" : "in") << "@line" << v.lines.front()
           << " (V" << v.id << ")";
    }
    os << "}";
    return os.str();
}

/// Distinct non-empty boundary subsets in order of first appearance.
std::vector<std::vector<VertexId>> distinct_subsets(const std::vector<std::vector<VertexId>> &sets,
                                                    const std::set<VertexId> &boundary) {
    std::vector<std::vector<VertexId>> out;
    for (const auto &set : sets) {
        auto sub = intersect(set, boundary);
        if (!sub.empty() && std::find(out.begin(), out.end(), sub) == out.end()) {
            out.push_back(std::move(sub));
        }
    }
    return out;
}

struct Chain {
    int plain_steps = 0;
    std::vector<BoundarySet> sets;
    std::vector<std::vector<VertexId>> subsets;
};

Chain extract_chain(const Schedule &normalized, std::size_t n_vertices,
                    const std::set<VertexId> &boundary, const char *who) {
    const auto sets = implied_sets(normalized, n_vertices);
    Chain chain;
    while (chain.plain_steps < static_cast<int>(sets.size()) &&
           intersect(sets[static_cast<std::size_t>(chain.plain_steps)], boundary).empty()) {
        ++chain.plain_steps;
    }
    for (int i = chain.plain_steps; i < static_cast<int>(sets.size()); ++i) {
        const auto &step = normalized.steps[static_cast<std::size_t>(i)];
        int chained = 0;
        for (const Operand *op : {&step.left, &step.right}) {
            if (op->is_step() && op->index >= chain.plain_steps) {
                if (op->index != i - 1) {
                    throw NotComposable(std::string("sets holding boundary vertices of ") + who +
                                        " do not form a single growing chain (step " +
                                        std::to_string(i) + ")");
                }
                ++chained;
            }
        }
        if (chained != (i == chain.plain_steps ? 0 : 1)) {
            throw NotComposable(std::string("sets holding boundary vertices of ") + who +
                                " branch at step " + std::to_string(i));
        }
        auto sub = intersect(sets[static_cast<std::size_t>(i)], boundary);
        if (chain.subsets.empty() || chain.subsets.back() != sub) {
            chain.subsets.push_back(sub);
            chain.sets.push_back({i, static_cast<int>(chain.subsets.size()) - 1, 0,
                                  subtract(sets[static_cast<std::size_t>(i)], boundary)});
        } else {
            const int position = chain.sets.back().position + 1;
            chain.sets.push_back({i, static_cast<int>(chain.subsets.size()) - 1, position,
                                  subtract(sets[static_cast<std::size_t>(i)], boundary)});
        }
    }
    return chain;
}

} // namespace

Schedule normalize_for_composition(const Schedule &s, std::size_t n_vertices,
                                   const std::set<VertexId> &boundary) {
    const auto sets = implied_sets(s, n_vertices);
    std::vector<int> order;
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const bool plain = intersect(sets[i], boundary).empty();
            if (plain == (pass == 0)) {
                order.push_back(static_cast<int>(i));
            }
        }
    }
    std::vector<int> renumber(sets.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        renumber[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
    }
    Schedule out;
    out.graph_ref = s.graph_ref;
    for (int old : order) {
        Step step = s.steps[static_cast<std::size_t>(old)];
        for (Operand *op : {&step.left, &step.right}) {
            if (op->is_step()) {
                op->index = renumber[static_cast<std::size_t>(op->index)];
            }
        }
        out.steps.push_back(step);
    }
    return out;
}

CompositionPlan check_composability(const Schedule &sa, const Schedule &sb, const CircuitGraph &a,
                                    const CircuitGraph &b,
                                    const std::map<VertexId, VertexId> &wiring) {
    CompositionPlan plan;
    plan.wiring = wiring;
    plan.composed = compose_graphs(a, b, wiring);
    (void)validate_schedule(sa, a, 64);
    (void)validate_schedule(sb, b, 64);

    std::set<VertexId> wired_out;
    std::set<VertexId> wired_in;
    for (const auto &[o, i] : wiring) {
        wired_out.insert(o);
        wired_in.insert(i);
    }
    if (wiring.empty()) {
        plan.a = sa;
        plan.b = sb;
        plan.a_plain_steps = static_cast<int>(sa.steps.size());
        plan.b_plain_steps = static_cast<int>(sb.steps.size());
        return plan;
    }
    if (sa.steps.empty() || sb.steps.empty()) {
        throw NotComposable("wired circuits need non-empty schedules");
    }

    const auto omegas = distinct_subsets(implied_sets(sa, a.size()), wired_out);
    const auto etas = distinct_subsets(implied_sets(sb, b.size()), wired_in);
    auto mapped = [&](const std::vector<VertexId> &omega) {
        std::vector<VertexId> eta;
        for (VertexId o : omega) {
            eta.push_back(wiring.at(o));
        }
        std::sort(eta.begin(), eta.end());
        return eta;
    };
    for (const auto &omega : omegas) {
        const auto eta = mapped(omega);
        if (std::find(etas.begin(), etas.end(), eta) == etas.end()) {
            throw NotComposable("output subset " + describe_subset(a, omega) +
                                " of A has no set of B holding exactly inputs " +
                                describe_subset(b, eta));
        }
    }
    for (const auto &eta : etas) {
        bool found = false;
        for (const auto &omega : omegas) {
            found = found || mapped(omega) == eta;
        }
        if (!found) {
            throw NotComposable("input subset " + describe_subset(b, eta) +
                                " of B has no matching output subset in A");
        }
    }

    plan.a = normalize_for_composition(sa, a.size(), wired_out);
    plan.b = normalize_for_composition(sb, b.size(), wired_in);
    auto chain_a = extract_chain(plan.a, a.size(), wired_out, "A");
    auto chain_b = extract_chain(plan.b, b.size(), wired_in, "B");
    if (chain_a.subsets.size() != chain_b.subsets.size()) {
        throw NotComposable("A exposes " + std::to_string(chain_a.subsets.size()) +
                            " output subsets but B exposes " +
                            std::to_string(chain_b.subsets.size()) + " input subsets");
    }
    for (std::size_t i = 0; i < chain_a.subsets.size(); ++i) {
        if (mapped(chain_a.subsets[i]) != chain_b.subsets[i]) {
            throw NotComposable("output subset " + describe_subset(a, chain_a.subsets[i]) +
                                " is reached in a different order than its inputs in B");
        }
    }
    plan.a_plain_steps = chain_a.plain_steps;
    plan.b_plain_steps = chain_b.plain_steps;
    plan.omega_sets = std::move(chain_a.subsets);
    plan.eta_sets = std::move(chain_b.subsets);
    plan.chain_a = std::move(chain_a.sets);
    plan.chain_b = std::move(chain_b.sets);
    return plan;
}

Schedule compose_schedules(const CompositionPlan &plan) {
    Schedule out;
    std::set<VertexId> wired_out;
    std::set<VertexId> wired_in;
    for (const auto &[o, i] : plan.wiring) {
        wired_out.insert(o);
        wired_in.insert(i);
    }

    // Plain steps of each side carry over with vertex ids translated.
    auto copy_plain = [&](const Schedule &s, int count, const std::vector<VertexId> &to_c) {
        std::vector<int> mapped(static_cast<std::size_t>(count));
        for (int k = 0; k < count; ++k) {
            Step step = s.steps[static_cast<std::size_t>(k)];
            for (Operand *op : {&step.left, &step.right}) {
                op->index = op->is_step() ? mapped[static_cast<std::size_t>(op->index)]
                                          : to_c[static_cast<std::size_t>(op->index)];
            }
            out.steps.push_back(step);
            mapped[static_cast<std::size_t>(k)] = static_cast<int>(out.steps.size()) - 1;
        }
        return mapped;
    };
    const auto plain_a = copy_plain(plan.a, plan.a_plain_steps, plan.composed.from_a);
    const auto plain_b = copy_plain(plan.b, plan.b_plain_steps, plan.composed.from_b);

    std::optional<Operand> running;
    auto absorb = [&](Operand op) { running = running ? out.add(*running, op) : op; };

    if (plan.wiring.empty()) {
        auto final_of = [](const Schedule &s, const std::vector<int> &mapped,
                           const std::vector<VertexId> &to_c) {
            if (s.steps.empty()) {
                return Operand::vertex(to_c.front());
            }
            return Operand::step(mapped.back());
        };
        absorb(final_of(plan.a, plain_a, plan.composed.from_a));
        absorb(final_of(plan.b, plain_b, plan.composed.from_b));
        return out;
    }

    // Operands a chain step adds on top of its predecessor, boundary vertices dropped.
    auto material = [&](const Schedule &s, int plain_count, const std::vector<int> &plain_map,
                        const std::vector<VertexId> &to_c, const std::set<VertexId> &boundary,
                        int step) {
        std::vector<Operand> ops;
        const auto &st = s.steps[static_cast<std::size_t>(step)];
        for (const Operand *op : {&st.left, &st.right}) {
            if (op->is_step()) {
                if (op->index < plain_count) {
                    ops.push_back(Operand::step(plain_map[static_cast<std::size_t>(op->index)]));
                }
            } else if (!boundary.count(op->index)) {
                ops.push_back(Operand::vertex(to_c[static_cast<std::size_t>(op->index)]));
            }
        }
        return ops;
    };
    auto extend_a = [&](const BoundarySet &set) {
        for (const auto &op : material(plan.a, plan.a_plain_steps, plain_a, plan.composed.from_a,
                                       wired_out, set.step)) {
            absorb(op);
        }
    };
    auto extend_b = [&](const BoundarySet &set) {
        for (const auto &op : material(plan.b, plan.b_plain_steps, plain_b, plan.composed.from_b,
                                       wired_in, set.step)) {
            absorb(op);
        }
    };

    // For each boundary subset i: enter it on both sides, evolve A through its
    // sets, then evolve B through its sets.
    std::size_t ia = 0;
    std::size_t ib = 0;
    for (std::size_t group = 0; group < plan.omega_sets.size(); ++group) {
        extend_a(plan.chain_a[ia++]);
        extend_b(plan.chain_b[ib++]);
        while (ia < plan.chain_a.size() &&
               plan.chain_a[ia].group == static_cast<int>(group)) {
            extend_a(plan.chain_a[ia++]);
        }
        while (ib < plan.chain_b.size() &&
               plan.chain_b[ib].group == static_cast<int>(group)) {
            extend_b(plan.chain_b[ib++]);
        }
    }
    out.graph_ref = graph_fingerprint(plan.composed.graph);
    return out;
}

} // namespace tnqs
