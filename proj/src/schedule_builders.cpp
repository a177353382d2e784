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

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>

#include "tnqs/errors.hpp"
#include "tnqs/rng.hpp"
#include "tnqs/schedule.hpp"

namespace tnqs {

Schedule accretion_schedule(const std::vector<VertexId> &order) {
    Schedule s;
    if (order.size() < 2) {
        return s;
    }
    Operand running = s.add(Operand::vertex(order[0]), Operand::vertex(order[1]));
    for (std::size_t i = 2; i < order.size(); ++i) {
        running = s.add(running, Operand::vertex(order[i]));
    }
    return s;
}

std::vector<VertexId> sweep_order(const CircuitGraph &g, SweepDirection dir) {
    std::vector<std::tuple<int, int, VertexId>> keyed;
    keyed.reserve(g.size());
    for (const auto &v : g.vertices()) {
        int group = 0;
        if (!v.lines.empty()) {
            group = dir == SweepDirection::TopDown
                        ? *std::min_element(v.lines.begin(), v.lines.end())
                        : -*std::max_element(v.lines.begin(), v.lines.end());
        }
        keyed.emplace_back(group, v.timestep, v.id);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<VertexId> order;
    order.reserve(keyed.size());
    for (const auto &k : keyed) {
        order.push_back(std::get<2>(k));
    }
    return order;
}

Schedule sweep_schedule(const CircuitGraph &g, SweepDirection dir) {
    return accretion_schedule(sweep_order(g, dir));
}

Schedule reversed_sweep_schedule(const CircuitGraph &g) {
    auto order = sweep_order(g);
    std::reverse(order.begin(), order.end());
    return accretion_schedule(order);
}

Schedule random_schedule(const CircuitGraph &g, std::uint64_t seed) {
    Rng rng(seed);
    Schedule s;
    // piece_of[v]: index into pieces of the piece holding v.
    std::vector<Operand> pieces;
    std::vector<std::vector<VertexId>> piece_members;
    std::vector<int> piece_of(g.size());
    for (const auto &v : g.vertices()) {
        piece_of[static_cast<std::size_t>(v.id)] = static_cast<int>(pieces.size());
        pieces.push_back(Operand::vertex(v.id));
        piece_members.push_back({v.id});
    }
    std::vector<int> alive(pieces.size());
    for (std::size_t i = 0; i < alive.size(); ++i) {
        alive[i] = static_cast<int>(i);
    }
    while (alive.size() > 1) {
        const auto pick = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<long long>(alive.size()) - 1));
        const int a = alive[pick];
        std::vector<int> neighbours;
        for (VertexId v : piece_members[static_cast<std::size_t>(a)]) {
            for (int e : g.incident(v)) {
                const int p = piece_of[static_cast<std::size_t>(g.other_end(e, v))];
                if (p != a && std::find(neighbours.begin(), neighbours.end(), p) == neighbours.end()) {
                    neighbours.push_back(p);
                }
            }
        }
        int b;
        if (neighbours.empty()) {
            std::size_t other = pick;
            while (other == pick) {
                other = static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<long long>(alive.size()) - 1));
            }
            b = alive[other];
        } else {
            b = neighbours[static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<long long>(neighbours.size()) - 1))];
        }
        const bool swap_sides = rng.uniform() < 0.5;
        const Operand merged = swap_sides ? s.add(pieces[static_cast<std::size_t>(b)],
                                                  pieces[static_cast<std::size_t>(a)])
                                          : s.add(pieces[static_cast<std::size_t>(a)],
                                                  pieces[static_cast<std::size_t>(b)]);
        pieces[static_cast<std::size_t>(a)] = merged;
        for (VertexId v : piece_members[static_cast<std::size_t>(b)]) {
            piece_of[static_cast<std::size_t>(v)] = a;
            piece_members[static_cast<std::size_t>(a)].push_back(v);
        }
        piece_members[static_cast<std::size_t>(b)].clear();
        alive.erase(std::find(alive.begin(), alive.end(), b));
    }
    return s;
}

Schedule aqft_schedule(const CircuitGraph &g) {
    std::map<int, std::vector<const Vertex *>> ladders;
    for (const auto &v : g.vertices()) {
        if (!v.is_gate()) {
            continue;
        }
        if (v.ladder <= 0) {
            throw MissingLadderTags("gate vertex " + std::to_string(v.id) + " has no ladder tag");
        }
        ladders[v.ladder].push_back(&v);
    }
    if (ladders.empty()) {
        return sweep_schedule(g);
    }

    Schedule s;
    // Phase 1: one tensor per ladder, gates in timestep order (Hadamard first,
    // then the phase gates top-down).
    std::vector<std::pair<int, Operand>> ladder_ops;
    for (auto &[ladder, gates] : ladders) {
        std::stable_sort(gates.begin(), gates.end(), [](const Vertex *a, const Vertex *b) {
            return std::tie(a->timestep, a->id) < std::tie(b->timestep, b->id);
        });
        Operand op = Operand::vertex(gates.front()->id);
        for (std::size_t i = 1; i < gates.size(); ++i) {
            op = s.add(op, Operand::vertex(gates[i]->id));
        }
        ladder_ops.emplace_back(ladder, op);
    }

    // Phase 2: join ladders in order, accreting the boundary vertices each exposes.
    std::vector<bool> included(g.size(), false);
    std::optional<Operand> running;
    auto absorb = [&](Operand op) { running = running ? s.add(*running, op) : op; };
    for (const auto &[ladder, op] : ladder_ops) {
        absorb(op);
        const auto &gates = ladders.at(ladder);
        std::vector<const Vertex *> ins;
        std::vector<const Vertex *> outs;
        for (const Vertex *gv : gates) {
            included[static_cast<std::size_t>(gv->id)] = true;
        }
        for (const Vertex *gv : gates) {
            for (int e : g.incident(gv->id)) {
                const auto &w = g.vertex(g.other_end(e, gv->id));
                if (included[static_cast<std::size_t>(w.id)]) {
                    continue;
                }
                if (w.is_input() && std::find(ins.begin(), ins.end(), &w) == ins.end()) {
                    ins.push_back(&w);
                } else if (w.is_output() && std::find(outs.begin(), outs.end(), &w) == outs.end()) {
                    outs.push_back(&w);
                }
            }
        }
        auto top_down = [](const Vertex *a, const Vertex *b) { return a->lines < b->lines; };
        std::sort(ins.begin(), ins.end(), top_down);
        std::sort(outs.begin(), outs.end(), top_down);
        for (const auto *group : {&ins, &outs}) {
            for (const Vertex *w : *group) {
                included[static_cast<std::size_t>(w->id)] = true;
                absorb(Operand::vertex(w->id));
            }
        }
    }
    // Lines without gates.
    for (VertexId v : sweep_order(g)) {
        if (!included[static_cast<std::size_t>(v)]) {
            included[static_cast<std::size_t>(v)] = true;
            absorb(Operand::vertex(v));
        }
    }
    return s;
}

} // namespace tnqs
