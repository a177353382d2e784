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

#include "tnqs/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

#include "tnqs/errors.hpp"

namespace tnqs {

namespace {

std::string describe(const Operand &op) {
    return (op.is_step() ? "S" : "V") + std::to_string(op.index);
}

} // namespace

ScheduleReport validate_schedule(const Schedule &s, const CircuitGraph &g, int rank_ceiling) {
    ScheduleReport report;
    report.rank_ceiling = rank_ceiling;
    const auto n_vertices = static_cast<int>(g.size());
    const auto n_steps = static_cast<int>(s.steps.size());
    if (!s.graph_ref.empty() && s.graph_ref != graph_fingerprint(g)) {
        throw StructuralViolation("schedule was made for graph " + s.graph_ref +
                                      ", not " + graph_fingerprint(g),
                                  -1);
    }
    if (n_vertices == 0) {
        throw StructuralViolation("graph has no vertices", -1);
    }
    if (n_steps == 0) {
        if (n_vertices != 1) {
            throw StructuralViolation("empty schedule leaves " + std::to_string(n_vertices) +
                                          " vertices uncontracted",
                                      -1);
        }
        const int degree = static_cast<int>(g.incident(0).size());
        report.boundary_profile = {degree};
        report.steps = {StepProfile{degree, 0, std::ldexp(1.0, 2 * degree)}};
        report.e_max = degree;
        report.peak_step = 0;
        report.cost_estimate = report.steps.front().cost;
        report.feasible = degree <= rank_ceiling;
        return report;
    }

    // Each operand gets a group id: steps use their index, lone vertices n_steps + v.
    // Groups are merged small-to-large; root_of[i] is the group holding step i.
    std::vector<int> owner(static_cast<std::size_t>(n_vertices));
    for (int v = 0; v < n_vertices; ++v) {
        owner[static_cast<std::size_t>(v)] = n_steps + v;
    }
    std::vector<std::vector<VertexId>> members(static_cast<std::size_t>(n_steps + n_vertices));
    std::vector<int> boundary_of(static_cast<std::size_t>(n_steps + n_vertices), 0);
    for (int v = 0; v < n_vertices; ++v) {
        members[static_cast<std::size_t>(n_steps + v)] = {v};
        boundary_of[static_cast<std::size_t>(n_steps + v)] = static_cast<int>(g.incident(v).size());
    }
    std::vector<int> root_of(static_cast<std::size_t>(n_steps), -1);
    std::vector<bool> vertex_used(static_cast<std::size_t>(n_vertices), false);
    std::vector<bool> step_used(static_cast<std::size_t>(n_steps), false);

    for (int i = 0; i < n_steps; ++i) {
        const auto &step = s.steps[static_cast<std::size_t>(i)];
        int group[2];
        int side = 0;
        for (const Operand *op : {&step.left, &step.right}) {
            if (op->is_step()) {
                if (op->index < 0 || op->index >= i) {
                    throw StructuralViolation("operand " + describe(*op) +
                                                  " does not refer to an earlier step",
                                              i);
                }
                if (step_used[static_cast<std::size_t>(op->index)]) {
                    throw StructuralViolation("step " + std::to_string(op->index) +
                                                  " is consumed twice",
                                              i);
                }
                step_used[static_cast<std::size_t>(op->index)] = true;
                group[side++] = root_of[static_cast<std::size_t>(op->index)];
            } else {
                if (op->index < 0 || op->index >= n_vertices) {
                    throw StructuralViolation("unknown vertex " + std::to_string(op->index), i);
                }
                if (vertex_used[static_cast<std::size_t>(op->index)]) {
                    throw StructuralViolation("vertex " + std::to_string(op->index) +
                                                  " is contracted twice",
                                              i);
                }
                vertex_used[static_cast<std::size_t>(op->index)] = true;
                group[side++] = n_steps + op->index;
            }
        }
        auto &small_members = members[static_cast<std::size_t>(group[0])].size() <=
                                      members[static_cast<std::size_t>(group[1])].size()
                                  ? members[static_cast<std::size_t>(group[0])]
                                  : members[static_cast<std::size_t>(group[1])];
        const int small = &small_members == &members[static_cast<std::size_t>(group[0])] ? group[0]
                                                                                          : group[1];
        const int large = small == group[0] ? group[1] : group[0];
        int shared = 0;
        for (VertexId v : small_members) {
            for (int e : g.incident(v)) {
                const VertexId w = g.other_end(e, v);
                if (w >= 0 && w < n_vertices && owner[static_cast<std::size_t>(w)] == large) {
                    ++shared;
                }
            }
        }
        const int boundary = boundary_of[static_cast<std::size_t>(small)] +
                             boundary_of[static_cast<std::size_t>(large)] - 2 * shared;
        for (VertexId v : small_members) {
            owner[static_cast<std::size_t>(v)] = large;
        }
        auto &large_members = members[static_cast<std::size_t>(large)];
        large_members.insert(large_members.end(), small_members.begin(), small_members.end());
        small_members.clear();
        small_members.shrink_to_fit();
        boundary_of[static_cast<std::size_t>(large)] = boundary;
        root_of[static_cast<std::size_t>(i)] = large;

        const double cost = std::ldexp(1.0, 2 * (boundary + shared));
        report.boundary_profile.push_back(boundary);
        report.steps.push_back({boundary, shared, cost});
        report.cost_estimate += cost;
        if (report.peak_step < 0 || boundary > report.e_max) {
            report.e_max = boundary;
            report.peak_step = i;
        }
    }

    for (int i = 0; i + 1 < n_steps; ++i) {
        if (!step_used[static_cast<std::size_t>(i)]) {
            throw StructuralViolation("final set is incomplete: step " + std::to_string(i) +
                                          " is never consumed",
                                      n_steps - 1);
        }
    }
    for (int v = 0; v < n_vertices; ++v) {
        if (!vertex_used[static_cast<std::size_t>(v)]) {
            throw StructuralViolation("final set is incomplete: vertex " + std::to_string(v) +
                                          " is never contracted",
                                      n_steps - 1);
        }
    }
    report.feasible = report.e_max <= rank_ceiling;
    return report;
}

ScheduleReport analyze_schedule(const Schedule &s, const CircuitGraph &g, int rank_ceiling) {
    return validate_schedule(s, g, rank_ceiling);
}

std::vector<std::vector<VertexId>> implied_sets(const Schedule &s, std::size_t n_vertices) {
    std::vector<std::vector<VertexId>> sets(s.steps.size());
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        auto &set = sets[i];
        for (const Operand *op : {&s.steps[i].left, &s.steps[i].right}) {
            if (op->is_step()) {
                const auto &prev = sets.at(static_cast<std::size_t>(op->index));
                set.insert(set.end(), prev.begin(), prev.end());
            } else {
                if (op->index < 0 || static_cast<std::size_t>(op->index) >= n_vertices) {
                    throw StructuralViolation("unknown vertex " + std::to_string(op->index),
                                              static_cast<long>(i));
                }
                set.push_back(op->index);
            }
        }
        std::sort(set.begin(), set.end());
    }
    return sets;
}

std::string graph_fingerprint(const CircuitGraph &g) {
    // FNV-1a over the wiring structure.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](long long x) {
        for (int b = 0; b < 8; ++b) {
            h ^= static_cast<std::uint64_t>((x >> (8 * b)) & 0xff);
            h *= 0x100000001b3ULL;
        }
    };
    feed(g.n_qubits());
    feed(static_cast<long long>(g.size()));
    for (const auto &v : g.vertices()) {
        feed(static_cast<long long>(v.kind.index()));
    }
    for (const auto &e : g.edges()) {
        feed(e.label.id);
        feed(e.tail.vertex);
        feed(e.tail.index);
        feed(e.head.vertex);
        feed(e.head.index);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_schedule(const Schedule &s) {
    std::ostringstream os;
    os << "# tnqs contraction schedule, " << s.steps.size() << " steps\n";
    if (!s.graph_ref.empty()) {
        os << "GRAPH " << s.graph_ref << "\n";
    }
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        os << "STEP " << i << " := " << describe(s.steps[i].left) << " + "
           << describe(s.steps[i].right) << "\n";
    }
    return os.str();
}

Schedule parse_schedule(const std::string &text) {
    static const std::regex step_re(R"(\s*STEP\s+(\d+)\s*:=\s*([SV])(\d+)\s*\+\s*([SV])(\d+)\s*)");
    static const std::regex graph_re(R"(\s*GRAPH\s+([0-9a-fA-F]+)\s*)");
    Schedule s;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::smatch m;
        if (std::regex_match(line, m, graph_re)) {
            s.graph_ref = m[1];
            continue;
        }
        if (!std::regex_match(line, m, step_re)) {
            throw ParseError("expected 'STEP i := <op> + <op>'", line_no, 1);
        }
        if (std::stoul(m[1]) != s.steps.size()) {
            throw ParseError("step number " + m[1].str() + " out of sequence, expected " +
                                 std::to_string(s.steps.size()),
                             line_no, 1);
        }
        auto operand = [](const std::string &kind, const std::string &idx) {
            const int i = std::stoi(idx);
            return kind == "S" ? Operand::step(i) : Operand::vertex(i);
        };
        s.steps.push_back({operand(m[2], m[3]), operand(m[4], m[5])});
    }
    return s;
}

} // namespace tnqs
