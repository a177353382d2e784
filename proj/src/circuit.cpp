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

#include "tnqs/circuit.hpp"

#include <algorithm>
#include <set>

#include "tnqs/errors.hpp"

namespace tnqs {

const ChannelSpec &Vertex::channel() const {
    const auto *g = std::get_if<GateVertex>(&kind);
    if (g == nullptr || !g->channel) {
        throw GraphError("vertex " + std::to_string(id) + " is not a gate");
    }
    return *g->channel;
}

int Vertex::in_ports() const {
    if (is_input()) {
        return 0;
    }
    if (is_output()) {
        return 1;
    }
    return channel().arity_in();
}

int Vertex::out_ports() const {
    if (is_input()) {
        return 1;
    }
    if (is_output()) {
        return 0;
    }
    return channel().arity_out();
}

CircuitGraph::CircuitGraph(int n_qubits, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : n_qubits_(n_qubits), vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].id != static_cast<VertexId>(i)) {
            throw GraphError("vertex ids must equal their position");
        }
    }
    incident_.resize(vertices_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        for (VertexId v : {edges_[e].tail.vertex, edges_[e].head.vertex}) {
            if (v >= 0 && v < static_cast<VertexId>(vertices_.size())) {
                auto &inc = incident_[static_cast<std::size_t>(v)];
                if (inc.empty() || inc.back() != static_cast<int>(e)) {
                    inc.push_back(static_cast<int>(e));
                }
            }
        }
    }
}

std::span<const int> CircuitGraph::incident(VertexId v) const {
    return incident_.at(static_cast<std::size_t>(v));
}

std::optional<EdgeLabel> CircuitGraph::label_at(Port p) const {
    for (int e : incident(p.vertex)) {
        const auto &edge = edges_[static_cast<std::size_t>(e)];
        if ((p.dir == PortDir::Out && edge.tail == p) || (p.dir == PortDir::In && edge.head == p)) {
            return edge.label;
        }
    }
    return std::nullopt;
}

VertexId CircuitGraph::other_end(int edge, VertexId v) const {
    const auto &e = edges_.at(static_cast<std::size_t>(edge));
    return e.tail.vertex == v ? e.head.vertex : e.tail.vertex;
}

namespace {

std::vector<VertexId> by_line(std::span<const Vertex> vs, bool inputs) {
    std::vector<VertexId> out;
    for (const auto &v : vs) {
        if (inputs ? v.is_input() : v.is_output()) {
            out.push_back(v.id);
        }
    }
    std::stable_sort(out.begin(), out.end(), [&](VertexId a, VertexId b) {
        const auto &la = vs[static_cast<std::size_t>(a)].lines;
        const auto &lb = vs[static_cast<std::size_t>(b)].lines;
        const int x = la.empty() ? 0 : la.front();
        const int y = lb.empty() ? 0 : lb.front();
        return x < y;
    });
    return out;
}

bool same_channel(const ChannelSpec &a, const ChannelSpec &b) {
    return a.name() == b.name() && a.arity_in() == b.arity_in() &&
           a.arity_out() == b.arity_out() && a.matrix() == b.matrix();
}

bool same_kind(const VertexKind &a, const VertexKind &b) {
    if (a.index() != b.index()) {
        return false;
    }
    if (const auto *ia = std::get_if<InputVertex>(&a)) {
        return ia->state == std::get<InputVertex>(b).state;
    }
    if (const auto *ga = std::get_if<GateVertex>(&a)) {
        return same_channel(*ga->channel, *std::get<GateVertex>(b).channel);
    }
    const auto &oa = std::get<OutputVertex>(a).effect;
    const auto &ob = std::get<OutputVertex>(b).effect;
    if (oa.has_value() != ob.has_value()) {
        return false;
    }
    return !oa || *oa == *ob;
}

} // namespace

std::vector<VertexId> CircuitGraph::inputs() const { return by_line(vertices_, true); }
std::vector<VertexId> CircuitGraph::outputs() const { return by_line(vertices_, false); }

bool structurally_equal(const CircuitGraph &a, const CircuitGraph &b) {
    if (a.n_qubits() != b.n_qubits() || a.size() != b.size() ||
        a.edges().size() != b.edges().size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto &va = a.vertices()[i];
        const auto &vb = b.vertices()[i];
        if (va.lines != vb.lines || va.timestep != vb.timestep || va.ladder != vb.ladder ||
            va.logical_index != vb.logical_index || !same_kind(va.kind, vb.kind)) {
            return false;
        }
    }
    return std::equal(a.edges().begin(), a.edges().end(), b.edges().begin());
}

bool ValidationReport::has(const std::string &kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation &v) { return v.kind == kind; });
}

ValidationReport validate_graph(const CircuitGraph &g) {
    ValidationReport report;
    auto flag = [&](std::string kind, std::string msg) {
        report.violations.push_back({std::move(kind), std::move(msg)});
    };
    const auto n_vertices = static_cast<VertexId>(g.size());

    for (const auto &v : g.vertices()) {
        if (v.is_gate()) {
            const auto &ch = v.channel();
            if (ch.arity_in() != ch.arity_out() ||
                ch.arity_in() != static_cast<int>(v.lines.size())) {
                flag("arity", "gate " + std::to_string(v.id) + " acts on " +
                                  std::to_string(ch.arity_in()) + " qubits but lists " +
                                  std::to_string(v.lines.size()) + " lines");
            }
        } else if (v.lines.size() != 1) {
            flag("arity", "vertex " + std::to_string(v.id) + " must sit on exactly one line");
        }
        std::set<int> distinct(v.lines.begin(), v.lines.end());
        if (distinct.size() != v.lines.size()) {
            flag("line", "vertex " + std::to_string(v.id) + " repeats a qubit line");
        }
        for (int line : v.lines) {
            if (line < 1 || line > g.n_qubits()) {
                flag("line", "vertex " + std::to_string(v.id) + " uses line " +
                                 std::to_string(line) + " outside 1.." +
                                 std::to_string(g.n_qubits()));
            }
        }
    }

    std::set<int> labels;
    std::set<std::tuple<VertexId, PortDir, int>> used_ports;
    bool endpoints_ok = true;
    for (const auto &e : g.edges()) {
        if (!labels.insert(e.label.id).second) {
            flag("label", "edge label " + std::to_string(e.label.id) + " is not unique");
        }
        bool ok = true;
        for (const Port *p : {&e.tail, &e.head}) {
            if (p->vertex < 0 || p->vertex >= n_vertices) {
                flag("endpoint", "edge " + std::to_string(e.label.id) + " references vertex " +
                                     std::to_string(p->vertex));
                ok = false;
                endpoints_ok = false;
            }
        }
        if (!ok) {
            continue;
        }
        if (e.tail.dir != PortDir::Out || e.head.dir != PortDir::In) {
            flag("direction", "edge " + std::to_string(e.label.id) +
                                  " must run from an output port to an input port");
        }
        for (const Port *p : {&e.tail, &e.head}) {
            const auto &v = g.vertex(p->vertex);
            const int limit = p->dir == PortDir::In ? v.in_ports() : v.out_ports();
            if (p->index < 0 || p->index >= limit) {
                flag("direction", "edge " + std::to_string(e.label.id) + " uses missing " +
                                      (p->dir == PortDir::In ? "input" : "output") +
                                      " port " + std::to_string(p->index) + " of vertex " +
                                      std::to_string(p->vertex));
            }
            if (!used_ports.insert({p->vertex, p->dir, p->index}).second) {
                flag("port", "port " + std::to_string(p->index) + " of vertex " +
                                 std::to_string(p->vertex) + " carries two edges");
            }
        }
    }

    for (const auto &v : g.vertices()) {
        const int expected = v.in_ports() + v.out_ports();
        const int degree = static_cast<int>(g.incident(v.id).size());
        if (degree != expected) {
            flag("degree", "vertex " + std::to_string(v.id) + " has degree " +
                               std::to_string(degree) + ", expected " + std::to_string(expected));
        }
    }

    if (!endpoints_ok || !report.ok()) {
        return report;
    }

    // Follow each line from its Input to its Output.
    std::vector<int> inputs_on(static_cast<std::size_t>(g.n_qubits()) + 1, 0);
    std::vector<int> outputs_on(static_cast<std::size_t>(g.n_qubits()) + 1, 0);
    for (const auto &v : g.vertices()) {
        if (v.is_input()) {
            ++inputs_on[static_cast<std::size_t>(v.lines.front())];
        } else if (v.is_output()) {
            ++outputs_on[static_cast<std::size_t>(v.lines.front())];
        }
    }
    for (int line = 1; line <= g.n_qubits(); ++line) {
        if (inputs_on[static_cast<std::size_t>(line)] != 1 ||
            outputs_on[static_cast<std::size_t>(line)] != 1) {
            flag("line", "line " + std::to_string(line) + " has " +
                             std::to_string(inputs_on[static_cast<std::size_t>(line)]) +
                             " inputs and " +
                             std::to_string(outputs_on[static_cast<std::size_t>(line)]) +
                             " outputs");
        }
    }
    if (!report.ok()) {
        return report;
    }
    report.line_traces.resize(static_cast<std::size_t>(g.n_qubits()));
    for (VertexId in : g.inputs()) {
        const int line = g.vertex(in).lines.front();
        auto &trace = report.line_traces[static_cast<std::size_t>(line - 1)];
        Port at{in, PortDir::Out, 0};
        trace.push_back(in);
        for (std::size_t guard = 0; guard <= g.size(); ++guard) {
            const auto label = g.label_at(at);
            if (!label) {
                flag("line", "line " + std::to_string(line) + " is cut at vertex " +
                                 std::to_string(at.vertex));
                break;
            }
            const auto edge = std::find_if(g.edges().begin(), g.edges().end(),
                                           [&](const Edge &e) { return e.label == *label; });
            const auto &next = g.vertex(edge->head.vertex);
            trace.push_back(next.id);
            const int port = edge->head.index;
            if (port >= static_cast<int>(next.lines.size()) || next.lines[port] != line) {
                flag("line", "line " + std::to_string(line) + " enters vertex " +
                                 std::to_string(next.id) + " on a port for another line");
                break;
            }
            if (next.is_output()) {
                break;
            }
            at = Port{next.id, PortDir::Out, port};
        }
        if (!g.vertex(trace.back()).is_output()) {
            flag("line", "line " + std::to_string(line) + " does not reach an output");
        }
    }
    return report;
}

CircuitBuilder::CircuitBuilder(int n_qubits)
    : n_(n_qubits), inputs_(static_cast<std::size_t>(n_qubits), ket0_projector()),
      outputs_(static_cast<std::size_t>(n_qubits)), logical_(static_cast<std::size_t>(n_qubits), 0) {
    if (n_qubits < 1) {
        throw GraphError("circuit needs at least one qubit");
    }
}

CircuitBuilder &CircuitBuilder::input(int line, const Matrix2 &state) {
    if (line < 1 || line > n_) {
        throw GraphError("input line " + std::to_string(line) + " out of range");
    }
    inputs_[static_cast<std::size_t>(line - 1)] = state;
    return *this;
}

CircuitBuilder &CircuitBuilder::gate(ChannelSpec channel, std::vector<int> lines, int ladder) {
    return gate_at(std::move(channel), std::move(lines), next_timestep_, ladder);
}

CircuitBuilder &CircuitBuilder::gate_at(ChannelSpec channel, std::vector<int> lines,
                                        int timestep, int ladder) {
    if (channel.arity_in() != channel.arity_out() ||
        channel.arity_in() != static_cast<int>(lines.size())) {
        throw ArityMismatch("gate on " + std::to_string(lines.size()) +
                            " lines needs a channel of equal input and output arity");
    }
    std::set<int> distinct(lines.begin(), lines.end());
    if (distinct.size() != lines.size() || *distinct.begin() < 1 || *distinct.rbegin() > n_) {
        throw GraphError("gate lines must be distinct and within 1.." + std::to_string(n_));
    }
    if (timestep < 1) {
        throw GraphError("gate timesteps start at 1");
    }
    gates_.push_back(PendingGate{std::make_shared<const ChannelSpec>(std::move(channel)),
                                 std::move(lines), timestep, ladder});
    next_timestep_ = std::max(next_timestep_, timestep + 1);
    return *this;
}

CircuitBuilder &CircuitBuilder::output(int line, std::optional<Matrix2> effect,
                                       int logical_index) {
    if (line < 1 || line > n_) {
        throw GraphError("output line " + std::to_string(line) + " out of range");
    }
    outputs_[static_cast<std::size_t>(line - 1)] = std::move(effect);
    logical_[static_cast<std::size_t>(line - 1)] = logical_index;
    return *this;
}

CircuitGraph CircuitBuilder::build() const {
    std::vector<Vertex> vertices;
    int last_timestep = 0;
    for (const auto &g : gates_) {
        last_timestep = std::max(last_timestep, g.timestep);
    }
    for (int line = 1; line <= n_; ++line) {
        Vertex v;
        v.id = static_cast<VertexId>(vertices.size());
        v.kind = InputVertex{inputs_[static_cast<std::size_t>(line - 1)]};
        v.lines = {line};
        vertices.push_back(std::move(v));
    }
    for (const auto &g : gates_) {
        Vertex v;
        v.id = static_cast<VertexId>(vertices.size());
        v.kind = GateVertex{g.channel};
        v.lines = g.lines;
        v.timestep = g.timestep;
        v.ladder = g.ladder;
        vertices.push_back(std::move(v));
    }
    for (int line = 1; line <= n_; ++line) {
        Vertex v;
        v.id = static_cast<VertexId>(vertices.size());
        v.kind = OutputVertex{outputs_[static_cast<std::size_t>(line - 1)]};
        v.lines = {line};
        v.timestep = last_timestep + 1;
        v.logical_index = logical_[static_cast<std::size_t>(line - 1)];
        vertices.push_back(std::move(v));
    }

    // Per line: (timestep, vertex, port) in time order.
    std::vector<std::vector<std::tuple<int, VertexId, int>>> along(static_cast<std::size_t>(n_));
    for (const auto &v : vertices) {
        for (std::size_t p = 0; p < v.lines.size(); ++p) {
            along[static_cast<std::size_t>(v.lines[p] - 1)].emplace_back(v.timestep, v.id,
                                                                         static_cast<int>(p));
        }
    }
    std::map<std::pair<VertexId, int>, std::pair<VertexId, int>> next_on_line;
    for (int line = 1; line <= n_; ++line) {
        auto &seq = along[static_cast<std::size_t>(line - 1)];
        std::stable_sort(seq.begin(), seq.end(), [](const auto &x, const auto &y) {
            return std::get<0>(x) < std::get<0>(y);
        });
        for (std::size_t i = 1; i < seq.size(); ++i) {
            if (std::get<0>(seq[i]) == std::get<0>(seq[i - 1])) {
                throw GraphError("two gates share timestep " + std::to_string(std::get<0>(seq[i])) +
                                 " on line " + std::to_string(line));
            }
            next_on_line[{std::get<1>(seq[i - 1]), std::get<2>(seq[i - 1])}] = {
                std::get<1>(seq[i]), std::get<2>(seq[i])};
        }
    }
    std::vector<Edge> edges;
    for (const auto &[from, to] : next_on_line) {
        edges.push_back(Edge{EdgeLabel{static_cast<int>(edges.size())},
                             Port{from.first, PortDir::Out, from.second},
                             Port{to.first, PortDir::In, to.second}});
    }
    return CircuitGraph(n_, std::move(vertices), std::move(edges));
}

} // namespace tnqs
