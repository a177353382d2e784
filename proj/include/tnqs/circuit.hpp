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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tnqs/channel.hpp"
#include "tnqs/op_tensor.hpp"

namespace tnqs {

using VertexId = int;

struct InputVertex {
    Matrix2 state;
};
struct GateVertex {
    std::shared_ptr<const ChannelSpec> channel;
};
/// An Output with no effect is Unspecified (traced out).
struct OutputVertex {
    std::optional<Matrix2> effect;
};
using VertexKind = std::variant<InputVertex, GateVertex, OutputVertex>;

struct Vertex {
    VertexId id = 0;
    VertexKind kind;
    std::vector<int> lines; // 1-based qubit lines; gate port p sits on lines[p]
    int timestep = 0;
    int ladder = 0;        // AQFT ladder number, 0 if untagged
    int logical_index = 0; // Output only: logical qubit read out on this line, 0 if none

    [[nodiscard]] bool is_input() const { return std::holds_alternative<InputVertex>(kind); }
    [[nodiscard]] bool is_gate() const { return std::holds_alternative<GateVertex>(kind); }
    [[nodiscard]] bool is_output() const { return std::holds_alternative<OutputVertex>(kind); }
    [[nodiscard]] const ChannelSpec &channel() const;
    [[nodiscard]] int in_ports() const;
    [[nodiscard]] int out_ports() const;
};

enum class PortDir : std::uint8_t { In, Out };

struct Port {
    VertexId vertex = 0;
    PortDir dir = PortDir::Out;
    int index = 0;
    bool operator==(const Port &) const = default;
};

/// A wire from tail (an output port) to head (an input port).
struct Edge {
    EdgeLabel label;
    Port tail;
    Port head;
    bool operator==(const Edge &) const = default;
};

/**
 * Vertices and labelled wires of a circuit. Vertex ids equal their position.
 *
 * Construction does not enforce the circuit invariants; validate_graph()
 * reports violations so malformed graphs can be inspected.
 */
class CircuitGraph {
  public:
    CircuitGraph() = default;
    CircuitGraph(int n_qubits, std::vector<Vertex> vertices, std::vector<Edge> edges);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::span<const Vertex> vertices() const noexcept { return vertices_; }
    [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
    [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
    [[nodiscard]] const Vertex &vertex(VertexId v) const { return vertices_.at(static_cast<std::size_t>(v)); }

    /// Indices into edges() touching v.
    [[nodiscard]] std::span<const int> incident(VertexId v) const;
    /// Label on a given port, if wired.
    [[nodiscard]] std::optional<EdgeLabel> label_at(Port p) const;
    /// The vertex at the other end of edge e from v.
    [[nodiscard]] VertexId other_end(int edge, VertexId v) const;

    /// Input / Output vertex ids ordered by qubit line.
    [[nodiscard]] std::vector<VertexId> inputs() const;
    [[nodiscard]] std::vector<VertexId> outputs() const;

  private:
    int n_qubits_ = 0;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_;
};

/// Exact structural comparison: kinds, matrices, lines, tags and edges.
[[nodiscard]] bool structurally_equal(const CircuitGraph &a, const CircuitGraph &b);

struct Violation {
    std::string kind; // "direction", "degree", "label", "line", "arity", "endpoint", "port"
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    /// For each qubit line (index 0 = line 1), the vertex ids from Input to Output.
    std::vector<std::vector<VertexId>> line_traces;
    [[nodiscard]] bool ok() const { return violations.empty(); }
    [[nodiscard]] bool has(const std::string &kind) const;
};

[[nodiscard]] ValidationReport validate_graph(const CircuitGraph &g);

/**
 * Builds a line-threaded circuit: one Input and one Output per line, gates
 * wired in timestep order along each line.
 */
class CircuitBuilder {
  public:
    explicit CircuitBuilder(int n_qubits);

    CircuitBuilder &input(int line, const Matrix2 &state);
    /// Appends a gate at the next timestep.
    CircuitBuilder &gate(ChannelSpec channel, std::vector<int> lines, int ladder = 0);
    CircuitBuilder &gate_at(ChannelSpec channel, std::vector<int> lines, int timestep,
                            int ladder = 0);
    CircuitBuilder &output(int line, std::optional<Matrix2> effect, int logical_index = 0);

    [[nodiscard]] CircuitGraph build() const;

  private:
    struct PendingGate {
        std::shared_ptr<const ChannelSpec> channel;
        std::vector<int> lines;
        int timestep;
        int ladder;
    };
    int n_;
    int next_timestep_ = 1;
    std::vector<Matrix2> inputs_;
    std::vector<std::optional<Matrix2>> outputs_;
    std::vector<int> logical_;
    std::vector<PendingGate> gates_;
};

// Builders and transforms.

/// Ladder l (1..n-1): H on line l then distance-k phases to lines l+1..min(l+m, n);
/// final ladder n is a lone H. Output on line j carries logical index n+1-j.
[[nodiscard]] CircuitGraph aqft_circuit(int n, int m,
                                        PhaseConvention conv = PhaseConvention::Literal);

/// ceil(log2(n / epsilon)).
[[nodiscard]] int truncation_for_epsilon(int n, double epsilon);

/// Number of gates in aqft_circuit(n, m).
[[nodiscard]] int aqft_gate_count(int n, int m);

/// d timesteps of non-overlapping gates spanning at most r lines apart.
[[nodiscard]] CircuitGraph logdepth_circuit(int n, int d, int r, std::uint64_t seed);

struct RandomCircuitOptions {
    int max_gates = 10;
    bool kraus = false;        // include non-unitary channels
    bool mixed_inputs = false; // random mixed input states
    bool three_qubit = false;  // occasionally include a 3-qubit unitary
};

/// Random unitaries/channels on arbitrary line pairs, used for oracle cross-checks.
[[nodiscard]] CircuitGraph random_circuit(int n, int depth, std::uint64_t seed,
                                          const RandomCircuitOptions &opts = {});

[[nodiscard]] Matrix random_unitary(int qubits, std::uint64_t seed);

/// Line i becomes n+1-i; everything else is unchanged.
[[nodiscard]] CircuitGraph flip_circuit(const CircuitGraph &g);

/// Replaces every Input state with |b><b| for the given bit string (line order).
[[nodiscard]] CircuitGraph with_basis_input(const CircuitGraph &g, const std::string &bits);
[[nodiscard]] CircuitGraph with_input_states(const CircuitGraph &g,
                                             const std::vector<Matrix2> &states);

struct ComposedGraph {
    CircuitGraph graph;
    std::vector<VertexId> from_a; // C id of each A vertex, -1 if fused away
    std::vector<VertexId> from_b;
};

/// Joins wired A Outputs to B Inputs. Wiring maps A Output ids to B Input ids.
[[nodiscard]] ComposedGraph compose_graphs(const CircuitGraph &a, const CircuitGraph &b,
                                           const std::map<VertexId, VertexId> &wiring);

/// Wires A's output on line q to B's input on line q for q = 1..min(n_a, n_b).
[[nodiscard]] std::map<VertexId, VertexId> line_wiring(const CircuitGraph &a,
                                                       const CircuitGraph &b);

} // namespace tnqs
