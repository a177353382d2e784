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
#include <cmath>
#include <set>

#include <Eigen/QR>

#include "tnqs/circuit.hpp"
#include "tnqs/errors.hpp"
#include "tnqs/rng.hpp"

namespace tnqs {

int truncation_for_epsilon(int n, double epsilon) {
    if (n < 1 || epsilon <= 0.0) {
        throw BadTruncation("truncation needs n >= 1 and epsilon > 0");
    }
    return static_cast<int>(std::ceil(std::log2(static_cast<double>(n) / epsilon)));
}

int aqft_gate_count(int n, int m) {
    int count = n;
    for (int l = 1; l <= n - 1; ++l) {
        count += std::min(m, n - l);
    }
    return count;
}

CircuitGraph aqft_circuit(int n, int m, PhaseConvention conv) {
    if (n < 2 || m < 1 || m > n - 1) {
        throw BadTruncation("aqft truncation m = " + std::to_string(m) + " outside 1.." +
                            std::to_string(n - 1));
    }
    CircuitBuilder b(n);
    for (int l = 1; l <= n; ++l) {
        b.gate(hadamard(), {l}, l);
        for (int q = l + 1; q <= std::min(l + m, n); ++q) {
            b.gate(controlled_phase(q - l, conv), {l, q}, l);
        }
    }
    for (int j = 1; j <= n; ++j) {
        b.output(j, std::nullopt, n + 1 - j);
    }
    return b.build();
}

namespace {

Matrix single_qubit_unitary(Rng &rng) {
    const double pi = 3.141592653589793;
    const double theta = std::acos(1.0 - 2.0 * rng.uniform());
    const double phi = 2.0 * pi * rng.uniform();
    const double lam = 2.0 * pi * rng.uniform();
    Matrix u(2, 2);
    u << std::cos(theta / 2), -std::polar(1.0, lam) * std::sin(theta / 2),
        std::polar(1.0, phi) * std::sin(theta / 2), std::polar(1.0, phi + lam) * std::cos(theta / 2);
    return u;
}

Matrix haar_unitary(int qubits, Rng &rng) {
    const Eigen::Index d = Eigen::Index{1} << qubits;
    Matrix z(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            z(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        q.col(i) *= std::abs(rii) > 0 ? rii / std::abs(rii) : Complex(1.0);
    }
    return q;
}

Matrix2 random_density(Rng &rng) {
    // Bloch vector inside the ball.
    double x, y, z;
    do {
        x = 2.0 * rng.uniform() - 1.0;
        y = 2.0 * rng.uniform() - 1.0;
        z = 2.0 * rng.uniform() - 1.0;
    } while (x * x + y * y + z * z > 1.0);
    Matrix2 rho;
    rho << 0.5 * (1 + z), Complex(0.5 * x, -0.5 * y), Complex(0.5 * x, 0.5 * y), 0.5 * (1 - z);
    return rho;
}

} // namespace

Matrix random_unitary(int qubits, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(qubits, rng);
}

CircuitGraph logdepth_circuit(int n, int d, int r, std::uint64_t seed) {
    if (n < 1 || d < 1 || r < 1) {
        throw GraphError("logdepth circuit needs n, d, r >= 1");
    }
    Rng rng(seed);
    CircuitBuilder b(n);
    for (int t = 1; t <= d; ++t) {
        std::vector<bool> busy(static_cast<std::size_t>(n) + 1, false);
        for (int q = 1; q <= n; ++q) {
            if (busy[static_cast<std::size_t>(q)]) {
                continue;
            }
            std::vector<int> partners;
            for (int p = q + 1; p <= std::min(q + r, n); ++p) {
                if (!busy[static_cast<std::size_t>(p)]) {
                    partners.push_back(p);
                }
            }
            busy[static_cast<std::size_t>(q)] = true;
            if (!partners.empty() && rng.uniform() < 0.5) {
                const int p = partners[static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<long long>(partners.size()) - 1))];
                busy[static_cast<std::size_t>(p)] = true;
                b.gate_at(controlled_phase(p - q), {q, p}, t);
            } else if (rng.uniform() < 0.5) {
                b.gate_at(hadamard(), {q}, t);
            } else {
                b.gate_at(ChannelSpec::from_unitary(single_qubit_unitary(rng)), {q}, t);
            }
        }
    }
    return b.build();
}

CircuitGraph random_circuit(int n, int depth, std::uint64_t seed, const RandomCircuitOptions &opts) {
    Rng rng(seed);
    CircuitBuilder b(n);
    if (opts.mixed_inputs) {
        for (int q = 1; q <= n; ++q) {
            b.input(q, random_density(rng));
        }
    } else {
        for (int q = 1; q <= n; ++q) {
            b.input(q, rng.uniform() < 0.5 ? ket0_projector() : ket1_projector());
        }
    }
    int placed = 0;
    for (int t = 1; t <= depth && placed < opts.max_gates; ++t) {
        std::vector<int> free_lines;
        for (int q = 1; q <= n; ++q) {
            free_lines.push_back(q);
        }
        // Fisher-Yates with the portable generator.
        for (std::size_t i = free_lines.size(); i > 1; --i) {
            std::swap(free_lines[i - 1],
                      free_lines[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long long>(i) - 1))]);
        }
        std::size_t pos = 0;
        while (pos < free_lines.size() && placed < opts.max_gates) {
            const std::size_t left = free_lines.size() - pos;
            const double u = rng.uniform();
            if (opts.three_qubit && left >= 3 && u < 0.1) {
                std::vector<int> lines(free_lines.begin() + static_cast<long>(pos),
                                       free_lines.begin() + static_cast<long>(pos) + 3);
                b.gate_at(ChannelSpec::from_unitary(haar_unitary(3, rng)), lines, t);
                pos += 3;
            } else if (left >= 2 && u < 0.55) {
                std::vector<int> lines = {free_lines[pos], free_lines[pos + 1]};
                const double kind = rng.uniform();
                if (kind < 0.3) {
                    b.gate_at(cnot(), lines, t);
                } else if (kind < 0.5) {
                    b.gate_at(cphase(2.0 * 3.141592653589793 * rng.uniform()), lines, t);
                } else {
                    b.gate_at(ChannelSpec::from_unitary(haar_unitary(2, rng)), lines, t);
                }
                pos += 2;
            } else {
                const int line = free_lines[pos];
                const double kind = rng.uniform();
                if (opts.kraus && kind < 0.3) {
                    if (rng.uniform() < 0.5) {
                        b.gate_at(amplitude_damping(rng.uniform()), {line}, t);
                    } else {
                        b.gate_at(depolarizing(rng.uniform()), {line}, t);
                    }
                } else if (kind < 0.5) {
                    b.gate_at(hadamard(), {line}, t);
                } else {
                    b.gate_at(ChannelSpec::from_unitary(single_qubit_unitary(rng)), {line}, t);
                }
                pos += 1;
            }
            ++placed;
        }
    }
    return b.build();
}

CircuitGraph flip_circuit(const CircuitGraph &g) {
    std::vector<Vertex> vertices(g.vertices().begin(), g.vertices().end());
    const int n = g.n_qubits();
    for (auto &v : vertices) {
        for (int &line : v.lines) {
            line = n + 1 - line;
        }
    }
    return CircuitGraph(n, std::move(vertices), std::vector<Edge>(g.edges().begin(), g.edges().end()));
}

CircuitGraph with_input_states(const CircuitGraph &g, const std::vector<Matrix2> &states) {
    if (static_cast<int>(states.size()) != g.n_qubits()) {
        throw GraphError("expected " + std::to_string(g.n_qubits()) + " input states");
    }
    std::vector<Vertex> vertices(g.vertices().begin(), g.vertices().end());
    for (auto &v : vertices) {
        if (v.is_input()) {
            v.kind = InputVertex{states[static_cast<std::size_t>(v.lines.front() - 1)]};
        }
    }
    return CircuitGraph(g.n_qubits(), std::move(vertices),
                        std::vector<Edge>(g.edges().begin(), g.edges().end()));
}

CircuitGraph with_basis_input(const CircuitGraph &g, const std::string &bits) {
    if (static_cast<int>(bits.size()) != g.n_qubits()) {
        throw GraphError("input bit string has " + std::to_string(bits.size()) +
                         " bits for " + std::to_string(g.n_qubits()) + " qubits");
    }
    std::vector<Matrix2> states;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw GraphError("input bit string may only contain 0 and 1");
        }
        states.push_back(c == '0' ? ket0_projector() : ket1_projector());
    }
    return with_input_states(g, states);
}

std::map<VertexId, VertexId> line_wiring(const CircuitGraph &a, const CircuitGraph &b) {
    const auto outs = a.outputs();
    const auto ins = b.inputs();
    std::map<VertexId, VertexId> wiring;
    for (std::size_t i = 0; i < std::min(outs.size(), ins.size()); ++i) {
        wiring[outs[i]] = ins[i];
    }
    return wiring;
}

ComposedGraph compose_graphs(const CircuitGraph &a, const CircuitGraph &b,
                             const std::map<VertexId, VertexId> &wiring) {
    std::set<VertexId> targets;
    std::map<VertexId, VertexId> reverse;
    for (const auto &[out, in] : wiring) {
        if (out < 0 || out >= static_cast<VertexId>(a.size()) || !a.vertex(out).is_output()) {
            throw WiringConflict("vertex " + std::to_string(out) + " is not an output of A");
        }
        if (std::get<OutputVertex>(a.vertex(out).kind).effect) {
            throw WiringConflict("output " + std::to_string(out) +
                                 " has a measurement and cannot be wired");
        }
        if (in < 0 || in >= static_cast<VertexId>(b.size()) || !b.vertex(in).is_input()) {
            throw WiringConflict("vertex " + std::to_string(in) + " is not an input of B");
        }
        if (!targets.insert(in).second) {
            throw WiringConflict("input " + std::to_string(in) + " of B is wired twice");
        }
        reverse[in] = out;
    }

    // Wired B lines continue the A line they attach to; the rest are appended.
    std::map<int, int> b_line;
    int n_c = a.n_qubits();
    for (VertexId in : b.inputs()) {
        const int line = b.vertex(in).lines.front();
        auto it = reverse.find(in);
        b_line[line] = it != reverse.end() ? a.vertex(it->second).lines.front() : ++n_c;
    }
    int offset = 0;
    for (const auto &v : a.vertices()) {
        if (v.is_gate()) {
            offset = std::max(offset, v.timestep);
        }
    }

    // Rebuild in canonical order: inputs by line, A gates, B gates, outputs by line.
    CircuitBuilder builder(n_c);
    for (const auto &v : a.vertices()) {
        if (v.is_input()) {
            builder.input(v.lines.front(), std::get<InputVertex>(v.kind).state);
        }
    }
    for (const auto &v : b.vertices()) {
        if (v.is_input() && !reverse.count(v.id)) {
            builder.input(b_line.at(v.lines.front()), std::get<InputVertex>(v.kind).state);
        }
    }
    std::vector<std::pair<bool, VertexId>> gate_sources;
    for (const auto &v : a.vertices()) {
        if (v.is_gate()) {
            builder.gate_at(v.channel(), v.lines, v.timestep, v.ladder);
            gate_sources.emplace_back(true, v.id);
        }
    }
    for (const auto &v : b.vertices()) {
        if (v.is_gate()) {
            std::vector<int> lines;
            for (int line : v.lines) {
                lines.push_back(b_line.at(line));
            }
            builder.gate_at(v.channel(), lines, v.timestep + offset, v.ladder);
            gate_sources.emplace_back(false, v.id);
        }
    }
    for (const auto &v : a.vertices()) {
        if (v.is_output() && !wiring.count(v.id)) {
            builder.output(v.lines.front(), std::get<OutputVertex>(v.kind).effect, v.logical_index);
        }
    }
    for (const auto &v : b.vertices()) {
        if (v.is_output()) {
            builder.output(b_line.at(v.lines.front()), std::get<OutputVertex>(v.kind).effect,
                           v.logical_index);
        }
    }

    ComposedGraph out;
    out.graph = builder.build();
    out.from_a.assign(a.size(), -1);
    out.from_b.assign(b.size(), -1);
    const auto c_ins = out.graph.inputs();
    const auto c_outs = out.graph.outputs();
    for (const auto &v : a.vertices()) {
        const auto line = static_cast<std::size_t>(v.lines.front() - 1);
        if (v.is_input()) {
            out.from_a[static_cast<std::size_t>(v.id)] = c_ins[line];
        } else if (v.is_output() && !wiring.count(v.id)) {
            out.from_a[static_cast<std::size_t>(v.id)] = c_outs[line];
        }
    }
    for (const auto &v : b.vertices()) {
        const auto line = static_cast<std::size_t>(b_line.at(v.lines.front()) - 1);
        if (v.is_input() && !reverse.count(v.id)) {
            out.from_b[static_cast<std::size_t>(v.id)] = c_ins[line];
        } else if (v.is_output()) {
            out.from_b[static_cast<std::size_t>(v.id)] = c_outs[line];
        }
    }
    VertexId next_gate = n_c;
    for (const auto &[from_a, id] : gate_sources) {
        (from_a ? out.from_a : out.from_b)[static_cast<std::size_t>(id)] = next_gate++;
    }
    return out;
}

} // namespace tnqs
