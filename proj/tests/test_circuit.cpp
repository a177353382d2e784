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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tnqs/circuit_io.hpp"
#include "tnqs/errors.hpp"
#include "tnqs/oracle.hpp"

using namespace tnqs;
using tnqs::testing::embed;

namespace {

int gate_count(const CircuitGraph &g) {
    int count = 0;
    for (const auto &v : g.vertices()) {
        count += v.is_gate() ? 1 : 0;
    }
    return count;
}

Eigen::MatrixXcd circuit_unitary(const CircuitGraph &g) {
    const int n = g.n_qubits();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(1LL << n, 1LL << n);
    std::vector<const Vertex *> gates;
    for (const auto &v : g.vertices()) {
        if (v.is_gate()) {
            gates.push_back(&v);
        }
    }
    std::stable_sort(gates.begin(), gates.end(),
                     [](const Vertex *a, const Vertex *b) { return a->timestep < b->timestep; });
    for (const Vertex *v : gates) {
        u = embed(v->channel().kraus().front(), v->lines, n) * u;
    }
    return u;
}

unsigned reverse_bits(unsigned x, int n) {
    unsigned r = 0;
    for (int i = 0; i < n; ++i) {
        r = (r << 1) | ((x >> i) & 1U);
    }
    return r;
}

} // namespace

TEST_CASE("validate_graph") {
    SUBCASE("bare wire") {
        const auto g = CircuitBuilder(1).build();
        const auto report = validate_graph(g);
        CHECK(report.ok());
        CHECK(g.size() == 2);
        CHECK(g.edges().size() == 1);
        REQUIRE(report.line_traces.size() == 1);
        CHECK(report.line_traces[0] == std::vector<VertexId>{0, 1});
    }
    SUBCASE("edge between two input ports") {
        std::vector<Vertex> vs(3);
        vs[0] = {0, InputVertex{ket0_projector()}, {1}};
        vs[1] = {1, OutputVertex{}, {1}};
        vs[2] = {2, OutputVertex{}, {1}};
        std::vector<Edge> es{{{0}, {1, PortDir::In, 0}, {2, PortDir::In, 0}}};
        const auto report = validate_graph(CircuitGraph(1, vs, es));
        CHECK(report.has("direction"));
    }
    SUBCASE("two-qubit gate with three edges") {
        std::vector<Vertex> vs(5);
        vs[0] = {0, InputVertex{ket0_projector()}, {1}};
        vs[1] = {1, InputVertex{ket0_projector()}, {2}};
        vs[2] = {2, GateVertex{std::make_shared<const ChannelSpec>(cnot())}, {1, 2}, 1};
        vs[3] = {3, OutputVertex{}, {1}};
        vs[4] = {4, OutputVertex{}, {2}};
        std::vector<Edge> es{{{0}, {0, PortDir::Out, 0}, {2, PortDir::In, 0}},
                             {{1}, {1, PortDir::Out, 0}, {2, PortDir::In, 1}},
                             {{2}, {2, PortDir::Out, 0}, {3, PortDir::In, 0}}};
        const auto report = validate_graph(CircuitGraph(2, vs, es));
        CHECK(report.has("degree"));
    }
    SUBCASE("builder output always validates") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            CHECK(validate_graph(random_circuit(4, 6, seed, {12, true, true, true})).ok());
            CHECK(validate_graph(logdepth_circuit(9, 4, 3, seed)).ok());
        }
    }
    SUBCASE("builder refuses two gates at one timestep on a line") {
        CircuitBuilder b(2);
        b.gate_at(hadamard(), {1}, 1).gate_at(cnot(), {1, 2}, 1);
        CHECK_THROWS_AS((void)b.build(), GraphError);
    }
}

TEST_CASE("aqft_circuit structure") {
    SUBCASE("n = 2, m = 1") {
        const auto g = aqft_circuit(2, 1);
        std::vector<std::string> names;
        for (const auto &v : g.vertices()) {
            if (v.is_gate()) {
                names.push_back(v.channel().name());
            }
        }
        CHECK(names == std::vector<std::string>{"H", "R(1)", "H"});
    }
    CHECK(gate_count(aqft_circuit(4, 3)) == 10);
    CHECK(gate_count(aqft_circuit(8, 2)) == 21);
    for (int n = 2; n <= 12; ++n) {
        for (int m = 1; m <= n - 1; ++m) {
            const auto g = aqft_circuit(n, m);
            int expected = n;
            for (int l = 1; l <= n - 1; ++l) {
                expected += std::min(m, n - l);
            }
            CHECK(gate_count(g) == expected);
            CHECK(aqft_gate_count(n, m) == expected);
            for (const auto &v : g.vertices()) {
                if (v.is_gate()) {
                    CHECK(v.ladder >= 1);
                    CHECK(v.lines.back() - v.lines.front() <= m);
                }
                if (v.is_output()) {
                    CHECK(v.logical_index == n + 1 - v.lines.front());
                }
            }
        }
    }
    CHECK_THROWS_AS((void)aqft_circuit(4, 0), BadTruncation);
    CHECK_THROWS_AS((void)aqft_circuit(4, 4), BadTruncation);
}

TEST_CASE("untruncated aqft is the bit-reversed DFT") {
    for (int n = 2; n <= 6; ++n) {
        const auto u = circuit_unitary(aqft_circuit(n, n - 1));
        const unsigned dim = 1U << n;
        double worst = 0;
        for (unsigned x = 0; x < dim; ++x) {
            for (unsigned y = 0; y < dim; ++y) {
                const Complex expected =
                    std::exp(Complex(0, 2 * std::numbers::pi * x * y / dim)) / std::sqrt(double(dim));
                worst = std::max(worst, std::abs(u(reverse_bits(y, n), x) - expected));
            }
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("truncation from epsilon") {
    CHECK(truncation_for_epsilon(8, 0.5) == 4);
    CHECK(truncation_for_epsilon(10, 0.25) == 6);
    CHECK(truncation_for_epsilon(16, 1.0) == 4);
    CHECK_THROWS_AS((void)truncation_for_epsilon(8, 0), BadTruncation);
}

TEST_CASE("logdepth_circuit") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = logdepth_circuit(4, 1, 1, seed);
        int two_qubit = 0;
        for (const auto &v : g.vertices()) {
            two_qubit += v.is_gate() && v.lines.size() == 2 ? 1 : 0;
        }
        CHECK(two_qubit <= 2);
    }
    CHECK(structurally_equal(logdepth_circuit(10, 4, 2, 5), logdepth_circuit(10, 4, 2, 5)));
    const auto g = logdepth_circuit(16, 5, 3, 1);
    for (const auto &v : g.vertices()) {
        if (v.is_gate()) {
            CHECK(v.timestep >= 1);
            CHECK(v.timestep <= 5);
            CHECK(std::abs(v.lines.back() - v.lines.front()) <= 3);
        }
    }
}

TEST_CASE("flip_circuit") {
    const auto g = logdepth_circuit(7, 4, 2, 3);
    const auto f = flip_circuit(g);
    CHECK(structurally_equal(flip_circuit(f), g));
    for (const auto &v : f.vertices()) {
        CHECK(v.lines.front() == 8 - g.vertex(v.id).lines.front());
        if (v.is_gate()) {
            CHECK(std::abs(v.lines.back() - v.lines.front()) <= 2);
        }
    }
    CHECK(validate_graph(f).ok());
    const auto one = with_basis_input(CircuitBuilder(1).gate(hadamard(), {1}).build(), "1");
    CHECK(structurally_equal(flip_circuit(one), one));
}

TEST_CASE("compose_graphs") {
    SUBCASE("bare wires") {
        const auto w = CircuitBuilder(1).build();
        const auto c = compose_graphs(w, w, line_wiring(w, w));
        CHECK(c.graph.size() == 2);
        CHECK(c.graph.edges().size() == 1);
        CHECK(validate_graph(c.graph).ok());
    }
    SUBCASE("vertex count after fusing") {
        const auto a = logdepth_circuit(4, 2, 1, 6);
        const auto b = aqft_circuit(4, 2);
        const auto c = compose_graphs(a, b, line_wiring(a, b));
        CHECK(c.graph.size() == a.size() + b.size() - 8);
        CHECK(validate_graph(c.graph).ok());
        CHECK(c.from_a.size() == a.size());
        CHECK(c.from_b.size() == b.size());
    }
    SUBCASE("identity attachment keeps the distribution") {
        const auto g = random_circuit(3, 5, 4, {8, true, true});
        CircuitBuilder idb(3);
        idb.gate(identity_channel(1), {2});
        const auto id = idb.build();
        const auto c = compose_graphs(g, id, line_wiring(g, id));
        const auto p = oracle_distribution(g);
        const auto q = oracle_distribution(c.graph);
        for (std::size_t i = 0; i < p.size(); ++i) {
            CHECK(std::abs(p[i] - q[i]) < 1e-12);
        }
    }
    SUBCASE("partial wiring appends the unwired lines") {
        const auto a = aqft_circuit(3, 2);
        const auto b = logdepth_circuit(2, 2, 1, 1);
        std::map<VertexId, VertexId> wiring{{a.outputs()[2], b.inputs()[0]}};
        const auto c = compose_graphs(a, b, wiring);
        CHECK(c.graph.n_qubits() == 4);
        CHECK(c.graph.size() == a.size() + b.size() - 2);
        CHECK(validate_graph(c.graph).ok());
    }
    SUBCASE("conflicts") {
        const auto a = CircuitBuilder(2).output(1, ket0_projector()).build();
        const auto b = CircuitBuilder(2).build();
        CHECK_THROWS_AS((void)compose_graphs(a, b, {{a.outputs()[0], b.inputs()[0]}}), WiringConflict);
        const auto a2 = CircuitBuilder(2).build();
        CHECK_THROWS_AS((void)compose_graphs(a2, b, {{a2.outputs()[0], b.inputs()[0]},
                                                     {a2.outputs()[1], b.inputs()[0]}}),
                        WiringConflict);
        CHECK_THROWS_AS((void)compose_graphs(a2, b, {{a2.inputs()[0], b.inputs()[0]}}), WiringConflict);
    }
}

TEST_CASE("circuit file format") {
    SUBCASE("round trip") {
        for (const auto &g : {aqft_circuit(8, 3), random_circuit(4, 6, 2, {12, true, true, true}),
                              with_basis_input(logdepth_circuit(5, 3, 2, 9), "10110")}) {
            const auto back = parse_circuit(serialize_circuit(g));
            CHECK(structurally_equal(back, g));
        }
    }
    SUBCASE("superoperator gate echoes its matrix") {
        const auto ad = amplitude_damping(0.25);
        CircuitBuilder b(1);
        b.gate(ChannelSpec::from_superoperator(ad.matrix(), 1, 1), {1});
        const auto text = serialize_circuit(b.build());
        const auto g = parse_circuit(text);
        const auto &m = g.vertex(1).channel().matrix();
        CHECK(g.vertex(1).channel().source() == ChannelSource::Superoperator);
        CHECK((m - ad.matrix()).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("explicit file") {
        const auto g = parse_circuit(R"json({
          "qubits": 2,
          "inputs": [{"line": 1, "state": "+"}],
          "gates": [{"gate": "U", "lines": [1, 2], "timestep": 1,
                     "matrix": [[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]]},
                    {"gate": "CPHASE(0.5)", "lines": [1, 2]},
                    {"gate": "KRAUS", "lines": [2], "operators": [[[1,0],[0,0.5]], [[0,[0.8660254037844386,0]],[0,0]]]}],
          "outputs": [{"line": 1, "effect": "0"}, {"line": 2, "effect": null}]
        })json");
        CHECK(g.n_qubits() == 2);
        CHECK(validate_graph(g).ok());
        CHECK(oracle_probability(g, {ket0_projector(), std::nullopt}) == doctest::Approx(0.5));
    }
    SUBCASE("malformed matrix row") {
        try {
            (void)parse_circuit(R"({"qubits": 1, "gates": [{"gate": "U", "lines": [1], "matrix": [[1, 0], [0]]}]})");
            FAIL("expected a parse error");
        } catch (const DimensionError &e) {
            CHECK(std::string(e.what()).find("row 1") != std::string::npos);
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS((void)parse_circuit(R"({"qubits": 1, "gates": [{"gate": "SWIRL", "lines": [1]}]})"),
                        UnknownGateName);
        try {
            (void)parse_circuit("{\n  \"qubits\": 1,\n  \"gates\": [,]\n}");
            FAIL("expected a parse error");
        } catch (const ParseError &e) {
            CHECK(e.line() == 3);
        }
        CHECK_THROWS_AS((void)parse_circuit(R"({"gates": []})"), ParseError);
        CHECK_THROWS_AS((void)parse_circuit(R"({"qubits": 1, "inputs": [{"line": 1, "state": "q"}]})"),
                        ParseError);
    }
}
