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

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>

#include "support.hpp"
#include "tnqs/engine.hpp"
#include "tnqs/errors.hpp"
#include "tnqs/oracle.hpp"

using namespace tnqs;
using tnqs::testing::bits_of;
using tnqs::testing::kron_density;

namespace {

CircuitGraph fig1() {
    CircuitBuilder b(2);
    b.input(1, plus_projector()).input(2, ket0_projector()).gate(cnot(), {1, 2});
    b.output(1, ket0_projector()).output(2, std::nullopt);
    return b.build();
}

double chi_square_p_value(const std::map<std::string, int> &counts, const std::vector<double> &expected,
                          int n, int shots) {
    double stat = 0;
    int bins = 0;
    for (unsigned x = 0; x < expected.size(); ++x) {
        const double e = expected[x] * shots;
        if (e < 1e-12) {
            CHECK(counts.count(bits_of(x, n)) == 0);
            continue;
        }
        const auto it = counts.find(bits_of(x, n));
        const double o = it == counts.end() ? 0.0 : it->second;
        stat += (o - e) * (o - e) / e;
        ++bins;
    }
    if (bins < 2) {
        return 1.0;
    }
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(bins - 1), stat));
}

} // namespace

TEST_CASE("figure one probability") {
    const auto g = fig1();
    // tr((|0><0| x I) U (rho1 x rho2) U^dagger) by Kronecker products
    const Eigen::MatrixXcd rho = kron_density(g);
    const Eigen::MatrixXcd proj = tnqs::testing::embed(ket0_projector(), {1}, 2);
    const double expected = (proj * rho).trace().real();
    CHECK(std::abs(expected - 0.5) < 1e-12);
    const double p = evaluate_probability(g, OutputAssignment::from_graph(g), sweep_schedule(g));
    CHECK(std::abs(p - expected) < 1e-12);
}

TEST_CASE("unmeasured outputs give total probability one") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_circuit(4, 6, seed, {12, true, true, true});
        CHECK(std::abs(evaluate_probability(g, OutputAssignment::unspecified(g), sweep_schedule(g)) - 1) < 1e-12);
    }
}

TEST_CASE("aqft(4,3) on |0000>") {
    const auto g = with_basis_input(aqft_circuit(4, 3), "0000");
    const double p = evaluate_probability(g, OutputAssignment::from_bits(g, "0000"), aqft_schedule(g));
    CHECK(std::abs(p - oracle_distribution(g)[0]) < 1e-12);
    CHECK(std::abs(p - 1.0 / 16) < 1e-12);
}

TEST_CASE("engine matches the oracle on random circuits") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int n = 1 + static_cast<int>(seed % 6);
        const auto g = random_circuit(n, 8, seed, {12, true, true, seed % 3 == 0});
        const auto expected = oracle_distribution(g);
        const Simulator sim(g, tnqs::testing::cheapest_schedule(g));
        for (unsigned x = 0; x < (1U << n); ++x) {
            CHECK(std::abs(sim.probability(OutputAssignment::from_bits(g, bits_of(x, n))) - expected[x]) < 1e-9);
        }
    }
}

TEST_CASE("general effects") {
    const auto g = random_circuit(3, 5, 21, {10, true, true});
    const std::vector<std::optional<Matrix2>> effects{plus_projector(), std::nullopt, minus_projector()};
    const OutputAssignment assign{effects};
    CHECK(std::abs(evaluate_probability(g, assign, sweep_schedule(g)) - oracle_probability(g, effects)) < 1e-12);
}

TEST_CASE("schedule independence") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const int n = 2 + static_cast<int>(seed % 4);
        const auto g = random_circuit(n, 6, seed, {10, true, true, true});
        const auto assign = OutputAssignment::from_bits(g, bits_of(static_cast<unsigned>(seed) % (1U << n), n));
        const double p1 = evaluate_probability(g, assign, sweep_schedule(g));
        const double p2 = evaluate_probability(g, assign, reversed_sweep_schedule(g));
        const double p3 = evaluate_probability(g, assign, random_schedule(g, seed));
        CHECK(std::abs(p1 - p2) < 1e-10);
        CHECK(std::abs(p1 - p3) < 1e-10);
    }
}

TEST_CASE("marginals") {
    SUBCASE("bare wire on |1>") {
        const auto g = with_basis_input(CircuitBuilder(1).build(), "1");
        const auto [p0, p1] = marginal_distribution(g, sweep_schedule(g), 0);
        CHECK(p0 == doctest::Approx(0.0));
        CHECK(p1 == doctest::Approx(1.0));
    }
    SUBCASE("Hadamard on |0>") {
        CircuitBuilder b(1);
        b.gate(hadamard(), {1});
        const auto g = b.build();
        const auto [p0, p1] = marginal_distribution(g, sweep_schedule(g), 0);
        CHECK(std::abs(p0 - 0.5) < 1e-12);
        CHECK(std::abs(p1 - 0.5) < 1e-12);
    }
    SUBCASE("conditioned marginals on aqft(4,2) from |0101>") {
        const auto g = with_basis_input(aqft_circuit(4, 2), "0101");
        const auto dist = oracle_distribution(g);
        const Simulator sim(g, aqft_schedule(g));
        for (int k = 0; k < 4; ++k) {
            for (unsigned prefix = 0; prefix < (1U << k); ++prefix) {
                const std::string cond = k == 0 ? std::string() : bits_of(prefix, k);
                double want0 = 0;
                double want1 = 0;
                for (unsigned x = 0; x < 16; ++x) {
                    const auto bits = bits_of(x, 4);
                    if (bits.substr(0, static_cast<std::size_t>(k)) == cond) {
                        (bits[static_cast<std::size_t>(k)] == '0' ? want0 : want1) += dist[x];
                    }
                }
                const auto [p0, p1] = sim.marginal(k, cond);
                CHECK(std::abs(p0 - want0) < 1e-9);
                CHECK(std::abs(p1 - want1) < 1e-9);
                if (want0 + want1 > 0) {
                    CHECK(std::abs(p0 / (p0 + p1) - want0 / (want0 + want1)) < 1e-9);
                }
            }
        }
    }
    SUBCASE("normalization") {
        const auto g = random_circuit(4, 6, 77, {12, true, true});
        const Simulator sim(g, sweep_schedule(g));
        const auto [a0, a1] = sim.marginal(0);
        CHECK(std::abs(a0 + a1 - 1) < 1e-9);
        const auto [b0, b1] = sim.marginal(2, "10");
        CHECK(std::abs(b0 + b1 - sim.probability(OutputAssignment::from_bits(g, "10xx"))) < 1e-9);
        CHECK_THROWS_AS((void)sim.marginal(1, "10"), ArityMismatch);
        CHECK_THROWS_AS((void)sim.marginal(9), ArityMismatch);
    }
}

TEST_CASE("sampling") {
    SUBCASE("basis input on bare wires") {
        const auto g = with_basis_input(CircuitBuilder(2).build(), "01");
        for (const auto &r : sample(g, sweep_schedule(g), 20, 5)) {
            CHECK(r.bits == "01");
            CHECK(r.joint == doctest::Approx(1.0));
        }
    }
    SUBCASE("determinism and chain consistency") {
        const auto g = random_circuit(5, 6, 12, {12, true, true});
        const Simulator sim(g, sweep_schedule(g));
        const auto a = sim.sample(50, 99);
        const auto b = sim.sample(50, 99);
        REQUIRE(a.size() == 50);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].bits == b[i].bits);
            CHECK(a[i].chain == b[i].chain);
            CHECK(a[i].shot == i);
            const double joint = sim.probability(OutputAssignment::from_bits(g, a[i].bits));
            double product = 1;
            for (double c : a[i].chain) {
                product *= c;
            }
            CHECK(std::abs(product - joint) < 1e-9);
        }
        // shot streams do not depend on the batch size
        const auto single = sim.sample_one(99, 17);
        CHECK(single.bits == a[17].bits);
        CHECK(sim.sample(0, 1).empty());
    }
    SUBCASE("explicit p1 draws the same bits") {
        const auto g = random_circuit(4, 5, 3, {10, true, true});
        EngineOptions opts;
        opts.explicit_p1 = true;
        const auto a = sample(g, sweep_schedule(g), 30, 4);
        const auto b = sample(g, sweep_schedule(g), 30, 4, opts);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].bits == b[i].bits);
        }
    }
    SUBCASE("aqft(4,2) on |0000> passes chi-square") {
        const auto g = with_basis_input(aqft_circuit(4, 2), "0000");
        const int shots = 4096;
        std::map<std::string, int> counts;
        for (const auto &r : sample(g, aqft_schedule(g), shots, 2024)) {
            ++counts[r.bits];
        }
        CHECK(chi_square_p_value(counts, oracle_distribution(g), 4, shots) > 0.01);
    }
    SUBCASE("vanishing total probability") {
        CircuitBuilder b(1);
        b.gate(ChannelSpec::from_kraus({Matrix::Zero(2, 2)}, true), {1});
        const auto g = b.build();
        CHECK_THROWS_AS((void)sample(g, sweep_schedule(g), 1, 1), DegenerateConditional);
    }
}

TEST_CASE("assignments and limits") {
    const auto g = aqft_circuit(4, 2);
    CHECK_THROWS_AS((void)OutputAssignment::from_bits(g, "010"), ArityMismatch);
    CHECK_THROWS_AS((void)OutputAssignment::from_bits(g, "01z0"), ArityMismatch);
    CHECK(OutputAssignment::from_bits(g, "0-x1").effects[1] == std::nullopt);
    EngineOptions tight;
    tight.max_rank = 4;
    CHECK_THROWS_AS(Simulator(g, aqft_schedule(g), tight), RankCeilingExceeded);
    CHECK(logical_bits(g, "0011") == "1100");
    CHECK(logical_bits(CircuitBuilder(3).build(), "011") == "011");
}

TEST_CASE("non-physical components are allowed with the flag") {
    Matrix2 rho;
    rho << 0.5, Complex(0, 1), 0, 0.5;
    CircuitBuilder b(1);
    b.input(1, rho);
    const auto g = b.build();
    CHECK_THROWS_AS(Simulator(g, sweep_schedule(g)), NonDensityMatrix);
    EngineOptions loose;
    loose.allow_nonphysical = true;
    Matrix2 effect;
    effect << 0, 1, 0, 0;
    const OutputAssignment assign{{effect}};
    // tr(E rho) = rho(1, 0) = 0
    CHECK(std::abs(Simulator(g, sweep_schedule(g), loose).probability(assign)) < 1e-15);
    Matrix2 effect2;
    effect2 << 0, 0, 1, 0;
    // tr(E rho) = rho(0, 1), purely imaginary; no reality check without physicality
    CHECK(Simulator(g, sweep_schedule(g), loose).probability({{effect2}}) == doctest::Approx(0.0));
}
