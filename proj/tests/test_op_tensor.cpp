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
#include <complex>

#include "tnqs/errors.hpp"
#include "tnqs/circuit.hpp"
#include "tnqs/op_tensor.hpp"
#include "tnqs/rng.hpp"

using namespace tnqs;

namespace {

Matrix2 basis_op(int i) {
    Matrix2 e = Matrix2::Zero();
    e(i >> 1, i & 1) = 1;
    return e;
}

void check_vector(const OpTensor &t, const std::vector<Complex> &expected, double tol = 1e-15) {
    REQUIRE(t.data().size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(std::abs(t.data()[i] - expected[i]) < tol);
    }
}

OpTensor random_tensor(const std::vector<TensorIndex> &indices, Rng &rng) {
    std::vector<Complex> data(std::size_t{1} << (2 * indices.size()));
    for (auto &x : data) {
        x = Complex(rng.normal(), rng.normal());
    }
    return OpTensor::from_unsorted(indices, data);
}

} // namespace

TEST_CASE("operator basis is orthonormal") {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Complex ip = (basis_op(i).adjoint() * basis_op(j)).trace();
            CHECK(std::abs(ip - Complex(i == j ? 1.0 : 0.0)) < 1e-15);
        }
    }
}

TEST_CASE("input tensors") {
    check_vector(input_tensor(ket0_projector(), {0}), {1, 0, 0, 0});
    check_vector(input_tensor(maximally_mixed(), {0}), {0.5, 0, 0, 0.5});
    // tr(e_i^dagger rho) evaluated directly
    const Matrix2 plus = plus_projector();
    std::vector<Complex> expected;
    for (int i = 0; i < 4; ++i) {
        expected.push_back((basis_op(i).adjoint() * plus).trace());
    }
    check_vector(input_tensor(plus, {0}), expected);
    CHECK(input_tensor(plus, {3}).indices()[0].side == Side::Raise);

    Matrix2 bad = Matrix2::Zero();
    bad(0, 0) = 2;
    CHECK_THROWS_AS((void)input_tensor(bad, {0}), NonDensityMatrix);
    CHECK_NOTHROW((void)input_tensor(bad, {0}, true));
}

TEST_CASE("povm and discard tensors") {
    check_vector(povm_tensor(ket0_projector(), {0}), {1, 0, 0, 0});
    check_vector(povm_tensor(Matrix2::Identity(), {0}), {1, 0, 0, 1});
    const Matrix2 plus = plus_projector();
    std::vector<Complex> expected;
    for (int j = 0; j < 4; ++j) {
        expected.push_back((plus * basis_op(j)).trace());
    }
    check_vector(povm_tensor(plus, {0}), expected);
    CHECK(povm_tensor(plus, {0}).indices()[0].side == Side::Lower);
    check_vector(discard_tensor({7}), {1, 0, 0, 1});

    Matrix2 too_big = Matrix2::Identity() * 1.5;
    CHECK_THROWS_AS((void)povm_tensor(too_big, {0}), NonPOVMElement);

    // off-diagonal effect picks the transposed entry
    Matrix2 y = Matrix2::Zero();
    y(0, 1) = Complex(0, -0.25);
    y(1, 0) = Complex(0, 0.25);
    y += Matrix2::Identity() * 0.5;
    const auto t = povm_tensor(y, {0});
    CHECK(std::abs(t.data()[1] - y(1, 0)) < 1e-15);
    CHECK(std::abs(t.data()[2] - y(0, 1)) < 1e-15);
}

TEST_CASE("discard closes any input to one") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::Matrix2cd a;
        a << Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal()),
            Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal());
        Matrix2 rho = a * a.adjoint();
        rho /= rho.trace().real();
        const auto s = contract(input_tensor(rho, {0}), discard_tensor({0}));
        CHECK(s.rank() == 0);
        CHECK(std::abs(s.value() - Complex(1)) < 1e-14);
    }
    CHECK(std::abs(contract(input_tensor(ket0_projector(), {0}), povm_tensor(ket0_projector(), {0}))
                       .value() -
                   Complex(1)) < 1e-15);
}

TEST_CASE("gate tensors follow tr(e_out^dagger G[e_in])") {
    SUBCASE("identity is the Kronecker delta") {
        for (int k = 1; k <= 2; ++k) {
            std::vector<EdgeLabel> in;
            std::vector<EdgeLabel> out;
            for (int p = 0; p < k; ++p) {
                in.push_back({p});
                out.push_back({k + p});
            }
            const auto t = gate_tensor(identity_channel(k), in, out);
            const std::size_t dim = std::size_t{1} << (2 * k);
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t o = 0; o < dim; ++o) {
                    // in labels are more significant than out labels
                    CHECK(std::abs(t.data()[i * dim + o] - Complex(i == o ? 1.0 : 0.0)) < 1e-15);
                }
            }
        }
    }
    SUBCASE("hadamard entries") {
        const Matrix h = hadamard_matrix();
        const EdgeLabel in{0};
        const EdgeLabel out{1};
        const auto t = gate_tensor(hadamard(), std::span(&in, 1), std::span(&out, 1));
        CHECK(t.indices()[0].side == Side::Lower);
        CHECK(t.indices()[1].side == Side::Raise);
        for (int i = 0; i < 4; ++i) {
            for (int o = 0; o < 4; ++o) {
                const Complex expected =
                    (basis_op(o).adjoint() * h * basis_op(i) * h.adjoint()).trace();
                const int digits[2] = {i, o};
                CHECK(std::abs(t.at(digits) - expected) < 1e-15);
            }
        }
        const int zero[2] = {0, 0};
        CHECK(std::abs(t.at(zero) - Complex(0.5)) < 1e-15);
    }
    SUBCASE("controlled phase is diagonal with phases on coherences") {
        const double theta = controlled_phase_angle(2);
        const auto ch = controlled_phase(2);
        const Matrix &m = ch.matrix();
        const Eigen::VectorXcd u = cphase_matrix(theta).diagonal();
        for (int i = 0; i < 16; ++i) {
            for (int o = 0; o < 16; ++o) {
                if (i != o) {
                    CHECK(std::abs(m(o, i)) < 1e-15);
                }
            }
            // digit e_{a b} per qubit; row bits a, column bits b
            const int a = ((i >> 2) & 2) | ((i >> 1) & 1);
            const int b = ((i >> 1) & 2) | (i & 1);
            CHECK(std::abs(m(i, i) - u(a) * std::conj(u(b))) < 1e-15);
        }
        CHECK(std::abs(m(15, 15) - Complex(1)) < 1e-15);
        // e_1 x e_1 = |00><11| picks up exp(-i theta)
        CHECK(std::abs(m(5, 5) - std::exp(Complex(0, -theta))) < 1e-15);
    }
    SUBCASE("arity mismatch") {
        const EdgeLabel one[1] = {{0}};
        const EdgeLabel two[2] = {{1}, {2}};
        CHECK_THROWS_AS((void)gate_tensor(hadamard(), two, one), ArityMismatch);
    }
}

TEST_CASE("trace preservation through discards") {
    const EdgeLabel in[2] = {{0}, {1}};
    const EdgeLabel out[2] = {{2}, {3}};
    for (const auto &ch : {cnot(), controlled_phase(1), ChannelSpec::from_unitary(random_unitary(2, 9))}) {
        auto t = gate_tensor(ch, in, out);
        t = contract(t, discard_tensor({2}));
        t = contract(t, discard_tensor({3}));
        const auto expected = contract(discard_tensor({0}), discard_tensor({1}));
        REQUIRE(t.rank() == 2);
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(std::abs(t.data()[i] - expected.data()[i]) < 1e-12);
        }
    }
}

TEST_CASE("contraction shapes and errors") {
    const auto a = OpTensor({{{1}, Side::Raise}, {{2}, Side::Raise}}, std::vector<Complex>(16, 1));
    const auto b = OpTensor({{{2}, Side::Lower}, {{3}, Side::Lower}}, std::vector<Complex>(16, 1));
    const auto shape = contraction_shape(a, b);
    CHECK(shape.free == 2);
    CHECK(shape.shared == 1);
    CHECK(shape.cost() == doctest::Approx(64.0));
    CHECK_THROWS_AS((void)contract(a, a), LabelSideMismatch);
    CHECK_THROWS_AS((void)contract(a, b, {1}), RankCeilingExceeded);
    try {
        (void)contract(a, b, {1});
    } catch (const RankCeilingExceeded &e) {
        CHECK(e.rank() == 2);
    }
}

TEST_CASE("outer product with a scalar scales") {
    Rng rng(5);
    const auto t = random_tensor({{{4}, Side::Raise}, {{1}, Side::Lower}}, rng);
    const auto c = Complex(0.25, -2);
    const auto r = contract(t, OpTensor::scalar(c));
    REQUIRE(r.rank() == 2);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(std::abs(r.data()[i] - c * t.data()[i]) < 1e-15);
    }
    CHECK(r.indices()[0].label.id == 1);
}

TEST_CASE("from_unsorted permutes into canonical layout") {
    std::vector<Complex> data(16);
    for (int i = 0; i < 16; ++i) {
        data[static_cast<std::size_t>(i)] = Complex(i);
    }
    const auto t = OpTensor::from_unsorted({{{9}, Side::Raise}, {{2}, Side::Lower}}, data);
    CHECK(t.indices()[0].label.id == 2);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const int digits[2] = {b, a};
            CHECK(t.at(digits) == Complex(a * 4 + b));
        }
    }
    CHECK_THROWS_AS(OpTensor({{{2}, Side::Lower}, {{2}, Side::Raise}}, std::vector<Complex>(16)), Error);
    CHECK_THROWS_AS(OpTensor({{{2}, Side::Lower}}, std::vector<Complex>(3)), Error);
}

TEST_CASE("parallel kernel matches the serial reference") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        // random label pool split between the operands
        const int n_labels = static_cast<int>(rng.uniform_int(1, 9));
        std::vector<TensorIndex> ia;
        std::vector<TensorIndex> ib;
        for (int l = 0; l < n_labels; ++l) {
            const auto where = rng.uniform_int(0, 2);
            const Side side = rng.uniform() < 0.5 ? Side::Lower : Side::Raise;
            const Side other = side == Side::Lower ? Side::Raise : Side::Lower;
            const EdgeLabel label{static_cast<int>(rng.uniform_int(0, 1000)) * 16 + l};
            if (where == 0) {
                ia.push_back({label, side});
            } else if (where == 1) {
                ib.push_back({label, side});
            } else {
                ia.push_back({label, side});
                ib.push_back({label, other});
            }
        }
        if (ia.size() > 6 || ib.size() > 6) {
            continue;
        }
        const auto a = random_tensor(ia, rng);
        const auto b = random_tensor(ib, rng);
        const auto fast = contract(a, b);
        const auto slow = contract_reference(a, b);
        REQUIRE(fast.rank() == slow.rank());
        for (int i = 0; i < fast.rank(); ++i) {
            CHECK(fast.indices()[static_cast<std::size_t>(i)] == slow.indices()[static_cast<std::size_t>(i)]);
        }
        for (std::size_t i = 0; i < fast.data().size(); ++i) {
            CHECK(std::abs(fast.data()[i] - slow.data()[i]) < 1e-11);
        }
    }
}

TEST_CASE("large contraction takes the threaded path and still matches") {
    Rng rng(2);
    std::vector<TensorIndex> ia;
    std::vector<TensorIndex> ib;
    for (int l = 0; l < 5; ++l) {
        ia.push_back({{l}, Side::Raise});
    }
    for (int l = 3; l < 9; ++l) {
        ib.push_back({{l}, l < 5 ? Side::Lower : Side::Raise});
    }
    const auto a = random_tensor(ia, rng);
    const auto b = random_tensor(ib, rng);
    const auto fast = contract(a, b);
    const auto slow = contract_reference(a, b);
    CHECK(contraction_shape(a, b).cost() >= 65536);
    for (std::size_t i = 0; i < fast.data().size(); ++i) {
        CHECK(std::abs(fast.data()[i] - slow.data()[i]) < 1e-10);
    }
}
