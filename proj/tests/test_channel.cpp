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

#include "tnqs/channel.hpp"
#include "tnqs/errors.hpp"

using namespace tnqs;

TEST_CASE("unitary channels carry their Kraus form") {
    const auto h = hadamard();
    CHECK(h.arity_in() == 1);
    CHECK(h.arity_out() == 1);
    CHECK(h.physicality_checked());
    CHECK(h.name() == "H");
    CHECK(h.source() == ChannelSource::Unitary);
    REQUIRE(h.kraus().size() == 1);
    CHECK(h.matrix().rows() == 4);
    CHECK(cnot().matrix().rows() == 16);
    CHECK(is_cptp(cnot().matrix(), 2, 2));
}

TEST_CASE("non-physical channels need the force flag") {
    Matrix not_unitary = Matrix::Identity(2, 2);
    not_unitary(0, 0) = 2;
    CHECK_THROWS_AS((void)ChannelSpec::from_unitary(not_unitary), NonPhysicalChannel);
    const auto forced = ChannelSpec::from_unitary(not_unitary, true);
    CHECK_FALSE(forced.physicality_checked());

    Matrix transpose_map = Matrix::Zero(4, 4);
    transpose_map(0, 0) = 1;
    transpose_map(1, 2) = 1;
    transpose_map(2, 1) = 1;
    transpose_map(3, 3) = 1;
    CHECK_FALSE(is_cptp(transpose_map, 1, 1));
    CHECK_THROWS_AS((void)ChannelSpec::from_superoperator(transpose_map, 1, 1), NonPhysicalChannel);
    CHECK_NOTHROW((void)ChannelSpec::from_superoperator(transpose_map, 1, 1, true));
    CHECK_THROWS_AS((void)ChannelSpec::from_superoperator(Matrix::Identity(4, 4), 2, 2), ArityMismatch);
}

TEST_CASE("Kraus channels") {
    const auto ad = amplitude_damping(0.3);
    CHECK(ad.source() == ChannelSource::Kraus);
    CHECK(ad.kraus().size() == 2);
    CHECK(is_cptp(ad.matrix(), 1, 1));
    CHECK(is_cptp(depolarizing(0.4).matrix(), 1, 1));
    std::vector<Matrix> short_set{Matrix::Identity(2, 2) * 0.5};
    CHECK_THROWS_AS((void)ChannelSpec::from_kraus(short_set), NonPhysicalChannel);
    CHECK_THROWS_AS((void)ChannelSpec::from_kraus({}), ArityMismatch);
}

TEST_CASE("controlled phase conventions") {
    using std::numbers::pi;
    CHECK(controlled_phase_angle(1) == doctest::Approx(pi / 2));
    CHECK(controlled_phase_angle(3) == doctest::Approx(pi / 8));
    CHECK(controlled_phase_angle(1, PhaseConvention::Textbook) == doctest::Approx(pi));
    CHECK(controlled_phase_angle(2, PhaseConvention::Textbook) == doctest::Approx(pi / 2));
    const auto r = controlled_phase(2);
    CHECK(r.name() == "R(2)");
    const Matrix u = r.kraus().front();
    CHECK(std::abs(u(3, 3) - std::exp(Complex(0, pi / 4))) < 1e-15);
    CHECK(std::abs(u(0, 0) - Complex(1)) < 1e-15);
    CHECK_THROWS_AS((void)controlled_phase(0), ArityMismatch);
}

TEST_CASE("state and effect checks") {
    CHECK(is_density_matrix(plus_projector()));
    CHECK(is_density_matrix(maximally_mixed()));
    CHECK_FALSE(is_density_matrix(Matrix2::Identity()));
    CHECK(is_povm_element(Matrix2::Identity()));
    CHECK(is_povm_element(minus_projector()));
    CHECK_FALSE(is_povm_element(Matrix2::Identity() * -0.1));
}
