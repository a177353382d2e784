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
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "tnqs/circuit.hpp"

namespace tnqs {

inline constexpr int kOraclePureMax = 12;
inline constexpr int kOracleDensityMax = 6;

/// Dense result of running a circuit. Line 1 is the most significant bit.
struct DenseState {
    int n = 0;
    bool pure = false;
    Eigen::VectorXcd amplitudes; // pure path
    Eigen::MatrixXcd rho;        // density path

    [[nodiscard]] Eigen::MatrixXcd density() const;
};

struct OracleOptions {
    bool force_density = false;
};

/// Runs the circuit by direct matrix action, gates in timestep order.
[[nodiscard]] DenseState oracle_run(const CircuitGraph &g,
                                    const std::optional<std::vector<Matrix2>> &inputs = std::nullopt,
                                    const OracleOptions &opts = {});

/// Computational-basis probabilities, index bit n-1 = line 1.
[[nodiscard]] std::vector<double> oracle_distribution(const CircuitGraph &g,
                                                      const OracleOptions &opts = {});

/// tr((E_1 x ... x E_n) rho_out), an unset effect meaning identity.
[[nodiscard]] double oracle_probability(const CircuitGraph &g,
                                        const std::vector<std::optional<Matrix2>> &effects,
                                        const OracleOptions &opts = {});

/// Basis-state index or seed of a random pure state.
struct RandomInput {
    std::uint64_t seed = 0;
};
using AqftInput = std::variant<std::uint64_t, RandomInput>;

/// Trace distance between the exact QFT and aqft(n, m) outputs on one input.
[[nodiscard]] double aqft_error(int n, int m, const AqftInput &input);

/// Trace distance between two pure states.
[[nodiscard]] double pure_trace_distance(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);

} // namespace tnqs
