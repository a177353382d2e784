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

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tnqs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;

/// Largest qubit count a channel may act on.
inline constexpr int kMaxChannelArity = 3;

/// Tolerance used for every physicality check (Hermiticity, trace, positivity).
inline constexpr double kPhysicalTol = 1e-9;

enum class ChannelSource { Unitary, Kraus, Superoperator };

/**
 * A linear map from arity_in to arity_out qubits, stored as its superoperator
 * matrix in the operator basis {|0><0|, |0><1|, |1><0|, |1><1|}:
 *
 *     matrix()(i, j) = tr(e_i^dagger G[e_j])
 *
 * Multi-qubit basis elements are tensor products with the first qubit most
 * significant, so index i = sum_t e_t * 4^(k-1-t). The Kraus operators (or the
 * unitary, stored as a single Kraus operator) are kept when known so that
 * independent simulators can apply the channel without going through the
 * superoperator.
 */
class ChannelSpec {
  public:
    static ChannelSpec from_unitary(const Matrix &u, bool force = false);
    static ChannelSpec from_kraus(std::vector<Matrix> ops, bool force = false);
    static ChannelSpec from_superoperator(Matrix m, int arity_in, int arity_out,
                                          bool force = false);

    [[nodiscard]] int arity_in() const noexcept { return arity_in_; }
    [[nodiscard]] int arity_out() const noexcept { return arity_out_; }
    [[nodiscard]] const Matrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] bool physicality_checked() const noexcept { return checked_; }
    [[nodiscard]] ChannelSource source() const noexcept { return source_; }
    /// Kraus operators; a unitary channel has exactly one. Empty for raw superoperators.
    [[nodiscard]] const std::vector<Matrix> &kraus() const noexcept { return kraus_; }

    /// Library name used by the circuit file format ("H", "R(3)", ...). Empty if anonymous.
    [[nodiscard]] const std::string &name() const noexcept { return name_; }
    [[nodiscard]] ChannelSpec named(std::string name) const;

  private:
    ChannelSpec() = default;

    int arity_in_ = 0;
    int arity_out_ = 0;
    Matrix matrix_;
    bool checked_ = false;
    ChannelSource source_ = ChannelSource::Superoperator;
    std::vector<Matrix> kraus_;
    std::string name_;
};

/// Superoperator matrix of rho -> sum_K K rho K^dagger.
[[nodiscard]] Matrix kraus_superoperator(const std::vector<Matrix> &ops);

/// True when the superoperator is trace preserving and its Choi matrix is PSD.
[[nodiscard]] bool is_cptp(const Matrix &superop, int arity_in, int arity_out,
                           double tol = kPhysicalTol);

[[nodiscard]] bool is_density_matrix(const Matrix2 &rho, double tol = kPhysicalTol);
[[nodiscard]] bool is_povm_element(const Matrix2 &e, double tol = kPhysicalTol);

// Gate library.

/// Phase of the distance-k controlled phase gate: Literal gives pi/2^k, Textbook 2pi/2^k.
enum class PhaseConvention { Literal, Textbook };

[[nodiscard]] double controlled_phase_angle(int k, PhaseConvention conv = PhaseConvention::Literal);

[[nodiscard]] Matrix hadamard_matrix();
[[nodiscard]] Matrix pauli_x_matrix();
[[nodiscard]] Matrix pauli_y_matrix();
[[nodiscard]] Matrix pauli_z_matrix();
[[nodiscard]] Matrix cphase_matrix(double theta);
[[nodiscard]] Matrix cnot_matrix();

[[nodiscard]] ChannelSpec hadamard();
[[nodiscard]] ChannelSpec pauli_x();
[[nodiscard]] ChannelSpec pauli_y();
[[nodiscard]] ChannelSpec pauli_z();
[[nodiscard]] ChannelSpec cnot();
/// diag(1, 1, 1, e^{i theta}).
[[nodiscard]] ChannelSpec cphase(double theta);
/// Controlled phase acting over qubit distance k >= 1.
[[nodiscard]] ChannelSpec controlled_phase(int k, PhaseConvention conv = PhaseConvention::Literal);
[[nodiscard]] ChannelSpec identity_channel(int qubits);
[[nodiscard]] ChannelSpec amplitude_damping(double gamma);
[[nodiscard]] ChannelSpec depolarizing(double p);

// Common single-qubit states and effects.
[[nodiscard]] Matrix2 ket0_projector();
[[nodiscard]] Matrix2 ket1_projector();
[[nodiscard]] Matrix2 plus_projector();
[[nodiscard]] Matrix2 minus_projector();
[[nodiscard]] Matrix2 maximally_mixed();

} // namespace tnqs
