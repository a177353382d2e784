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

#include "tnqs/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "tnqs/errors.hpp"
#include "tnqs/rng.hpp"

namespace tnqs {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

std::vector<int> bit_positions(int n, const std::vector<int> &lines) {
    std::vector<int> bits;
    for (int line : lines) {
        bits.push_back(n - line);
    }
    return bits;
}

// Applies a 2^k x 2^k operator to the given bits of every column of `state`.
void apply_rows(const Matrix &op, const std::vector<int> &bits, MatrixXcd &state) {
    const int k = static_cast<int>(bits.size());
    const long long local = 1LL << k;
    long long mask = 0;
    for (int b : bits) {
        mask |= 1LL << b;
    }
    std::vector<long long> offset(static_cast<std::size_t>(local), 0);
    for (long long j = 0; j < local; ++j) {
        for (int t = 0; t < k; ++t) {
            if ((j >> (k - 1 - t)) & 1) {
                offset[static_cast<std::size_t>(j)] |= 1LL << bits[static_cast<std::size_t>(t)];
            }
        }
    }
    std::vector<Complex> gathered(static_cast<std::size_t>(local));
    for (Eigen::Index col = 0; col < state.cols(); ++col) {
        for (long long base = 0; base < state.rows(); ++base) {
            if (base & mask) {
                continue;
            }
            for (long long j = 0; j < local; ++j) {
                gathered[static_cast<std::size_t>(j)] = state(base + offset[static_cast<std::size_t>(j)], col);
            }
            for (long long i = 0; i < local; ++i) {
                Complex acc = 0;
                for (long long j = 0; j < local; ++j) {
                    acc += op(i, j) * gathered[static_cast<std::size_t>(j)];
                }
                state(base + offset[static_cast<std::size_t>(i)], col) = acc;
            }
        }
    }
}

// rho -> op rho op^dagger on the given bits.
MatrixXcd conjugate_by(const Matrix &op, const std::vector<int> &bits, const MatrixXcd &rho) {
    MatrixXcd left = rho;
    apply_rows(op, bits, left);
    MatrixXcd adj = left.adjoint();
    apply_rows(op, bits, adj);
    return adj.adjoint();
}

// Applies a superoperator given in the |a><b| basis (digit 2a+b, first line most significant).
void apply_superoperator(const Matrix &m, const std::vector<int> &bits, MatrixXcd &rho) {
    const int k = static_cast<int>(bits.size());
    const long long local = 1LL << (2 * k);
    long long mask = 0;
    for (int b : bits) {
        mask |= 1LL << b;
    }
    // For each local digit string, the (row, col) offsets it sets.
    std::vector<long long> row_off(static_cast<std::size_t>(local), 0);
    std::vector<long long> col_off(static_cast<std::size_t>(local), 0);
    for (long long d = 0; d < local; ++d) {
        for (int t = 0; t < k; ++t) {
            const long long digit = (d >> (2 * (k - 1 - t))) & 3;
            if (digit & 2) {
                row_off[static_cast<std::size_t>(d)] |= 1LL << bits[static_cast<std::size_t>(t)];
            }
            if (digit & 1) {
                col_off[static_cast<std::size_t>(d)] |= 1LL << bits[static_cast<std::size_t>(t)];
            }
        }
    }
    std::vector<Complex> gathered(static_cast<std::size_t>(local));
    for (long long r = 0; r < rho.rows(); ++r) {
        if (r & mask) {
            continue;
        }
        for (long long c = 0; c < rho.cols(); ++c) {
            if (c & mask) {
                continue;
            }
            for (long long d = 0; d < local; ++d) {
                gathered[static_cast<std::size_t>(d)] =
                    rho(r + row_off[static_cast<std::size_t>(d)], c + col_off[static_cast<std::size_t>(d)]);
            }
            for (long long o = 0; o < local; ++o) {
                Complex acc = 0;
                for (long long d = 0; d < local; ++d) {
                    acc += m(o, d) * gathered[static_cast<std::size_t>(d)];
                }
                rho(r + row_off[static_cast<std::size_t>(o)], c + col_off[static_cast<std::size_t>(o)]) = acc;
            }
        }
    }
}

std::optional<Eigen::Vector2cd> pure_vector(const Matrix2 &rho) {
    const double purity = (rho * rho).trace().real();
    if (std::abs(purity - 1.0) > 1e-12 || std::abs(rho.trace().real() - 1.0) > 1e-12) {
        return std::nullopt;
    }
    const int col = rho.col(0).norm() >= rho.col(1).norm() ? 0 : 1;
    Eigen::Vector2cd v = rho.col(col);
    return v / v.norm();
}

std::vector<const Vertex *> gates_in_order(const CircuitGraph &g) {
    std::vector<const Vertex *> gates;
    for (const auto &v : g.vertices()) {
        if (v.is_gate()) {
            gates.push_back(&v);
        }
    }
    std::stable_sort(gates.begin(), gates.end(),
                     [](const Vertex *a, const Vertex *b) { return a->timestep < b->timestep; });
    return gates;
}

std::vector<Matrix2> graph_inputs(const CircuitGraph &g) {
    std::vector<Matrix2> states;
    for (VertexId v : g.inputs()) {
        states.push_back(std::get<InputVertex>(g.vertex(v).kind).state);
    }
    return states;
}

bool unitary_only(const CircuitGraph &g) {
    for (const auto &v : g.vertices()) {
        if (v.is_gate() &&
            !(v.channel().source() != ChannelSource::Superoperator && v.channel().kraus().size() == 1 &&
              v.channel().arity_in() == v.channel().arity_out())) {
            return false;
        }
    }
    return true;
}

VectorXcd run_pure(const CircuitGraph &g, const std::vector<Eigen::Vector2cd> &kets) {
    const int n = g.n_qubits();
    VectorXcd psi = VectorXcd::Ones(1);
    for (const auto &ket : kets) {
        VectorXcd next(psi.size() * 2);
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            next(2 * i) = psi(i) * ket(0);
            next(2 * i + 1) = psi(i) * ket(1);
        }
        psi = std::move(next);
    }
    MatrixXcd state = psi;
    for (const Vertex *v : gates_in_order(g)) {
        apply_rows(v->channel().kraus().front(), bit_positions(n, v->lines), state);
    }
    return state.col(0);
}

MatrixXcd run_density(const CircuitGraph &g, const std::vector<Matrix2> &states) {
    const int n = g.n_qubits();
    MatrixXcd rho = MatrixXcd::Ones(1, 1);
    for (const auto &s : states) {
        MatrixXcd next(rho.rows() * 2, rho.cols() * 2);
        for (Eigen::Index r = 0; r < rho.rows(); ++r) {
            for (Eigen::Index c = 0; c < rho.cols(); ++c) {
                next.block<2, 2>(2 * r, 2 * c) = rho(r, c) * s;
            }
        }
        rho = std::move(next);
    }
    for (const Vertex *v : gates_in_order(g)) {
        const auto &ch = v->channel();
        const auto bits = bit_positions(n, v->lines);
        if (ch.arity_in() != ch.arity_out()) {
            throw TooLarge("oracle cannot apply a channel that changes the qubit count");
        }
        if (ch.source() == ChannelSource::Superoperator) {
            apply_superoperator(ch.matrix(), bits, rho);
        } else {
            MatrixXcd acc = MatrixXcd::Zero(rho.rows(), rho.cols());
            for (const auto &k : ch.kraus()) {
                acc += conjugate_by(k, bits, rho);
            }
            rho = std::move(acc);
        }
    }
    return rho;
}

} // namespace

Eigen::MatrixXcd DenseState::density() const {
    if (pure) {
        return amplitudes * amplitudes.adjoint();
    }
    return rho;
}

DenseState oracle_run(const CircuitGraph &g, const std::optional<std::vector<Matrix2>> &inputs,
                      const OracleOptions &opts) {
    const int n = g.n_qubits();
    const auto states = inputs ? *inputs : graph_inputs(g);
    if (static_cast<int>(states.size()) != n) {
        throw ArityMismatch("oracle needs one input state per line");
    }
    DenseState out;
    out.n = n;
    std::vector<Eigen::Vector2cd> kets;
    bool pure = !opts.force_density && unitary_only(g);
    for (const auto &s : states) {
        auto ket = pure_vector(s);
        pure = pure && ket.has_value();
        if (ket) {
            kets.push_back(*ket);
        }
    }
    if (pure && n <= kOraclePureMax) {
        out.pure = true;
        out.amplitudes = run_pure(g, kets);
        return out;
    }
    if (n > kOracleDensityMax) {
        throw TooLarge("oracle handles at most " + std::to_string(kOracleDensityMax) +
                       " qubits on the density path and " + std::to_string(kOraclePureMax) +
                       " on the pure path, got " + std::to_string(n));
    }
    out.rho = run_density(g, states);
    return out;
}

std::vector<double> oracle_distribution(const CircuitGraph &g, const OracleOptions &opts) {
    const auto state = oracle_run(g, std::nullopt, opts);
    std::vector<double> p;
    if (state.pure) {
        for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
            p.push_back(std::norm(state.amplitudes(i)));
        }
    } else {
        for (Eigen::Index i = 0; i < state.rho.rows(); ++i) {
            p.push_back(state.rho(i, i).real());
        }
    }
    return p;
}

double oracle_probability(const CircuitGraph &g, const std::vector<std::optional<Matrix2>> &effects,
                          const OracleOptions &opts) {
    const int n = g.n_qubits();
    if (static_cast<int>(effects.size()) != n) {
        throw ArityMismatch("oracle needs one effect slot per line");
    }
    const auto state = oracle_run(g, std::nullopt, opts);
    MatrixXcd rho = state.pure ? MatrixXcd(state.amplitudes) : state.rho;
    for (int line = 1; line <= n; ++line) {
        const auto &e = effects[static_cast<std::size_t>(line - 1)];
        if (e) {
            apply_rows(*e, {n - line}, rho);
        }
    }
    if (state.pure) {
        return (state.amplitudes.adjoint() * rho.col(0))(0).real();
    }
    return rho.trace().real();
}

double pure_trace_distance(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    // Lagrange identity: |a|^2 |b|^2 - |<a|b>|^2 = 1/2 sum_ij |a_i b_j - a_j b_i|^2
    double gap = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        for (Eigen::Index j = i + 1; j < a.size(); ++j) {
            gap += std::norm(a(i) * b(j) - a(j) * b(i));
        }
    }
    return std::sqrt(gap / (a.squaredNorm() * b.squaredNorm()));
}

double aqft_error(int n, int m, const AqftInput &input) {
    if (n > 10) {
        throw TooLarge("aqft_error supports n <= 10, got " + std::to_string(n));
    }
    const auto exact = aqft_circuit(n, n - 1);
    const auto approx = aqft_circuit(n, m);
    VectorXcd psi;
    if (const auto *basis = std::get_if<std::uint64_t>(&input)) {
        psi = VectorXcd::Zero(1LL << n);
        psi(static_cast<Eigen::Index>(*basis)) = 1;
    } else {
        Rng rng(std::get<RandomInput>(input).seed);
        psi.resize(1LL << n);
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            psi(i) = Complex(rng.normal(), rng.normal());
        }
        psi /= psi.norm();
    }
    MatrixXcd a = psi;
    MatrixXcd b = psi;
    for (const Vertex *v : gates_in_order(exact)) {
        apply_rows(v->channel().kraus().front(), bit_positions(n, v->lines), a);
    }
    for (const Vertex *v : gates_in_order(approx)) {
        apply_rows(v->channel().kraus().front(), bit_positions(n, v->lines), b);
    }
    return pure_trace_distance(a.col(0), b.col(0));
}

} // namespace tnqs
