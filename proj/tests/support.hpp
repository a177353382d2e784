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

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "tnqs/circuit.hpp"
#include "tnqs/schedule.hpp"

namespace tnqs::testing {

inline std::string bits_of(unsigned x, int n) {
    std::string bits;
    for (int l = 0; l < n; ++l) {
        bits.push_back(((x >> (n - 1 - l)) & 1U) ? '1' : '0');
    }
    return bits;
}

/// Full 2^n operator acting as `op` on `lines` (first listed line most significant).
inline Eigen::MatrixXcd embed(const Matrix &op, const std::vector<int> &lines, int n) {
    const long long dim = 1LL << n;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    long long mask = 0;
    for (int l : lines) {
        mask |= 1LL << (n - l);
    }
    auto local = [&](long long x) {
        long long idx = 0;
        for (int l : lines) {
            idx = (idx << 1) | ((x >> (n - l)) & 1);
        }
        return idx;
    };
    for (long long r = 0; r < dim; ++r) {
        for (long long c = 0; c < dim; ++c) {
            if ((r & ~mask) == (c & ~mask)) {
                full(r, c) = op(local(r), local(c));
            }
        }
    }
    return full;
}

/// Output density matrix by Kronecker products; Kraus and unitary gates only.
inline Eigen::MatrixXcd kron_density(const CircuitGraph &g) {
    const int n = g.n_qubits();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Ones(1, 1);
    for (VertexId v : g.inputs()) {
        const Matrix2 s = std::get<InputVertex>(g.vertex(v).kind).state;
        Eigen::MatrixXcd next(rho.rows() * 2, rho.cols() * 2);
        for (Eigen::Index r = 0; r < rho.rows(); ++r) {
            for (Eigen::Index c = 0; c < rho.cols(); ++c) {
                next.block<2, 2>(2 * r, 2 * c) = rho(r, c) * s;
            }
        }
        rho = next;
    }
    std::vector<const Vertex *> gates;
    for (const auto &v : g.vertices()) {
        if (v.is_gate()) {
            gates.push_back(&v);
        }
    }
    std::stable_sort(gates.begin(), gates.end(),
                     [](const Vertex *a, const Vertex *b) { return a->timestep < b->timestep; });
    for (const Vertex *v : gates) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
        for (const auto &k : v->channel().kraus()) {
            const Eigen::MatrixXcd full = embed(k, v->lines, n);
            out += full * rho * full.adjoint();
        }
        rho = out;
    }
    return rho;
}

/// Lowest-cost schedule among the sweeps and a few random forests.
/// Inputs by line, then gates by timestep, then outputs: a state-evolution order.
inline Schedule time_ordered_schedule(const CircuitGraph &g) {
    std::vector<VertexId> order;
    for (const auto &v : g.vertices()) {
        order.push_back(v.id);
    }
    auto rank = [&](VertexId id) {
        const auto &v = g.vertices()[static_cast<std::size_t>(id)];
        const int phase = v.is_input() ? 0 : (v.is_gate() ? 1 : 2);
        return std::tuple(phase, v.is_gate() ? v.timestep : 0, v.lines.front(), id);
    };
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return rank(a) < rank(b); });
    return accretion_schedule(order);
}

inline Schedule cheapest_schedule(const CircuitGraph &g) {
    std::vector<Schedule> candidates{sweep_schedule(g), sweep_schedule(g, SweepDirection::BottomUp),
                                     time_ordered_schedule(g)};
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        candidates.push_back(random_schedule(g, seed));
    }
    std::size_t best = 0;
    double best_cost = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double cost = validate_schedule(candidates[i], g, 64).cost_estimate;
        if (i == 0 || cost < best_cost) {
            best = i;
            best_cost = cost;
        }
    }
    return candidates[best];
}

} // namespace tnqs::testing
