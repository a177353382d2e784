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

#include "tnqs/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>

#include "tnqs/errors.hpp"
#include "tnqs/rng.hpp"

namespace tnqs {

namespace {

EdgeLabel port_label(const CircuitGraph &g, VertexId v, PortDir dir, int index) {
    auto label = g.label_at({v, dir, index});
    if (!label) {
        throw GraphError("vertex " + std::to_string(v) + " has an unwired port");
    }
    return *label;
}

Matrix2 bit_projector(char c) { return c == '0' ? ket0_projector() : ket1_projector(); }

} // namespace

OutputAssignment OutputAssignment::from_graph(const CircuitGraph &g) {
    OutputAssignment a;
    for (VertexId v : g.outputs()) {
        a.effects.push_back(std::get<OutputVertex>(g.vertex(v).kind).effect);
    }
    return a;
}

OutputAssignment OutputAssignment::unspecified(const CircuitGraph &g) {
    OutputAssignment a;
    a.effects.resize(g.outputs().size());
    return a;
}

OutputAssignment OutputAssignment::from_bits(const CircuitGraph &g, const std::string &bits) {
    const auto outs = g.outputs();
    if (bits.size() != outs.size()) {
        throw ArityMismatch("outcome string has " + std::to_string(bits.size()) +
                            " characters for " + std::to_string(outs.size()) + " outputs");
    }
    OutputAssignment a;
    for (char c : bits) {
        if (c == '0' || c == '1') {
            a.effects.emplace_back(bit_projector(c));
        } else if (c == 'x' || c == '-') {
            a.effects.emplace_back(std::nullopt);
        } else {
            throw ArityMismatch(std::string("bad outcome character '") + c + "'");
        }
    }
    return a;
}

Simulator::Simulator(CircuitGraph g, Schedule s, EngineOptions opts)
    : graph_(std::move(g)), schedule_(std::move(s)), opts_(opts) {
    report_ = validate_schedule(schedule_, graph_, opts_.max_rank);
    if (!report_.feasible) {
        throw RankCeilingExceeded(report_.e_max, opts_.max_rank,
                                  "step " + std::to_string(report_.peak_step) + " has E^i = " +
                                      std::to_string(report_.e_max));
    }
    outputs_ = graph_.outputs();
    fixed_.resize(graph_.size());
    const bool force = opts_.allow_nonphysical;
    physical_ = !force;
    for (const auto &v : graph_.vertices()) {
        if (v.is_input()) {
            const auto label = port_label(graph_, v.id, PortDir::Out, 0);
            fixed_[static_cast<std::size_t>(v.id)] = std::make_shared<const OpTensor>(
                input_tensor(std::get<InputVertex>(v.kind).state, label, force));
        } else if (v.is_gate()) {
            std::vector<EdgeLabel> in;
            std::vector<EdgeLabel> out;
            for (int p = 0; p < v.in_ports(); ++p) {
                in.push_back(port_label(graph_, v.id, PortDir::In, p));
            }
            for (int p = 0; p < v.out_ports(); ++p) {
                out.push_back(port_label(graph_, v.id, PortDir::Out, p));
            }
            physical_ = physical_ && v.channel().physicality_checked();
            fixed_[static_cast<std::size_t>(v.id)] =
                std::make_shared<const OpTensor>(gate_tensor(v.channel(), in, out));
        }
    }
}

Simulator::TensorPtr Simulator::evaluate(const Operand &op,
                                         const std::vector<TensorPtr> &leaves) const {
    if (!op.is_step()) {
        return leaves[static_cast<std::size_t>(op.index)];
    }
    const auto &step = schedule_.steps[static_cast<std::size_t>(op.index)];
    TensorPtr left = evaluate(step.left, leaves);
    TensorPtr right = evaluate(step.right, leaves);
    auto result = std::make_shared<const OpTensor>(contract(*left, *right, {opts_.max_rank}));
    return result;
}

double Simulator::probability(const OutputAssignment &assign) const {
    if (assign.effects.size() != outputs_.size()) {
        throw ArityMismatch("assignment covers " + std::to_string(assign.effects.size()) +
                            " outputs, graph has " + std::to_string(outputs_.size()));
    }
    std::vector<TensorPtr> leaves = fixed_;
    for (std::size_t k = 0; k < outputs_.size(); ++k) {
        const VertexId v = outputs_[k];
        const auto label = port_label(graph_, v, PortDir::In, 0);
        const auto &effect = assign.effects[k];
        leaves[static_cast<std::size_t>(v)] = std::make_shared<const OpTensor>(
            effect ? povm_tensor(*effect, label, opts_.allow_nonphysical) : discard_tensor(label));
    }
    TensorPtr final_tensor;
    if (schedule_.steps.empty()) {
        final_tensor = leaves.front();
    } else {
        final_tensor =
            evaluate(Operand::step(static_cast<int>(schedule_.steps.size()) - 1), leaves);
    }
    const Complex value = final_tensor->value();
    if (physical_ && std::abs(value.imag()) > kRealityTol) {
        throw NonRealResult("final scalar has imaginary part " + std::to_string(value.imag()));
    }
    return value.real();
}

double Simulator::probability_of(const std::string &pattern) const {
    return probability(OutputAssignment::from_bits(graph_, pattern));
}

std::pair<double, double> Simulator::marginal(int target, const std::string &conditioning) const {
    const auto n = static_cast<int>(outputs_.size());
    if (target < 0 || target >= n) {
        throw ArityMismatch("target output " + std::to_string(target) + " out of range");
    }
    std::string pattern(static_cast<std::size_t>(n), 'x');
    for (std::size_t k = 0; k < conditioning.size() && k < pattern.size(); ++k) {
        pattern[k] = conditioning[k];
    }
    if (pattern[static_cast<std::size_t>(target)] != 'x' &&
        pattern[static_cast<std::size_t>(target)] != '-') {
        throw ArityMismatch("target output " + std::to_string(target) + " is conditioned");
    }
    pattern[static_cast<std::size_t>(target)] = '0';
    const double p0 = probability_of(pattern);
    pattern[static_cast<std::size_t>(target)] = '1';
    const double p1 = probability_of(pattern);
    return {p0, p1};
}

SampleRecord Simulator::sample_one(std::uint64_t seed, std::uint64_t shot) const {
    Rng rng = Rng::split(seed, shot);
    SampleRecord rec;
    rec.seed = seed;
    rec.shot = shot;
    const std::size_t n = outputs_.size();
    std::string pattern(n, 'x');
    double running = probability_of(pattern);
    const double total = running;
    for (std::size_t k = 0; k < n; ++k) {
        if (running < kDegenerateJoint) {
            throw DegenerateConditional("running joint " + std::to_string(running) +
                                        " before output " + std::to_string(k));
        }
        pattern[k] = '0';
        const double p0 = probability_of(pattern);
        double p1 = 0;
        if (opts_.explicit_p1) {
            pattern[k] = '1';
            p1 = probability_of(pattern);
        } else {
            p1 = running - p0;
        }
        const double c0 = std::clamp(p0 / running, 0.0, 1.0);
        const bool one = rng.uniform() >= c0;
        pattern[k] = one ? '1' : '0';
        rec.chain.push_back(one ? std::clamp(p1 / running, 0.0, 1.0) : c0);
        running = one ? p1 : p0;
    }
    rec.bits = pattern;
    double joint = total;
    for (double c : rec.chain) {
        joint *= c;
    }
    rec.joint = joint;
    return rec;
}

std::vector<SampleRecord> Simulator::sample(std::uint64_t shots, std::uint64_t seed) const {
    std::vector<SampleRecord> records(shots);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto count = static_cast<long long>(shots);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        try {
            records[static_cast<std::size_t>(i)] = sample_one(seed, static_cast<std::uint64_t>(i));
        } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return records;
}

double evaluate_probability(const CircuitGraph &g, const OutputAssignment &assign,
                            const Schedule &s, const EngineOptions &opts) {
    return Simulator(g, s, opts).probability(assign);
}

std::pair<double, double> marginal_distribution(const CircuitGraph &g, const Schedule &s,
                                                int target, const std::string &conditioning,
                                                const EngineOptions &opts) {
    return Simulator(g, s, opts).marginal(target, conditioning);
}

std::vector<SampleRecord> sample(const CircuitGraph &g, const Schedule &s, std::uint64_t shots,
                                 std::uint64_t seed, const EngineOptions &opts) {
    return Simulator(g, s, opts).sample(shots, seed);
}

std::string logical_bits(const CircuitGraph &g, const std::string &line_bits) {
    const auto outs = g.outputs();
    std::vector<std::pair<int, char>> keyed;
    for (std::size_t k = 0; k < outs.size() && k < line_bits.size(); ++k) {
        const int logical = g.vertex(outs[k]).logical_index;
        keyed.emplace_back(logical > 0 ? logical : static_cast<int>(k) + 1, line_bits[k]);
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto &x, const auto &y) { return x.first < y.first; });
    std::string out;
    for (const auto &[logical, c] : keyed) {
        out.push_back(c);
    }
    return out;
}

} // namespace tnqs
