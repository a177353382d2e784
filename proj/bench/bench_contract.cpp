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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "tnqs/engine.hpp"
#include "tnqs/op_tensor.hpp"

namespace {

using namespace tnqs;

OpTensor random_tensor(const std::vector<TensorIndex> &indices, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist;
    std::vector<Complex> data(std::size_t{1} << (2 * indices.size()));
    for (auto &x : data) {
        x = {dist(gen), dist(gen)};
    }
    return OpTensor::from_unsorted(indices, std::move(data));
}

// a: free labels [0, f) and shared [f, f+s) raised; b: shared lowered and free [f+s, 2f+s).
std::pair<OpTensor, OpTensor> operands(int free_each, int shared) {
    std::vector<TensorIndex> ia, ib;
    for (int i = 0; i < free_each; ++i) {
        ia.push_back({EdgeLabel{i}, Side::Raise});
        ib.push_back({EdgeLabel{free_each + shared + i}, Side::Raise});
    }
    for (int i = 0; i < shared; ++i) {
        ia.push_back({EdgeLabel{free_each + i}, Side::Raise});
        ib.push_back({EdgeLabel{free_each + i}, Side::Lower});
    }
    return {random_tensor(ia, 1), random_tensor(ib, 2)};
}

void BM_ContractOmp(benchmark::State &state) {
    const auto [a, b] = operands(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(contract(a, b));
    }
    state.counters["cost"] = contraction_shape(a, b).cost();
}

void BM_ContractReference(benchmark::State &state) {
    const auto [a, b] = operands(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(contract_reference(a, b));
    }
    state.counters["cost"] = contraction_shape(a, b).cost();
}

void kernel_args(benchmark::internal::Benchmark *b) {
    for (int f : {2, 3, 4}) {
        for (int s : {1, 2, 3}) {
            b->Args({f, s});
        }
    }
}

void BM_AqftProbability(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    const std::string zeros(static_cast<std::size_t>(n), '0');
    const auto g = with_basis_input(aqft_circuit(n, m), zeros);
    const Simulator sim(g, aqft_schedule(g));
    const auto assign = OutputAssignment::from_bits(g, zeros);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim.probability(assign));
    }
}

} // namespace

BENCHMARK(BM_ContractOmp)->Apply(kernel_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ContractReference)->Apply(kernel_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AqftProbability)->Args({8, 3})->Args({16, 3})->Args({16, 4})->Args({32, 3})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
