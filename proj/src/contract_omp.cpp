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

#include <algorithm>
#include <cstddef>
#include <vector>

#include "contract_common.hpp"
#include "tnqs/op_tensor.hpp"

namespace tnqs {

namespace {

// Offsets into a and b for every value of a contiguous run of result digits.
struct DigitTable {
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;
};

DigitTable digit_table(const std::vector<std::size_t> &stride_a,
                       const std::vector<std::size_t> &stride_b, std::size_t first,
                       std::size_t last) {
    const int k = static_cast<int>(last - first);
    DigitTable t;
    t.a.assign(detail::pow4(k), 0);
    t.b.assign(detail::pow4(k), 0);
    for (std::size_t idx = 0; idx < t.a.size(); ++idx) {
        for (int p = 0; p < k; ++p) {
            const std::size_t digit = (idx >> (2 * (k - 1 - p))) & 3;
            t.a[idx] += digit * stride_a[first + static_cast<std::size_t>(p)];
            t.b[idx] += digit * stride_b[first + static_cast<std::size_t>(p)];
        }
    }
    return t;
}

// Below this many multiply-adds the kernel stays on one thread.
constexpr double kParallelThreshold = 1 << 16;

} // namespace

OpTensor contract(const OpTensor &a, const OpTensor &b, const ContractOptions &opts) {
    const auto layout = detail::pair_layout(a, b, opts.max_rank);
    const std::size_t n_free = layout.result.size();
    const std::size_t n_shared = layout.shared_stride_a.size();

    const std::size_t n_lo = std::min<std::size_t>(n_free, (n_free + 1) / 2);
    const std::size_t n_hi = n_free - n_lo;
    const auto hi = digit_table(layout.result_stride_a, layout.result_stride_b, 0, n_hi);
    const auto lo = digit_table(layout.result_stride_a, layout.result_stride_b, n_hi, n_free);
    const auto sh = digit_table(layout.shared_stride_a, layout.shared_stride_b, 0, n_shared);

    const std::size_t hi_count = hi.a.size();
    const std::size_t lo_count = lo.a.size();
    const std::size_t sh_count = sh.a.size();
    std::vector<Complex> out(hi_count * lo_count);

    // std::complex is layout-compatible with double[2].
    const auto *pa = reinterpret_cast<const double *>(a.data().data());
    const auto *pb = reinterpret_cast<const double *>(b.data().data());
    auto *po = reinterpret_cast<double *>(out.data());
    const auto hi_n = static_cast<long long>(hi_count);
    const bool parallel = static_cast<double>(out.size()) * static_cast<double>(sh_count) >=
                          kParallelThreshold;

#pragma omp parallel for schedule(static) if (parallel)
    for (long long h = 0; h < hi_n; ++h) {
        const std::size_t base_a = hi.a[static_cast<std::size_t>(h)];
        const std::size_t base_b = hi.b[static_cast<std::size_t>(h)];
        double *row = po + 2 * static_cast<std::size_t>(h) * lo_count;
        for (std::size_t l = 0; l < lo_count; ++l) {
            const std::size_t oa = base_a + lo.a[l];
            const std::size_t ob = base_b + lo.b[l];
            double re = 0.0;
            double im = 0.0;
            for (std::size_t s = 0; s < sh_count; ++s) {
                const double *x = pa + 2 * (oa + sh.a[s]);
                const double *y = pb + 2 * (ob + sh.b[s]);
                re += x[0] * y[0] - x[1] * y[1];
                im += x[0] * y[1] + x[1] * y[0];
            }
            row[2 * l] = re;
            row[2 * l + 1] = im;
        }
    }
    return OpTensor(layout.result, std::move(out));
}

} // namespace tnqs
