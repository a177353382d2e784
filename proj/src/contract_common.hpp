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

// Index bookkeeping shared by the contraction kernels.

#include <cstddef>
#include <vector>

#include "tnqs/op_tensor.hpp"

namespace tnqs::detail {

inline std::size_t pow4(int k) { return std::size_t{1} << (2 * k); }

/// Row-major stride of each index of a tensor.
inline std::vector<std::size_t> strides_of(const OpTensor &t) {
    const int r = t.rank();
    std::vector<std::size_t> s(static_cast<std::size_t>(r));
    std::size_t stride = 1;
    for (int p = r - 1; p >= 0; --p) {
        s[static_cast<std::size_t>(p)] = stride;
        stride *= 4;
    }
    return s;
}

struct PairLayout {
    std::vector<TensorIndex> result;           // sorted free indices
    std::vector<std::size_t> result_stride_a;  // stride in a of each result index (0 if from b)
    std::vector<std::size_t> result_stride_b;
    std::vector<std::size_t> shared_stride_a;  // per shared label
    std::vector<std::size_t> shared_stride_b;
};

/// Merges the sorted index lists of a and b. Throws LabelSideMismatch or RankCeilingExceeded.
PairLayout pair_layout(const OpTensor &a, const OpTensor &b, int max_rank);

} // namespace tnqs::detail
