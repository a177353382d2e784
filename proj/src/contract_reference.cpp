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

#include <map>
#include <vector>

#include "contract_common.hpp"
#include "tnqs/errors.hpp"
#include "tnqs/op_tensor.hpp"

namespace tnqs {

OpTensor contract_reference(const OpTensor &a, const OpTensor &b, const ContractOptions &opts) {
    const auto shape = contraction_shape(a, b);
    if (shape.free > opts.max_rank) {
        throw RankCeilingExceeded(shape.free, opts.max_rank, "contraction");
    }
    // Every label of either tensor, with the free ones flagged.
    std::map<EdgeLabel, bool> labels;
    for (const auto &i : a.indices()) {
        labels[i.label] = b.find(i.label) < 0;
    }
    for (const auto &i : b.indices()) {
        labels.emplace(i.label, a.find(i.label) < 0);
    }
    std::vector<EdgeLabel> all;
    std::vector<TensorIndex> result_indices;
    for (const auto &[label, is_free] : labels) {
        all.push_back(label);
        if (is_free) {
            const int pa = a.find(label);
            result_indices.push_back(
                pa >= 0 ? a.indices()[pa] : b.indices()[static_cast<std::size_t>(b.find(label))]);
        }
    }

    std::vector<Complex> out(detail::pow4(static_cast<int>(result_indices.size())), 0.0);
    std::vector<int> digit_of(all.size(), 0);
    std::vector<int> da(static_cast<std::size_t>(a.rank()));
    std::vector<int> db(static_cast<std::size_t>(b.rank()));
    const std::size_t total = detail::pow4(static_cast<int>(all.size()));
    for (std::size_t joint = 0; joint < total; ++joint) {
        std::size_t rest = joint;
        for (std::size_t p = all.size(); p-- > 0;) {
            digit_of[p] = static_cast<int>(rest & 3);
            rest >>= 2;
        }
        std::size_t out_idx = 0;
        std::size_t pa = 0;
        std::size_t pb = 0;
        for (std::size_t p = 0; p < all.size(); ++p) {
            const int ia = a.find(all[p]);
            const int ib = b.find(all[p]);
            if (ia >= 0) {
                da[pa++] = digit_of[p];
            }
            if (ib >= 0) {
                db[pb++] = digit_of[p];
            }
            if (ia < 0 || ib < 0) {
                out_idx = out_idx * 4 + static_cast<std::size_t>(digit_of[p]);
            }
        }
        out[out_idx] += a.at(da) * b.at(db);
    }
    return OpTensor(std::move(result_indices), std::move(out));
}

} // namespace tnqs
