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

#include "tnqs/op_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "contract_common.hpp"
#include "tnqs/errors.hpp"

namespace tnqs {

OpTensor::OpTensor() : data_{Complex{1.0, 0.0}} {}

OpTensor OpTensor::scalar(Complex value) { return OpTensor({}, {value}); }

OpTensor::OpTensor(std::vector<TensorIndex> indices, std::vector<Complex> data)
    : indices_(std::move(indices)), data_(std::move(data)) {
    for (std::size_t p = 1; p < indices_.size(); ++p) {
        if (!(indices_[p - 1].label < indices_[p].label)) {
            throw Error("tensor labels must be sorted and distinct");
        }
    }
    if (indices_.size() > 31 || data_.size() != detail::pow4(rank())) {
        throw Error("tensor data length " + std::to_string(data_.size()) +
                    " does not match rank " + std::to_string(indices_.size()));
    }
}

OpTensor OpTensor::from_unsorted(std::vector<TensorIndex> indices, std::vector<Complex> data) {
    const int r = static_cast<int>(indices.size());
    if (data.size() != detail::pow4(r)) {
        throw Error("tensor data length does not match rank");
    }
    std::vector<int> order(indices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return indices[x].label < indices[y].label; });
    if (std::is_sorted(indices.begin(), indices.end(),
                       [](const auto &x, const auto &y) { return x.label < y.label; })) {
        return OpTensor(std::move(indices), std::move(data));
    }
    std::vector<TensorIndex> sorted(indices.size());
    for (int p = 0; p < r; ++p) {
        sorted[p] = indices[order[p]];
    }
    // old stride of the index now at position p
    std::vector<std::size_t> old_stride(indices.size());
    for (int p = 0; p < r; ++p) {
        old_stride[p] = detail::pow4(r - 1 - order[p]);
    }
    std::vector<Complex> out(data.size());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        std::size_t src = 0;
        for (int p = 0; p < r; ++p) {
            const std::size_t digit = (idx >> (2 * (r - 1 - p))) & 3;
            src += digit * old_stride[p];
        }
        out[idx] = data[src];
    }
    return OpTensor(std::move(sorted), std::move(out));
}

Complex OpTensor::value() const {
    if (rank() != 0) {
        throw Error("value() called on a rank-" + std::to_string(rank()) + " tensor");
    }
    return data_.front();
}

Complex OpTensor::at(std::span<const int> digits) const {
    if (static_cast<int>(digits.size()) != rank()) {
        throw Error("wrong number of digits for tensor access");
    }
    std::size_t idx = 0;
    for (int d : digits) {
        idx = idx * 4 + static_cast<std::size_t>(d);
    }
    return data_[idx];
}

int OpTensor::find(EdgeLabel label) const noexcept {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), label,
                               [](const TensorIndex &t, EdgeLabel l) { return t.label < l; });
    if (it == indices_.end() || it->label != label) {
        return -1;
    }
    return static_cast<int>(it - indices_.begin());
}

OpTensor input_tensor(const Matrix2 &rho, EdgeLabel label, bool force) {
    if (!force && !is_density_matrix(rho)) {
        throw NonDensityMatrix("input state is not a density matrix");
    }
    // tr(e_i^dagger rho) with e_i = |a><b|, i = 2a + b, is rho(a, b).
    return OpTensor({{label, Side::Raise}}, {rho(0, 0), rho(0, 1), rho(1, 0), rho(1, 1)});
}

OpTensor povm_tensor(const Matrix2 &effect, EdgeLabel label, bool force) {
    if (!force && !is_povm_element(effect)) {
        throw NonPOVMElement("measurement operator is not a POVM element");
    }
    // tr(E |a><b|) = E(b, a).
    return OpTensor({{label, Side::Lower}},
                    {effect(0, 0), effect(1, 0), effect(0, 1), effect(1, 1)});
}

OpTensor discard_tensor(EdgeLabel label) {
    return OpTensor({{label, Side::Lower}}, {1.0, 0.0, 0.0, 1.0});
}

OpTensor gate_tensor(const ChannelSpec &channel, std::span<const EdgeLabel> in_labels,
                     std::span<const EdgeLabel> out_labels) {
    const int k_in = channel.arity_in();
    const int k_out = channel.arity_out();
    if (static_cast<int>(in_labels.size()) != k_in ||
        static_cast<int>(out_labels.size()) != k_out) {
        throw ArityMismatch("channel acts " + std::to_string(k_in) + "->" +
                            std::to_string(k_out) + " qubits but got " +
                            std::to_string(in_labels.size()) + " input and " +
                            std::to_string(out_labels.size()) + " output labels");
    }
    std::vector<TensorIndex> indices;
    indices.reserve(in_labels.size() + out_labels.size());
    for (auto l : in_labels) {
        indices.push_back({l, Side::Lower});
    }
    for (auto l : out_labels) {
        indices.push_back({l, Side::Raise});
    }
    const std::size_t n_out = detail::pow4(k_out);
    const std::size_t n_in = detail::pow4(k_in);
    std::vector<Complex> data(n_in * n_out);
    const Matrix &m = channel.matrix();
    for (std::size_t in = 0; in < n_in; ++in) {
        for (std::size_t out = 0; out < n_out; ++out) {
            data[in * n_out + out] =
                m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
        }
    }
    return OpTensor::from_unsorted(std::move(indices), std::move(data));
}

double ContractionShape::cost() const { return std::ldexp(1.0, 2 * (free + shared)); }

ContractionShape contraction_shape(const OpTensor &a, const OpTensor &b) {
    ContractionShape shape;
    for (const auto &ia : a.indices()) {
        const int pb = b.find(ia.label);
        if (pb < 0) {
            continue;
        }
        if (b.indices()[static_cast<std::size_t>(pb)].side == ia.side) {
            throw LabelSideMismatch("label " + std::to_string(ia.label.id) +
                                    " appears on the same side of both tensors");
        }
        ++shape.shared;
    }
    shape.free = a.rank() + b.rank() - 2 * shape.shared;
    return shape;
}

namespace detail {

PairLayout pair_layout(const OpTensor &a, const OpTensor &b, int max_rank) {
    const auto shape = contraction_shape(a, b);
    if (shape.free > max_rank) {
        throw RankCeilingExceeded(shape.free, max_rank, "contraction");
    }
    const auto sa = strides_of(a);
    const auto sb = strides_of(b);
    PairLayout layout;
    std::size_t pa = 0;
    std::size_t pb = 0;
    const auto ia = a.indices();
    const auto ib = b.indices();
    while (pa < ia.size() || pb < ib.size()) {
        if (pb == ib.size() || (pa < ia.size() && ia[pa].label < ib[pb].label)) {
            layout.result.push_back(ia[pa]);
            layout.result_stride_a.push_back(sa[pa]);
            layout.result_stride_b.push_back(0);
            ++pa;
        } else if (pa == ia.size() || ib[pb].label < ia[pa].label) {
            layout.result.push_back(ib[pb]);
            layout.result_stride_a.push_back(0);
            layout.result_stride_b.push_back(sb[pb]);
            ++pb;
        } else {
            layout.shared_stride_a.push_back(sa[pa]);
            layout.shared_stride_b.push_back(sb[pb]);
            ++pa;
            ++pb;
        }
    }
    return layout;
}

} // namespace detail

} // namespace tnqs
