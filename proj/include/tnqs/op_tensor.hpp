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

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "tnqs/channel.hpp"

namespace tnqs {

/// Position in the single-qubit operator basis: 0 = |0><0|, 1 = |0><1|, 2 = |1><0|, 3 = |1><1|.
struct BasisIndex {
    std::uint8_t value = 0;
    auto operator<=>(const BasisIndex &) const = default;
};

/// Identifies one wire of a circuit graph.
struct EdgeLabel {
    int id = 0;
    auto operator<=>(const EdgeLabel &) const = default;
};

/// Lower: the tensor consumes the wire (input side). Raise: the tensor produces it (output side).
enum class Side : std::uint8_t { Lower, Raise };

struct TensorIndex {
    EdgeLabel label;
    Side side = Side::Lower;
    bool operator==(const TensorIndex &) const = default;
};

/// Default maximum tensor rank (4^14 complex entries, about 4.3 GB).
inline constexpr int kDefaultMaxRank = 14;

struct ContractOptions {
    int max_rank = kDefaultMaxRank;
};

/**
 * Dense complex tensor over 4-valued operator-basis indices.
 *
 * Indices are kept sorted by label id and the data is row-major over that
 * order (first index most significant). Values are immutable once built.
 */
class OpTensor {
  public:
    /// Rank-0 tensor holding 1.
    OpTensor();
    static OpTensor scalar(Complex value);

    /// Indices must be sorted by label id and distinct; data.size() must be 4^rank.
    OpTensor(std::vector<TensorIndex> indices, std::vector<Complex> data);

    /// Accepts indices in any order and permutes data into canonical layout.
    static OpTensor from_unsorted(std::vector<TensorIndex> indices, std::vector<Complex> data);

    [[nodiscard]] int rank() const noexcept { return static_cast<int>(indices_.size()); }
    [[nodiscard]] std::span<const TensorIndex> indices() const noexcept { return indices_; }
    [[nodiscard]] std::span<const Complex> data() const noexcept { return data_; }
    [[nodiscard]] Complex value() const;
    /// Entry for one basis digit per index, in index order.
    [[nodiscard]] Complex at(std::span<const int> digits) const;
    /// Position of a label in indices(), or -1.
    [[nodiscard]] int find(EdgeLabel label) const noexcept;

  private:
    std::vector<TensorIndex> indices_;
    std::vector<Complex> data_;
};

/// T^i = tr(e_i^dagger rho). Throws NonDensityMatrix unless force is set.
[[nodiscard]] OpTensor input_tensor(const Matrix2 &rho, EdgeLabel label, bool force = false);

/// T_j = tr(E e_j). Throws NonPOVMElement unless force is set.
[[nodiscard]] OpTensor povm_tensor(const Matrix2 &effect, EdgeLabel label, bool force = false);

/// T_j = tr(e_j) = (1, 0, 0, 1).
[[nodiscard]] OpTensor discard_tensor(EdgeLabel label);

/// Superoperator entries with inputs lowered and outputs raised.
[[nodiscard]] OpTensor gate_tensor(const ChannelSpec &channel, std::span<const EdgeLabel> in_labels,
                                   std::span<const EdgeLabel> out_labels);

struct ContractionShape {
    int free = 0;   // indices of the result
    int shared = 0; // indices summed over
    [[nodiscard]] double cost() const; // 4^(free + shared)
};

/// Counts free and shared indices, checking sides of shared labels.
[[nodiscard]] ContractionShape contraction_shape(const OpTensor &a, const OpTensor &b);

/// Sums over shared labels; disjoint label sets give the outer product.
/// Parallelised over result entries with OpenMP.
[[nodiscard]] OpTensor contract(const OpTensor &a, const OpTensor &b,
                                const ContractOptions &opts = {});

/// Serial enumeration over every joint assignment. Kept as the test reference for contract().
[[nodiscard]] OpTensor contract_reference(const OpTensor &a, const OpTensor &b,
                                          const ContractOptions &opts = {});

} // namespace tnqs
