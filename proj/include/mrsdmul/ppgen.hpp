// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "mrsdmul/digit.hpp"

namespace mrsd {

// A stored logic value with its polarity, sitting at bit position
// `column` (weight 2^column).
struct TypedBit {
    bool stored{false};
    Polarity polarity{Polarity::posibit};
    int column{0};
};

inline int typed_bit_value(const TypedBit& b) { return bit_value(b.polarity, b.stored); }

// Position of one stored operand bit. Digit k holds posibits at
// positions 4k..4k+3 (bit_index 0..3) and its negabit at 4k+4
// (bit_index 4), overlapping digit k+1's least significant posibit.
struct OperandBitRef {
    int digit{0};
    int bit_index{0}; // 0..3 posibit, 4 negabit
    int position{0};
    Polarity polarity{Polarity::posibit};
};

// The 5n stored bits of an n-digit operand, ordered digit-major
// (digit 0 posibits 0..3, digit 0 negabit, digit 1 ...). Every walk of
// operand bit pairs in this module uses this order, so symbolic
// profiles and concrete matrices always agree.
std::vector<OperandBitRef> operand_bit_layout(int digit_count);

bool stored_operand_bit(const MRSDNumber& x, const OperandBitRef& ref);

// The value-preserving product of two typed bits. Polarity follows the
// sign rule (PxP -> P, mixed -> N, NxN -> P); the stored output is the
// unique gate keeping value(out) = value(a) * value(b):
//   PxP: AND(p, q)   PxN: OR(NOT p, n)   NxN: NOR(n1, n2)
TypedBit product_bit(const TypedBit& a, const TypedBit& b);

struct ColumnCount {
    int pos{0};
    int neg{0};
    int height() const { return pos + neg; }
    bool operator==(const ColumnCount&) const = default;
};

// All (5n)^2 pairwise bit products of an n x n digit multiplication,
// bucketed by bit position 0..8n. The insertion order (a-bit major,
// b-bit minor, both in layout order) is part of the wiring contract.
class PPMatrix {
public:
    PPMatrix(int digit_count);

    int digit_count() const { return digits_; }
    const std::vector<std::vector<TypedBit>>& columns() const { return columns_; }
    std::vector<TypedBit>& column(int position) { return columns_.at(static_cast<std::size_t>(position)); }

    BigInt total_value() const;
    std::vector<ColumnCount> column_profile() const;
    std::size_t bit_count() const;

private:
    int digits_;
    std::vector<std::vector<TypedBit>> columns_;

    friend PPMatrix generate(const MRSDNumber&, const MRSDNumber&);
};

// Throws std::invalid_argument on mismatched operand widths.
PPMatrix generate(const MRSDNumber& a, const MRSDNumber& b);

// Per-column (pos, neg) counts of the initial partial product matrix,
// independent of operand values.
std::vector<ColumnCount> initial_profile(int digit_count);

} // namespace mrsd
