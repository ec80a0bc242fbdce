// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include "mrsdmul/ppgen.hpp"

#include <stdexcept>

namespace mrsd {

std::vector<OperandBitRef> operand_bit_layout(int digit_count)
{
    if (digit_count < 1)
        throw std::invalid_argument("operand_bit_layout: digit count must be >= 1");
    std::vector<OperandBitRef> out;
    out.reserve(static_cast<std::size_t>(5 * digit_count));
    for (int k = 0; k < digit_count; ++k) {
        for (int i = 0; i < 4; ++i)
            out.push_back({k, i, 4 * k + i, Polarity::posibit});
        out.push_back({k, 4, 4 * k + 4, Polarity::negabit});
    }
    return out;
}

bool stored_operand_bit(const MRSDNumber& x, const OperandBitRef& ref)
{
    const MRSDigit& d = x.digit(ref.digit);
    return ref.bit_index == 4 ? d.negabit_stored() : d.posibit(ref.bit_index);
}

TypedBit product_bit(const TypedBit& a, const TypedBit& b)
{
    TypedBit out;
    out.column = a.column + b.column;
    const bool a_pos = a.polarity == Polarity::posibit;
    const bool b_pos = b.polarity == Polarity::posibit;
    if (a_pos && b_pos) {
        out.polarity = Polarity::posibit;
        out.stored = a.stored && b.stored;
    } else if (!a_pos && !b_pos) {
        out.polarity = Polarity::posibit;
        out.stored = !(a.stored || b.stored); // NOR
    } else {
        const bool p = a_pos ? a.stored : b.stored;
        const bool n = a_pos ? b.stored : a.stored;
        out.polarity = Polarity::negabit;
        out.stored = !p || n;
    }
    return out;
}

PPMatrix::PPMatrix(int digit_count) : digits_(digit_count)
{
    if (digit_count < 1)
        throw std::invalid_argument("PPMatrix: digit count must be >= 1");
    columns_.resize(static_cast<std::size_t>(8 * digit_count + 1));
}

BigInt PPMatrix::total_value() const
{
    BigInt acc = 0;
    for (const auto& col : columns_)
        for (const auto& bit : col)
            acc += BigInt(typed_bit_value(bit)) << bit.column;
    return acc;
}

std::vector<ColumnCount> PPMatrix::column_profile() const
{
    std::vector<ColumnCount> profile(columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c)
        for (const auto& bit : columns_[c]) {
            if (bit.polarity == Polarity::posibit)
                ++profile[c].pos;
            else
                ++profile[c].neg;
        }
    return profile;
}

std::size_t PPMatrix::bit_count() const
{
    std::size_t n = 0;
    for (const auto& col : columns_)
        n += col.size();
    return n;
}

PPMatrix generate(const MRSDNumber& a, const MRSDNumber& b)
{
    if (a.digit_count() != b.digit_count())
        throw std::invalid_argument("generate: operand digit counts differ");
    const auto layout = operand_bit_layout(a.digit_count());
    PPMatrix m(a.digit_count());
    for (const auto& ra : layout) {
        const TypedBit ba{stored_operand_bit(a, ra), ra.polarity, ra.position};
        for (const auto& rb : layout) {
            const TypedBit bb{stored_operand_bit(b, rb), rb.polarity, rb.position};
            const TypedBit p = product_bit(ba, bb);
            m.columns_[static_cast<std::size_t>(p.column)].push_back(p);
        }
    }
    return m;
}

std::vector<ColumnCount> initial_profile(int digit_count)
{
    const auto layout = operand_bit_layout(digit_count);
    std::vector<ColumnCount> profile(static_cast<std::size_t>(8 * digit_count + 1));
    for (const auto& ra : layout)
        for (const auto& rb : layout) {
            const bool mixed = ra.polarity != rb.polarity;
            auto& cc = profile[static_cast<std::size_t>(ra.position + rb.position)];
            if (mixed)
                ++cc.neg;
            else
                ++cc.pos;
        }
    return profile;
}

} // namespace mrsd
