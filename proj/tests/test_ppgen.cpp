// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "mrsdmul/ppgen.hpp"

using namespace mrsd;

namespace {

TypedBit P(bool stored, int col = 0) { return {stored, Polarity::posibit, col}; }
TypedBit N(bool stored, int col = 0) { return {stored, Polarity::negabit, col}; }

} // namespace

TEST_CASE("product bit examples")
{
    CHECK(typed_bit_value(product_bit(P(1), P(1))) == 1);
    CHECK(product_bit(P(1), P(1)).polarity == Polarity::posibit);

    const TypedBit pn = product_bit(P(1), N(0));
    CHECK(pn.polarity == Polarity::negabit);
    CHECK(pn.stored == false);
    CHECK(typed_bit_value(pn) == -1);

    const TypedBit nn = product_bit(N(0), N(0));
    CHECK(nn.polarity == Polarity::posibit);
    CHECK(typed_bit_value(nn) == 1);

    const TypedBit zn = product_bit(P(0), N(0));
    CHECK(zn.polarity == Polarity::negabit);
    CHECK(zn.stored == true);
    CHECK(typed_bit_value(zn) == 0);
}

TEST_CASE("product bit gates are the unique value-preserving ones")
{
    for (Polarity pa : {Polarity::posibit, Polarity::negabit})
        for (Polarity pb : {Polarity::posibit, Polarity::negabit})
            for (int sa = 0; sa < 2; ++sa)
                for (int sb = 0; sb < 2; ++sb) {
                    const TypedBit a{sa != 0, pa, 2};
                    const TypedBit b{sb != 0, pb, 5};
                    const TypedBit p = product_bit(a, b);
                    CHECK(p.column == 7);
                    CHECK(typed_bit_value(p) == typed_bit_value(a) * typed_bit_value(b));
                    CHECK((p.polarity == Polarity::negabit) == (pa != pb));
                }
}

TEST_CASE("operand bit layout")
{
    for (int n : {1, 2, 4}) {
        const auto layout = operand_bit_layout(n);
        CHECK(layout.size() == static_cast<std::size_t>(5 * n));
        for (const auto& ref : layout) {
            if (ref.bit_index == 4) {
                CHECK(ref.polarity == Polarity::negabit);
                CHECK(ref.position == 4 * ref.digit + 4);
            } else {
                CHECK(ref.polarity == Polarity::posibit);
                CHECK(ref.position == 4 * ref.digit + ref.bit_index);
            }
        }
    }
}

TEST_CASE("generation conserves the product exactly")
{
    // Exhaustive over all 1024 one-digit pairs.
    for (unsigned pa = 0; pa < 32; ++pa)
        for (unsigned pb = 0; pb < 32; ++pb) {
            const MRSDNumber a(std::vector<MRSDigit>{MRSDigit::from_bits(static_cast<std::uint8_t>(pa))});
            const MRSDNumber b(std::vector<MRSDigit>{MRSDigit::from_bits(static_cast<std::uint8_t>(pb))});
            const PPMatrix m = generate(a, b);
            CHECK(m.total_value() == a.value() * b.value());
            CHECK(m.bit_count() == 25);
        }

    auto rng = make_stream(3, 0);
    for (int n : {1, 2, 4})
        for (int i = 0; i < 10000 / n; ++i) {
            const MRSDNumber a = MRSDNumber::random(n, rng);
            const MRSDNumber b = MRSDNumber::random(n, rng);
            CHECK(generate(a, b).total_value() == a.value() * b.value());
        }

    CHECK_THROWS_AS(generate(MRSDNumber::zero(1), MRSDNumber::zero(2)), std::invalid_argument);
}

TEST_CASE("polarity rule closes over generated matrices")
{
    auto rng = make_stream(5, 0);
    const MRSDNumber a = MRSDNumber::random(2, rng);
    const MRSDNumber b = MRSDNumber::random(2, rng);
    const PPMatrix m = generate(a, b);
    const auto layout = operand_bit_layout(2);
    std::size_t idx = 0;
    std::vector<std::size_t> cursor(m.columns().size(), 0);
    for (const auto& ra : layout)
        for (const auto& rb : layout) {
            const auto col = static_cast<std::size_t>(ra.position + rb.position);
            const TypedBit& bit = m.columns()[col][cursor[col]++];
            CHECK((bit.polarity == Polarity::negabit) == (ra.polarity != rb.polarity));
            ++idx;
        }
    CHECK(idx == 100);
}

TEST_CASE("column profile of the one-digit matrix")
{
    // Counted independently over the 25 bit-position pairs.
    std::vector<ColumnCount> expected(9);
    const int positions[5] = {0, 1, 2, 3, 4};
    for (int i : positions)
        for (int j : positions) {
            const bool a_neg = i == 4;
            const bool b_neg = j == 4;
            if (a_neg != b_neg)
                ++expected[static_cast<std::size_t>(i + j)].neg;
            else
                ++expected[static_cast<std::size_t>(i + j)].pos;
        }
    CHECK(initial_profile(1) == expected);
    CHECK(expected[0] == ColumnCount{1, 0});
    CHECK(expected[4] == ColumnCount{3, 2});
    CHECK(expected[7] == ColumnCount{0, 2});
    CHECK(expected[8] == ColumnCount{1, 0});

    auto rng = make_stream(6, 0);
    for (int n : {1, 2, 4}) {
        const MRSDNumber a = MRSDNumber::random(n, rng);
        const MRSDNumber b = MRSDNumber::random(n, rng);
        CHECK(generate(a, b).column_profile() == initial_profile(n));
        int total = 0;
        for (const auto& cc : initial_profile(n))
            total += cc.height();
        CHECK(total == 25 * n * n);
    }
}
