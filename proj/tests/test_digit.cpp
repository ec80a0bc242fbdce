// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <set>

#include "mrsdmul/digit.hpp"
#include "mrsdmul/ppgen.hpp"

using namespace mrsd;

namespace {

MRSDNumber from_digits(std::initializer_list<int> values)
{
    return MRSDNumber::from_digit_values(std::vector<int>(values));
}

// Independent value oracle: sum the 5n stored bits at their bit
// weights instead of going through digit_value.
BigInt bitwise_value(const MRSDNumber& x)
{
    BigInt acc = 0;
    for (const auto& ref : operand_bit_layout(x.digit_count())) {
        const int stored = stored_operand_bit(x, ref) ? 1 : 0;
        const int v = ref.polarity == Polarity::posibit ? stored : stored - 1;
        acc += BigInt(v) << ref.position;
    }
    return acc;
}

} // namespace

TEST_CASE("digit value per stored pattern")
{
    CHECK(MRSDigit::from_bits(0b10000).value() == 0);
    CHECK(MRSDigit::from_bits(0b00000).value() == -16);
    CHECK(MRSDigit::from_bits(0b11111).value() == 15);
    CHECK(MRSDigit::from_bits(0b01111).value() == -1);
    CHECK_THROWS_AS(MRSDigit::from_bits(32), std::invalid_argument);
}

TEST_CASE("digit patterns biject onto [-16, 15]")
{
    std::set<int> seen;
    for (unsigned bits = 0; bits < 32; ++bits)
        seen.insert(MRSDigit::from_bits(static_cast<std::uint8_t>(bits)).value());
    CHECK(seen.size() == 32);
    CHECK(*seen.begin() == -16);
    CHECK(*seen.rbegin() == 15);
    for (int v = -16; v <= 15; ++v)
        CHECK(MRSDigit::from_value(v).value() == v);
}

TEST_CASE("number value")
{
    CHECK(from_digits({-16}).value() == -16);
    CHECK(from_digits({15, 15}).value() == 255);
    CHECK(from_digits({-16, -16}).value() == -272);

    auto rng = make_stream(7, 0);
    for (int n : {1, 2, 4, 8})
        for (int i = 0; i < 200; ++i) {
            const MRSDNumber x = MRSDNumber::random(n, rng);
            CHECK(x.value() == bitwise_value(x));
        }
}

TEST_CASE("dynamic range")
{
    CHECK(MRSDNumber::dynamic_range(1) == std::pair<BigInt, BigInt>(-16, 15));
    CHECK(MRSDNumber::dynamic_range(2) == std::pair<BigInt, BigInt>(-272, 255));

    // Brute-force oracle over per-digit extremes.
    for (int n : {1, 2, 3, 4}) {
        BigInt lo = 0;
        BigInt hi = 0;
        BigInt weight = 1;
        for (int k = 0; k < n; ++k) {
            lo += BigInt(-16) * weight;
            hi += BigInt(15) * weight;
            weight *= 16;
        }
        CHECK(MRSDNumber::dynamic_range(n) == std::pair<BigInt, BigInt>(lo, hi));
    }
    CHECK(MRSDNumber::dynamic_range(4).first == -69904);
    CHECK(MRSDNumber::dynamic_range(4).second == 65535);
    CHECK_THROWS_AS(MRSDNumber::dynamic_range(0), std::invalid_argument);

    // Exhaustive for two digits: no encoding escapes the interval and
    // both ends are reached.
    BigInt seen_lo = 0;
    BigInt seen_hi = 0;
    for (unsigned d0 = 0; d0 < 32; ++d0)
        for (unsigned d1 = 0; d1 < 32; ++d1) {
            const MRSDNumber x(std::vector<MRSDigit>{
                MRSDigit::from_bits(static_cast<std::uint8_t>(d0)),
                MRSDigit::from_bits(static_cast<std::uint8_t>(d1))});
            seen_lo = std::min(seen_lo, x.value());
            seen_hi = std::max(seen_hi, x.value());
        }
    CHECK(seen_lo == -272);
    CHECK(seen_hi == 255);
}

TEST_CASE("canonical encoding")
{
    CHECK(MRSDNumber::encode(0, 1).digit(0).bits() == 0b10000);
    CHECK(MRSDNumber::encode(255, 2).digit_values() == std::vector<int>{15, 15});
    CHECK(MRSDNumber::encode(-272, 2).digit_values() == std::vector<int>{-16, -16});
    CHECK_THROWS_AS(MRSDNumber::encode(256, 2), std::out_of_range);
    CHECK_THROWS_AS(MRSDNumber::encode(-273, 2), std::out_of_range);

    for (int n : {1, 2}) {
        const auto [lo, hi] = MRSDNumber::dynamic_range(n);
        for (BigInt v = lo; v <= hi; ++v)
            CHECK(MRSDNumber::encode(v, n).value() == v);
    }

    auto rng = make_stream(11, 0);
    for (int n : {4, 8}) {
        const auto [lo, hi] = MRSDNumber::dynamic_range(n);
        const BigInt span = hi - lo + 1;
        for (int i = 0; i < 100000; ++i) {
            BigInt r = 0;
            for (int w = 0; w < n; ++w)
                r = (r << 16) | BigInt(rng() & 0xffffu);
            const BigInt v = lo + r % span;
            CHECK(MRSDNumber::encode(v, n).value() == v);
        }
    }
}

TEST_CASE("random numbers are reproducible")
{
    // Golden patterns for the documented generator: one mt19937_64
    // draw per digit, low five bits kept, engine seeded by mix_seed.
    CHECK(mix_seed(42, 0) == 0xbdd732262feb6e95ull);
    CHECK(mix_seed(42, 1) == 0x28efe333b266f103ull);

    auto s0 = make_stream(42, 0);
    const MRSDNumber x0 = MRSDNumber::random(2, s0);
    CHECK(x0.digit(0).bits() == 25);
    CHECK(x0.digit(1).bits() == 5);
    CHECK(x0.value() == -167);

    auto s1 = make_stream(42, 1);
    const MRSDNumber x1 = MRSDNumber::random(2, s1);
    CHECK(x1.digit(0).bits() == 18);
    CHECK(x1.digit(1).bits() == 13);
    CHECK(x1.value() == -46);

    // Same algorithm spelled out against the raw engine.
    std::mt19937_64 raw(mix_seed(42, 0));
    CHECK((raw() & 31u) == 25);
    CHECK((raw() & 31u) == 5);

    auto a = make_stream(9, 3);
    auto b = make_stream(9, 3);
    for (int i = 0; i < 50; ++i)
        CHECK(MRSDNumber::random(3, a) == MRSDNumber::random(3, b));
}

TEST_CASE("random digit values are uniform")
{
    auto rng = make_stream(1, 0);
    std::array<int, 32> counts{};
    const int n = 100000;
    for (int i = 0; i < n; ++i)
        ++counts[static_cast<std::size_t>(MRSDNumber::random(1, rng).digit(0).value() + 16)];
    const double expected = n / 32.0;
    double chi2 = 0;
    for (int c : counts)
        chi2 += (c - expected) * (c - expected) / expected;
    // 31 degrees of freedom; 99.99th percentile is about 66.
    CHECK(chi2 < 70.0);
}
