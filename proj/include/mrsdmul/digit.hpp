// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mrsd {

using BigInt = boost::multiprecision::cpp_int;

// Two bit flavors make up the redundant encoding. A posibit with stored
// value s is worth s; a negabit is inverted-encoded and worth s - 1.
enum class Polarity : std::uint8_t { posibit, negabit };

inline int bit_value(Polarity p, bool stored)
{
    return p == Polarity::posibit ? (stored ? 1 : 0) : (stored ? 0 : -1);
}

inline char polarity_char(Polarity p) { return p == Polarity::posibit ? 'P' : 'N'; }

// One radix-16 digit: four posibits with weights 1,2,4,8 plus one
// inverted negabit with weight 16, covering [-16, 15]. All 32 stored
// patterns map to distinct values. Packed as bits 0..3 = posibits,
// bit 4 = negabit.
class MRSDigit {
public:
    MRSDigit() : bits_(0x10) {} // canonical zero: negabit stored 1, posibits 0

    static MRSDigit from_bits(std::uint8_t bits);
    static MRSDigit from_value(int v); // v in [-16, 15]

    std::uint8_t bits() const { return bits_; }
    bool posibit(int i) const { return (bits_ >> i) & 1u; } // i in 0..3
    bool negabit_stored() const { return (bits_ >> 4) & 1u; }

    int value() const { return static_cast<int>(bits_ & 0x0Fu) + 16 * static_cast<int>((bits_ >> 4) & 1u) - 16; }

    bool operator==(const MRSDigit&) const = default;

private:
    std::uint8_t bits_;
};

// Radix-16 positional number, least significant digit first. The
// negabit of digit k carries bit weight 2^(4k+4), the same weight as
// the least significant posibit of digit k+1.
class MRSDNumber {
public:
    MRSDNumber() = default;
    explicit MRSDNumber(std::vector<MRSDigit> digits);

    static MRSDNumber zero(int digit_count);

    // Representable interval (lo, hi) for digit_count digits:
    // (-16*(16^n - 1)/15, 16^n - 1). Throws for n < 1.
    static std::pair<BigInt, BigInt> dynamic_range(int digit_count);

    // Canonical encoding: peel least-significant-first with each digit
    // forced into [0,15]; when the remaining quotient would fall below
    // the range of the digits still to be written, borrow 16 from the
    // current digit and carry one upward. The most significant digit
    // absorbs the sign. Throws std::out_of_range when v does not fit.
    static MRSDNumber encode(const BigInt& v, int digit_count);

    // Every stored bit drawn independently uniform; one 64-bit draw per
    // digit, low five bits kept.
    static MRSDNumber random(int digit_count, std::mt19937_64& rng);

    int digit_count() const { return static_cast<int>(digits_.size()); }
    const MRSDigit& digit(int k) const { return digits_.at(static_cast<std::size_t>(k)); }
    const std::vector<MRSDigit>& digits() const { return digits_; }

    BigInt value() const;
    std::vector<int> digit_values() const;
    static MRSDNumber from_digit_values(const std::vector<int>& values);

    bool operator==(const MRSDNumber&) const = default;

private:
    std::vector<MRSDigit> digits_;
};

// SplitMix64-style mixer used to derive independent generator seeds
// from a (seed, stream) pair.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

} // namespace mrsd
