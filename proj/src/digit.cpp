// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include "mrsdmul/digit.hpp"

#include <stdexcept>
#include <string>

namespace mrsd {

MRSDigit MRSDigit::from_bits(std::uint8_t bits)
{
    if (bits > 31)
        throw std::invalid_argument("MRSDigit: stored pattern must use 5 bits");
    MRSDigit d;
    d.bits_ = bits;
    return d;
}

MRSDigit MRSDigit::from_value(int v)
{
    if (v < -16 || v > 15)
        throw std::out_of_range("MRSDigit: value outside [-16, 15]");
    // v >= 0 keeps the negabit stored at 1 (worth 0); negative values
    // clear it and put v + 16 in the posibits.
    return from_bits(v >= 0 ? static_cast<std::uint8_t>(v | 0x10) : static_cast<std::uint8_t>(v + 16));
}

MRSDNumber::MRSDNumber(std::vector<MRSDigit> digits) : digits_(std::move(digits))
{
    if (digits_.empty())
        throw std::invalid_argument("MRSDNumber: need at least one digit");
}

MRSDNumber MRSDNumber::zero(int digit_count)
{
    if (digit_count < 1)
        throw std::invalid_argument("MRSDNumber: digit count must be >= 1");
    return MRSDNumber(std::vector<MRSDigit>(static_cast<std::size_t>(digit_count)));
}

std::pair<BigInt, BigInt> MRSDNumber::dynamic_range(int digit_count)
{
    if (digit_count < 1)
        throw std::invalid_argument("dynamic_range: digit count must be >= 1");
    BigInt hi = (BigInt(1) << (4 * digit_count)) - 1; // 16^n - 1
    BigInt lo = -16 * hi / 15;                        // all digits at -16
    return {lo, hi};
}

MRSDNumber MRSDNumber::encode(const BigInt& v, int digit_count)
{
    const auto [lo, hi] = dynamic_range(digit_count);
    if (v < lo || v > hi)
        throw std::out_of_range("encode: value " + v.str() + " outside [" + lo.str() + ", " + hi.str() +
                                "] for " + std::to_string(digit_count) + " digits");

    std::vector<MRSDigit> digits;
    digits.reserve(static_cast<std::size_t>(digit_count));
    BigInt rem = v;
    for (int k = 0; k < digit_count - 1; ++k) {
        BigInt m = rem % 16;
        if (m < 0)
            m += 16;
        int d = static_cast<int>(m);
        BigInt next = (rem - d) / 16;
        const BigInt next_lo = dynamic_range(digit_count - 1 - k).first;
        if (next < next_lo) {
            d -= 16;
            next += 1;
        }
        digits.push_back(MRSDigit::from_value(d));
        rem = next;
    }
    digits.push_back(MRSDigit::from_value(static_cast<int>(rem)));
    return MRSDNumber(std::move(digits));
}

MRSDNumber MRSDNumber::random(int digit_count, std::mt19937_64& rng)
{
    if (digit_count < 1)
        throw std::invalid_argument("random: digit count must be >= 1");
    std::vector<MRSDigit> digits;
    digits.reserve(static_cast<std::size_t>(digit_count));
    for (int k = 0; k < digit_count; ++k)
        digits.push_back(MRSDigit::from_bits(static_cast<std::uint8_t>(rng() & 31u)));
    return MRSDNumber(std::move(digits));
}

BigInt MRSDNumber::value() const
{
    BigInt acc = 0;
    for (int k = digit_count() - 1; k >= 0; --k)
        acc = acc * 16 + digits_[static_cast<std::size_t>(k)].value();
    return acc;
}

std::vector<int> MRSDNumber::digit_values() const
{
    std::vector<int> out;
    out.reserve(digits_.size());
    for (const auto& d : digits_)
        out.push_back(d.value());
    return out;
}

MRSDNumber MRSDNumber::from_digit_values(const std::vector<int>& values)
{
    std::vector<MRSDigit> digits;
    digits.reserve(values.size());
    for (int v : values)
        digits.push_back(MRSDigit::from_value(v));
    return MRSDNumber(std::move(digits));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream)
{
    return std::mt19937_64(mix_seed(seed, stream));
}

} // namespace mrsd
