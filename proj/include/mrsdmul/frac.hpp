// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mrsd {

// Exact small rational. Cell mean errors and the accumulated column
// errors are always multiples of 1/8 (table row counts are 4 or 8),
// so int64 components never come close to overflow in practice;
// comparisons still cross-multiply in 128 bits.
struct Frac {
    std::int64_t num{0};
    std::int64_t den{1};

    constexpr Frac() = default;

    Frac(std::int64_t n, std::int64_t d) : num(n), den(d)
    {
        if (den == 0)
            throw std::invalid_argument("Frac: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    static Frac from_int(std::int64_t n) { return Frac(n, 1); }

    Frac operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
    Frac operator-(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }
    Frac operator-() const { return Frac(-num, den); }
    Frac operator*(std::int64_t k) const { return Frac(num * k, den); }
    Frac& operator+=(const Frac& o) { return *this = *this + o; }

    bool operator==(const Frac& o) const { return num == o.num && den == o.den; }

    std::strong_ordering operator<=>(const Frac& o) const
    {
        const __int128 lhs = static_cast<__int128>(num) * o.den;
        const __int128 rhs = static_cast<__int128>(o.num) * den;
        if (lhs < rhs)
            return std::strong_ordering::less;
        if (lhs > rhs)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    Frac abs() const { return num < 0 ? Frac(-num, den) : *this; }
    bool is_zero() const { return num == 0; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    // "n" or "n/d", e.g. "1/4", "-1/2", "0".
    std::string to_string() const
    {
        if (den == 1)
            return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    static Frac parse(const std::string& s)
    {
        const auto slash = s.find('/');
        if (slash == std::string::npos)
            return Frac(std::stoll(s), 1);
        return Frac(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }
};

} // namespace mrsd
