// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "mrsdmul/frac.hpp"

using mrsd::Frac;

TEST_CASE("normalization and equality")
{
    CHECK(Frac(2, 8) == Frac(1, 4));
    CHECK(Frac(-2, 8) == Frac(1, -4));
    CHECK(Frac(0, 5) == Frac());
    CHECK(Frac(6, 3).num == 2);
    CHECK(Frac(6, 3).den == 1);
    CHECK_THROWS_AS(Frac(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic")
{
    CHECK(Frac(1, 4) + Frac(1, 4) == Frac(1, 2));
    CHECK(Frac(1, 4) - Frac(1, 2) == Frac(-1, 4));
    CHECK(Frac(1, 4) * 3 == Frac(3, 4));
    CHECK((-Frac(1, 4)) == Frac(-1, 4));
    CHECK(Frac(-3, 4).abs() == Frac(3, 4));
    CHECK(Frac(-3, 4) < Frac(-1, 4));
    CHECK(Frac(1, 4) < Frac(1, 2));
    CHECK(Frac(0, 1).is_zero());
}

TEST_CASE("string round trip")
{
    for (const char* s : {"0", "1/4", "-1/2", "3", "-7/8"})
        CHECK(Frac::parse(s).to_string() == s);
}
