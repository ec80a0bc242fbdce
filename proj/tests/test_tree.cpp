// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "mrsdmul/tree.hpp"

using namespace mrsd;

namespace {

const CellLibrary& lib()
{
    static const CellLibrary library = derive_default_library();
    return library;
}

MultiplierDesign exact_design(int digits)
{
    return MultiplierDesign::build(plan_design(digits, 1, lib()), lib());
}

MRSDNumber one_digit(int v)
{
    return MRSDNumber::from_digit_values({v});
}

// The derived library with every table swapped for the exact adder;
// mean errors collapse to zero but mixes and polarities stay put.
CellLibrary exactified_library()
{
    CellLibrary out;
    for (const auto& cell : lib().cells) {
        std::vector<RowOutput> table(8);
        for (unsigned r = 0; r < 8; ++r) {
            const int ones = static_cast<int>((r & 1u) + ((r >> 1) & 1u) + ((r >> 2) & 1u));
            table[r] = {static_cast<bool>(ones & 1), ones >= 2};
        }
        out.cells.push_back(CellSpec(cell.kind(), cell.mix(), std::move(table)));
    }
    return out;
}

} // namespace

TEST_CASE("exact one-digit design equals the integer product everywhere")
{
    const MultiplierDesign design = exact_design(1);
    CHECK(design.result_digits() == 3);
    for (unsigned pa = 0; pa < 32; ++pa)
        for (unsigned pb = 0; pb < 32; ++pb) {
            const MRSDNumber a(std::vector<MRSDigit>{MRSDigit::from_bits(static_cast<std::uint8_t>(pa))});
            const MRSDNumber b(std::vector<MRSDigit>{MRSDigit::from_bits(static_cast<std::uint8_t>(pb))});
            const EvalResult r = design.evaluate(a, b);
            REQUIRE(r.value == a.value() * b.value());
            REQUIRE(r.result.value() == r.value);
            REQUIRE(r.result.digit_count() == 3);
        }
}

TEST_CASE("evaluate checks operand widths")
{
    const MultiplierDesign design = exact_design(1);
    CHECK(design.evaluate(one_digit(-16), one_digit(15)).value == -240);
    CHECK_THROWS_AS(design.evaluate(MRSDNumber::zero(2), MRSDNumber::zero(2)), std::invalid_argument);
}

TEST_CASE("rebuilding gives byte-identical wiring")
{
    const DesignPlan plan = plan_design(2, 8, lib());
    const MultiplierDesign a = MultiplierDesign::build(plan, lib());
    const MultiplierDesign b = MultiplierDesign::build(plan, lib());
    CHECK(a.wiring_digest() == b.wiring_digest());

    CellLibrary other = exactified_library();
    DesignPlan tampered = plan;
    CHECK_THROWS_AS(MultiplierDesign::build(tampered, other), std::invalid_argument);
}

TEST_CASE("stage heights shrink to at most two")
{
    const DesignPlan plan = plan_design(4, 12, lib());
    int prev_max = 1 << 20;
    for (const auto& profile : plan.profiles) {
        int max_height = 0;
        for (const auto& cc : profile)
            max_height = std::max(max_height, cc.height());
        CHECK(max_height < prev_max);
        prev_max = max_height;
    }
    for (const auto& cc : plan.final_profile())
        CHECK(cc.height() <= 2);
}

TEST_CASE("finalize re-encodes the surviving rows exactly")
{
    CHECK(finalize_rows({}, 3).value() == 0);
    CHECK(finalize_rows({}, 3).digit_count() == 3);

    // -240 as one negabit at weight 256 plus a posibit at weight 16.
    const std::vector<TypedBit> rows = {{false, Polarity::negabit, 8}, {true, Polarity::posibit, 4}};
    const MRSDNumber r = finalize_rows(rows, 3);
    CHECK(r.value() == -240);

    // (-272)^2 fits the five-digit result range.
    const BigInt worst = BigInt(-272) * BigInt(-272);
    CHECK(worst <= MRSDNumber::dynamic_range(5).second);
    CHECK(MRSDNumber::encode(worst, 5).value() == worst);

    const std::vector<TypedBit> tall = {{true, Polarity::posibit, 0},
                                        {true, Polarity::posibit, 0},
                                        {true, Polarity::posibit, 0}};
    CHECK_THROWS_AS(finalize_rows(tall, 2), std::invalid_argument);

    // A lone posibit far above the target width overflows the range.
    CHECK_THROWS_AS(finalize_rows({{true, Polarity::posibit, 30}, {true, Polarity::posibit, 31}}, 2),
                    std::logic_error);
}

TEST_CASE("result compression drops the extra digit when the value fits")
{
    CHECK(compress_result(MRSDNumber::encode(0, 3))->digit_values() == std::vector<int>{0, 0});
    CHECK(compress_result(MRSDNumber::encode(255, 3))->digit_values() == std::vector<int>{15, 15});
    CHECK(compress_result(MRSDNumber::encode(-272, 3))->digit_values() == std::vector<int>{-16, -16});
    CHECK(!compress_result(MRSDNumber::encode(300, 3)).has_value());
    CHECK(!compress_result(MRSDNumber::encode(-300, 3)).has_value());
    CHECK_THROWS_AS(compress_result(MRSDNumber::zero(1)), std::invalid_argument);

    auto rng = make_stream(23, 0);
    for (int i = 0; i < 2000; ++i) {
        const MRSDNumber a = MRSDNumber::random(1, rng);
        const MRSDNumber b = MRSDNumber::random(1, rng);
        const BigInt product = a.value() * b.value();
        const auto wide = MRSDNumber::encode(product, 3);
        const auto narrow = compress_result(wide);
        REQUIRE(narrow.has_value());
        CHECK(narrow->value() == product);
        CHECK(narrow->digit_count() == 2);
    }
}

TEST_CASE("approximate error comes from approximate cells alone")
{
    const CellLibrary exactified = exactified_library();
    for (int n : {2, 4}) {
        DesignPlan plan = plan_design(n, 4 * n, lib());
        plan.library_digest = exactified.digest();
        const MultiplierDesign toggled = MultiplierDesign::build(plan, exactified);
        auto rng = make_stream(31, static_cast<std::uint64_t>(n));
        for (int i = 0; i < 10000; ++i) {
            const MRSDNumber a = MRSDNumber::random(n, rng);
            const MRSDNumber b = MRSDNumber::random(n, rng);
            REQUIRE(toggled.evaluate(a, b).value == a.value() * b.value());
        }
    }
}

TEST_CASE("design statistics")
{
    const MultiplierDesign exact = exact_design(2);
    const DesignStats est = exact.stats();
    for (CellKind k : {CellKind::fa_pp, CellKind::fa_pn1, CellKind::fa_pn2, CellKind::fa_np1,
                       CellKind::fa_np2, CellKind::fa_nn}) {
        CHECK(est.counts[static_cast<std::size_t>(k)] == 0);
        CHECK(est.fa_usage_pct[static_cast<std::size_t>(k)] == 0.0);
    }
    CHECK(est.fa_usage_pct[static_cast<std::size_t>(CellKind::fa_exact)] == 100.0);
    CHECK(est.depth_stages == exact.plan().stage_count());

    const MultiplierDesign mid = MultiplierDesign::build(plan_design(2, 8, lib()), lib());
    const DesignStats mst = mid.stats();
    for (CellKind k : {CellKind::fa_pn1, CellKind::fa_pn2, CellKind::fa_np1, CellKind::fa_np2,
                       CellKind::fa_nn})
        CHECK(mst.fa_usage_pct[static_cast<std::size_t>(CellKind::fa_pp)] >=
              mst.fa_usage_pct[static_cast<std::size_t>(k)]);

    double pct_total = 0;
    for (int k = 0; k < 8; ++k)
        if (static_cast<CellKind>(k) != CellKind::ha_exact)
            pct_total += mst.fa_usage_pct[static_cast<std::size_t>(k)];
    CHECK(pct_total == doctest::Approx(100.0));

    const DesignStats narrow = MultiplierDesign::build(plan_design(2, 6, lib()), lib()).stats();
    const DesignStats wide = MultiplierDesign::build(plan_design(2, 10, lib()), lib()).stats();
    CHECK(wide.gate_literals < narrow.gate_literals);
}
