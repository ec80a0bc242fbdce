// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include "mrsdmul/verify.hpp"

#include <sstream>

#include "mrsdmul/dse.hpp"
#include "mrsdmul/evalkit.hpp"
#include "mrsdmul/ppgen.hpp"
#include "mrsdmul/tree.hpp"

namespace mrsd {

namespace {

CheckResult check_product_bits()
{
    // Every polarity pairing, all four stored combinations, against
    // plain integer multiplication of the bit values.
    for (Polarity pa : {Polarity::posibit, Polarity::negabit})
        for (Polarity pb : {Polarity::posibit, Polarity::negabit})
            for (int sa = 0; sa < 2; ++sa)
                for (int sb = 0; sb < 2; ++sb) {
                    const TypedBit a{sa != 0, pa, 3};
                    const TypedBit b{sb != 0, pb, 4};
                    const TypedBit p = product_bit(a, b);
                    if (p.column != 7)
                        return {"product-bit gates", false, "wrong column"};
                    if (typed_bit_value(p) != typed_bit_value(a) * typed_bit_value(b))
                        return {"product-bit gates", false, "value mismatch"};
                    const bool expect_neg = pa != pb;
                    if ((p.polarity == Polarity::negabit) != expect_neg)
                        return {"product-bit gates", false, "polarity rule broken"};
                }
    return {"product-bit gates", true, ""};
}

CheckResult check_exact_cells()
{
    for (int neg = 0; neg <= 3; ++neg) {
        const PolarityMix mix{3 - neg, neg};
        const CellSpec fa = exact_fa(mix);
        for (unsigned row = 0; row < 8; ++row)
            if (fa.row_error(row) != 0)
                return {"exact cell value preservation", false,
                        "FA mix " + std::to_string(mix.pos) + "P" + std::to_string(mix.neg) + "N row " +
                            std::to_string(row)};
    }
    for (int neg = 0; neg <= 2; ++neg) {
        const PolarityMix mix{2 - neg, neg};
        const CellSpec ha = exact_ha(mix);
        for (unsigned row = 0; row < 4; ++row)
            if (ha.row_error(row) != 0)
                return {"exact cell value preservation", false, "HA row " + std::to_string(row)};
    }
    return {"exact cell value preservation", true, ""};
}

CheckResult check_library(const CellLibrary& library)
{
    const auto& targets = default_cell_targets();
    if (library.cells.size() != targets.size())
        return {"cell library means", false, "library does not hold six cells"};
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const CellSpec& cell = library.cells[i];
        if (!(cell.mix() == targets[i].first))
            return {"cell library means", false, "wrong mix in slot " + std::to_string(i)};
        if (!(cell.mean_error() == targets[i].second))
            return {"cell library means", false,
                    std::string(cell_name(cell.kind())) + " mean " + cell.mean_error().to_string() +
                        " != " + targets[i].second.to_string()};
        if (cell.max_abs_row_error() > 1)
            return {"cell library means", false,
                    std::string(cell_name(cell.kind())) + " has a row error beyond +/-1"};
    }
    return {"cell library means", true, ""};
}

CheckResult check_encode_round_trip()
{
    const auto [lo, hi] = MRSDNumber::dynamic_range(2);
    for (BigInt v = lo; v <= hi; ++v)
        if (MRSDNumber::encode(v, 2).value() != v)
            return {"encode round trip", false, "value " + v.str()};
    return {"encode round trip", true, ""};
}

CheckResult check_exact_design(const CellLibrary& library)
{
    const MultiplierDesign one = MultiplierDesign::build(plan_design(1, 1, library), library);
    for (unsigned pa = 0; pa < 32; ++pa)
        for (unsigned pb = 0; pb < 32; ++pb) {
            const MRSDNumber a(std::vector<MRSDigit>{MRSDigit::from_bits(static_cast<std::uint8_t>(pa))});
            const MRSDNumber b(std::vector<MRSDigit>{MRSDigit::from_bits(static_cast<std::uint8_t>(pb))});
            if (one.evaluate(a, b).value != a.value() * b.value())
                return {"exact design equals integer product", false,
                        a.value().str() + " x " + b.value().str()};
        }
    const MultiplierDesign two = MultiplierDesign::build(plan_design(2, 1, library), library);
    auto rng = make_stream(2026, 0);
    for (int i = 0; i < 2000; ++i) {
        const MRSDNumber a = MRSDNumber::random(2, rng);
        const MRSDNumber b = MRSDNumber::random(2, rng);
        if (two.evaluate(a, b).value != a.value() * b.value())
            return {"exact design equals integer product", false, "random 2-digit pair " + std::to_string(i)};
    }
    return {"exact design equals integer product", true, ""};
}

CheckResult check_search_vs_enumeration(const CellLibrary& library)
{
    const std::array<Frac, 7> errs = {Frac(0, 1),  Frac(1, 4),  Frac(-1, 4), Frac(1, 2),
                                      Frac(-1, 2), Frac(1, 1),  Frac(-1, 1)};
    for (int pos = 0; pos <= 12; ++pos)
        for (int neg = 0; pos + neg <= 12; ++neg)
            for (const Frac& err : errs)
                for (bool border : {false, true}) {
                    const auto fast = assign_column(pos, neg, err, border, library);
                    const auto full = exhaustive_assign(pos, neg, err, border, library);
                    if (!(fast.err_out.abs() == full.err_out.abs()) || fast.cells != full.cells) {
                        std::ostringstream msg;
                        msg << "(" << pos << "," << neg << ", err " << err.to_string()
                            << (border ? ", border)" : ")");
                        return {"search matches enumeration", false, msg.str()};
                    }
                }
    return {"search matches enumeration", true, ""};
}

CheckResult check_bound_admissibility(const CellLibrary& library)
{
    const SearchOptions off{false, false, false};
    const std::array<Frac, 5> errs = {Frac(0, 1), Frac(1, 4), Frac(-1, 4), Frac(1, 2), Frac(-1, 2)};
    for (int pos = 0; pos <= 10; ++pos)
        for (int neg = 0; pos + neg <= 10; ++neg)
            for (const Frac& err : errs)
                for (bool border : {false, true}) {
                    const auto with_bounds = assign_column(pos, neg, err, border, library);
                    const auto without = assign_column(pos, neg, err, border, library, off);
                    if (with_bounds.cells != without.cells ||
                        !(with_bounds.err_out == without.err_out))
                        return {"bounds never change assignments", false,
                                "(" + std::to_string(pos) + "," + std::to_string(neg) + ")"};
                }
    return {"bounds never change assignments", true, ""};
}

CheckResult check_evaluation_oracle(const CellLibrary& library)
{
    // Approximate design: toggling every approximate cell to the exact
    // table must restore the integer product.
    const DesignPlan plan = plan_design(2, 8, library);
    CellLibrary exactified;
    for (const auto& cell : library.cells) {
        std::vector<RowOutput> table(8);
        for (unsigned r = 0; r < 8; ++r) {
            const int ones = static_cast<int>((r & 1u) + ((r >> 1) & 1u) + ((r >> 2) & 1u));
            table[r] = {static_cast<bool>(ones & 1), ones >= 2};
        }
        exactified.cells.push_back(CellSpec(cell.kind(), cell.mix(), std::move(table)));
    }
    DesignPlan exact_plan = plan;
    exact_plan.library_digest = exactified.digest();
    const MultiplierDesign toggled = MultiplierDesign::build(exact_plan, exactified);
    auto rng = make_stream(99, 1);
    for (int i = 0; i < 2000; ++i) {
        const MRSDNumber a = MRSDNumber::random(2, rng);
        const MRSDNumber b = MRSDNumber::random(2, rng);
        if (toggled.evaluate(a, b).value != a.value() * b.value())
            return {"error originates in approximate cells only", false, "pair " + std::to_string(i)};
    }
    return {"error originates in approximate cells only", true, ""};
}

} // namespace

std::vector<CheckResult> run_verification(const CellLibrary& library)
{
    std::vector<CheckResult> results;
    results.push_back(check_product_bits());
    results.push_back(check_exact_cells());
    results.push_back(check_library(library));
    results.push_back(check_encode_round_trip());
    results.push_back(check_exact_design(library));
    results.push_back(check_search_vs_enumeration(library));
    results.push_back(check_bound_admissibility(library));
    results.push_back(check_evaluation_oracle(library));
    return results;
}

bool all_passed(const std::vector<CheckResult>& results)
{
    for (const auto& r : results)
        if (!r.passed)
            return false;
    return true;
}

} // namespace mrsd
