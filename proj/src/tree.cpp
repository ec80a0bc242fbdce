// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include "mrsdmul/tree.hpp"

#include <deque>
#include <stdexcept>
#include <string>

namespace mrsd {

namespace {

std::logic_error plan_mismatch(int stage, int column, const std::string& what)
{
    return std::logic_error("design plan infeasible at stage " + std::to_string(stage) + " column " +
                            std::to_string(column) + ": " + what);
}

} // namespace

int MultiplierDesign::cell_index_for(CellKind kind, const PolarityMix& mix)
{
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i].kind() == kind && cells_[i].mix() == mix)
            return static_cast<int>(i);
    if (kind == CellKind::fa_exact)
        cells_.push_back(exact_fa(mix));
    else if (kind == CellKind::ha_exact)
        cells_.push_back(exact_ha(mix));
    else {
        const CellSpec& cell = library_.by_kind(kind);
        if (!(cell.mix() == mix))
            throw std::logic_error("approximate cell used with a foreign polarity mix");
        cells_.push_back(cell);
    }
    return static_cast<int>(cells_.size()) - 1;
}

MultiplierDesign MultiplierDesign::build(DesignPlan plan, CellLibrary library)
{
    if (library.digest() != plan.library_digest)
        throw std::invalid_argument("build: cell library does not match the plan's library digest");

    MultiplierDesign design;
    design.plan_ = std::move(plan);
    design.library_ = std::move(library);
    const DesignPlan& p = design.plan_;

    // Stage-0 slots come from the partial product walk, a-bit major.
    std::vector<std::vector<Polarity>> slots(p.profiles.front().size());
    {
        const auto layout = operand_bit_layout(p.digits);
        for (const auto& ra : layout)
            for (const auto& rb : layout) {
                const bool mixed = ra.polarity != rb.polarity;
                slots.at(static_cast<std::size_t>(ra.position + rb.position))
                    .push_back(mixed ? Polarity::negabit : Polarity::posibit);
            }
    }

    for (int t = 0; t < p.stage_count(); ++t) {
        const auto& profile = p.profiles[static_cast<std::size_t>(t)];
        const auto& assignments = p.stages[static_cast<std::size_t>(t)];
        if (slots.size() != profile.size() || assignments.size() != profile.size())
            throw plan_mismatch(t, -1, "stage width disagrees with profile");

        const std::size_t next_width =
            t + 1 < p.stage_count() ? p.profiles[static_cast<std::size_t>(t + 1)].size() : p.profiles.back().size();
        std::vector<std::vector<Polarity>> next(next_width);

        StageWiring stage;
        stage.columns.resize(profile.size());

        for (std::size_t c = 0; c < profile.size(); ++c) {
            const auto& asn = assignments[c];
            WiredColumn& wc = stage.columns[c];
            wc.slots = slots[c];

            int pos_seen = 0;
            int neg_seen = 0;
            std::deque<int> pos_queue;
            std::deque<int> neg_queue;
            for (std::size_t s = 0; s < wc.slots.size(); ++s) {
                if (wc.slots[s] == Polarity::posibit) {
                    pos_queue.push_back(static_cast<int>(s));
                    ++pos_seen;
                } else {
                    neg_queue.push_back(static_cast<int>(s));
                    ++neg_seen;
                }
            }
            if (pos_seen != asn.pos_count || neg_seen != asn.neg_count)
                throw plan_mismatch(t, asn.column, "bit counts disagree with assignment");
            if (asn.fa_count() != (pos_seen + neg_seen) / 3)
                throw plan_mismatch(t, asn.column, "cell count is not floor(height/3)");

            const auto place = [&](std::vector<Polarity>& col, Polarity pol) {
                col.push_back(pol);
                return static_cast<int>(col.size()) - 1;
            };

            const auto wire_cell = [&](const CellUse& use) {
                if (static_cast<int>(pos_queue.size()) < use.mix.pos ||
                    static_cast<int>(neg_queue.size()) < use.mix.neg)
                    throw plan_mismatch(t, asn.column, "cell consumes more bits than available");
                WiredCell cell;
                cell.kind = use.kind;
                cell.mix = use.mix;
                cell.cell_index = design.cell_index_for(use.kind, use.mix);
                int port = 0;
                for (int i = 0; i < use.mix.pos; ++i, ++port) {
                    cell.inputs[static_cast<std::size_t>(port)] = pos_queue.front();
                    pos_queue.pop_front();
                }
                for (int i = 0; i < use.mix.neg; ++i, ++port) {
                    cell.inputs[static_cast<std::size_t>(port)] = neg_queue.front();
                    neg_queue.pop_front();
                }
                const auto [sum_pol, carry_pol] = exact_output_polarities(use.mix);
                cell.sum_slot = place(next.at(c), sum_pol);
                cell.carry_slot = place(next.at(c + 1), carry_pol);
                wc.cells.push_back(cell);
            };

            for (const auto& use : asn.cells)
                wire_cell(use);

            if (static_cast<int>(pos_queue.size()) != asn.leftover_pos ||
                static_cast<int>(neg_queue.size()) != asn.leftover_neg)
                throw plan_mismatch(t, asn.column, "leftover does not match the unconsumed remainder");
            if (asn.leftover_pos + asn.leftover_neg == 2)
                wire_cell({CellKind::ha_exact, {asn.leftover_pos, asn.leftover_neg}});
            else if (asn.leftover_pos + asn.leftover_neg == 1) {
                const bool is_pos = asn.leftover_pos == 1;
                const int from = is_pos ? pos_queue.front() : neg_queue.front();
                wc.passes.push_back({from, place(next.at(c), is_pos ? Polarity::posibit : Polarity::negabit)});
            }
        }

        design.wiring_.push_back(std::move(stage));
        slots = std::move(next);
    }

    // Validate the surviving rows against the final profile and park
    // them as a cell-free trailing stage.
    const auto& final_profile = p.profiles.back();
    if (slots.size() != final_profile.size())
        throw std::logic_error("final row width disagrees with plan");
    StageWiring final_stage;
    final_stage.columns.resize(slots.size());
    for (std::size_t c = 0; c < slots.size(); ++c) {
        if (static_cast<int>(slots[c].size()) != final_profile[c].height())
            throw std::logic_error("final row heights disagree with plan");
        if (slots[c].size() > 2)
            throw std::logic_error("reduction left a column higher than two");
        final_stage.columns[c].slots = slots[c];
    }
    design.wiring_.push_back(std::move(final_stage));
    return design;
}

std::uint64_t MultiplierDesign::wiring_digest() const
{
    std::string text;
    for (const auto& stage : wiring_) {
        text += "stage\n";
        for (const auto& col : stage.columns) {
            text += "col ";
            for (Polarity pol : col.slots)
                text += polarity_char(pol);
            for (const auto& cell : col.cells) {
                text += ' ';
                text += cell_name(cell.kind);
                text += '(';
                for (int i = 0; i < cell.mix.arity(); ++i)
                    text += std::to_string(cell.inputs[static_cast<std::size_t>(i)]) + ",";
                text += ")->" + std::to_string(cell.sum_slot) + "," + std::to_string(cell.carry_slot);
            }
            for (const auto& [from, to] : col.passes)
                text += " pass " + std::to_string(from) + "->" + std::to_string(to);
            text += '\n';
        }
    }
    return fnv1a64(text);
}

EvalResult MultiplierDesign::evaluate(const MRSDNumber& a, const MRSDNumber& b) const
{
    if (a.digit_count() != plan_.digits || b.digit_count() != plan_.digits)
        throw std::invalid_argument("evaluate: operand width does not match the design");

    const PPMatrix m = generate(a, b);
    std::vector<std::vector<unsigned char>> values(wiring_.front().columns.size());
    for (std::size_t c = 0; c < values.size(); ++c) {
        const auto& col = m.columns()[c];
        values[c].resize(col.size());
        for (std::size_t s = 0; s < col.size(); ++s)
            values[c][s] = col[s].stored ? 1 : 0;
    }

    for (std::size_t t = 0; t + 1 < wiring_.size(); ++t) {
        const StageWiring& stage = wiring_[t];
        const StageWiring& next_stage = wiring_[t + 1];
        std::vector<std::vector<unsigned char>> next(next_stage.columns.size());
        for (std::size_t c = 0; c < next.size(); ++c)
            next[c].resize(next_stage.columns[c].slots.size());

        for (std::size_t c = 0; c < stage.columns.size(); ++c) {
            const WiredColumn& wc = stage.columns[c];
            for (const auto& cell : wc.cells) {
                unsigned row = 0;
                const CellSpec& spec = cells_[static_cast<std::size_t>(cell.cell_index)];
                for (int i = 0; i < cell.mix.arity(); ++i)
                    row |= static_cast<unsigned>(values[c][static_cast<std::size_t>(
                               cell.inputs[static_cast<std::size_t>(i)])])
                           << i;
                const RowOutput out = spec.apply(row);
                next[c][static_cast<std::size_t>(cell.sum_slot)] = out.sum ? 1 : 0;
                next[c + 1][static_cast<std::size_t>(cell.carry_slot)] = out.carry ? 1 : 0;
            }
            for (const auto& [from, to] : wc.passes)
                next[c][static_cast<std::size_t>(to)] = values[c][static_cast<std::size_t>(from)];
        }
        values = std::move(next);
    }

    std::vector<TypedBit> survivors;
    const StageWiring& final_stage = wiring_.back();
    for (std::size_t c = 0; c < final_stage.columns.size(); ++c)
        for (std::size_t s = 0; s < final_stage.columns[c].slots.size(); ++s)
            survivors.push_back(
                {values[c][s] != 0, final_stage.columns[c].slots[s], static_cast<int>(c)});

    MRSDNumber result = finalize_rows(survivors, result_digits());
    return {result, result.value()};
}

DesignStats MultiplierDesign::stats() const
{
    DesignStats st;
    st.depth_stages = plan_.stage_count();
    for (const auto& stage : wiring_) {
        for (const auto& col : stage.columns) {
            st.pass_bits += static_cast<std::int64_t>(col.passes.size());
            for (const auto& cell : col.cells) {
                ++st.counts[static_cast<std::size_t>(cell.kind)];
                st.gate_literals += cells_[static_cast<std::size_t>(cell.cell_index)].literal_cost();
            }
        }
    }
    std::int64_t fa_total = 0;
    for (CellKind k : {CellKind::fa_exact, CellKind::fa_pp, CellKind::fa_pn1, CellKind::fa_pn2,
                       CellKind::fa_np1, CellKind::fa_np2, CellKind::fa_nn})
        fa_total += st.counts[static_cast<std::size_t>(k)];
    if (fa_total > 0)
        for (CellKind k : {CellKind::fa_exact, CellKind::fa_pp, CellKind::fa_pn1, CellKind::fa_pn2,
                           CellKind::fa_np1, CellKind::fa_np2, CellKind::fa_nn})
            st.fa_usage_pct[static_cast<std::size_t>(k)] =
                100.0 * static_cast<double>(st.counts[static_cast<std::size_t>(k)]) /
                static_cast<double>(fa_total);
    return st;
}

MRSDNumber finalize_rows(const std::vector<TypedBit>& bits, int result_digits)
{
    std::vector<int> heights;
    BigInt total = 0;
    for (const auto& bit : bits) {
        if (bit.column < 0)
            throw std::invalid_argument("finalize_rows: negative column");
        if (static_cast<std::size_t>(bit.column) >= heights.size())
            heights.resize(static_cast<std::size_t>(bit.column) + 1, 0);
        if (++heights[static_cast<std::size_t>(bit.column)] > 2)
            throw std::invalid_argument("finalize_rows: more than two bits in a column");
        total += BigInt(typed_bit_value(bit)) << bit.column;
    }
    const auto [lo, hi] = MRSDNumber::dynamic_range(result_digits);
    if (total < lo || total > hi)
        throw std::logic_error("finalize_rows: surviving rows exceed the result dynamic range");
    return MRSDNumber::encode(total, result_digits);
}

std::optional<MRSDNumber> compress_result(const MRSDNumber& x)
{
    if (x.digit_count() < 2)
        throw std::invalid_argument("compress_result: need at least two digits");
    const int target = x.digit_count() - 1;
    const BigInt v = x.value();
    const auto [lo, hi] = MRSDNumber::dynamic_range(target);
    if (v < lo || v > hi)
        return std::nullopt;
    return MRSDNumber::encode(v, target);
}

} // namespace mrsd
