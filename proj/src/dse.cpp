// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include "mrsdmul/dse.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace mrsd {

namespace {

const std::array<PolarityMix, 4> kExactMixes = {{{3, 0}, {2, 1}, {1, 2}, {0, 3}}};

struct BranchCell {
    CellKind kind;
    PolarityMix mix;
    Frac mean;
};

// Branch order: the six approximate cells as listed in the library,
// then the exact FA mixes when the border column allows them.
std::vector<BranchCell> branch_cells(const CellLibrary& library, bool allow_exact_fa)
{
    std::vector<BranchCell> out;
    out.reserve(library.cells.size() + (allow_exact_fa ? kExactMixes.size() : 0));
    for (const auto& cell : library.cells)
        out.push_back({cell.kind(), cell.mix(), cell.mean_error()});
    if (allow_exact_fa)
        for (const auto& mix : kExactMixes)
            out.push_back({CellKind::fa_exact, mix, Frac(0, 1)});
    return out;
}

// A column whose search tree would stay small is explored exactly as
// the recursive branch structure dictates, one branch per remaining
// cell choice. Above kSequenceLimit assigned cells that tree repeats
// every cell multiset once per ordering, so the searcher switches to
// visiting only non-decreasing branch-index sequences. The first
// optimum the plain tree meets is always the sorted realization of its
// multiset, so both modes return the same assignment.
constexpr int kSequenceLimit = 6;

struct Searcher {
    const std::vector<BranchCell>& branches;
    std::size_t all_pos_index; // the unique (3,0) cell, forced when only posibits remain
    std::size_t all_neg_index; // the unique (0,3) cell
    Frac max_shift;
    bool allow_exact_fa;
    bool multiset_mode;
    SearchOptions options;

    SearchCounters counters{};
    bool have_best{false};
    Frac best_abs{};
    Frac best_err{};
    std::vector<CellUse> best_cells{};
    std::vector<CellUse> path{};

    void take_leaf(const Frac& err)
    {
        if (!have_best || err.abs() < best_abs) {
            have_best = true;
            best_abs = err.abs();
            best_err = err;
            best_cells = path;
        }
    }

    void forced_leaf(const Frac& err, const BranchCell& cell, int count)
    {
        const std::size_t depth = path.size();
        for (int i = 0; i < count; ++i)
            path.push_back({cell.kind, cell.mix});
        take_leaf(err);
        path.resize(depth);
    }

    void search(int pos, int neg, Frac err, std::size_t min_branch)
    {
        ++counters.visited;
        const int fa_count = (pos + neg) / 3;
        if (fa_count == 0) {
            take_leaf(err);
            return;
        }
        // Even if every remaining cell pulls toward zero, the branch
        // cannot beat the best assignment found so far.
        if (options.compensation_bound && have_best) {
            const Frac reachable = err.abs() - max_shift * fa_count;
            if (reachable > best_abs) {
                ++counters.pruned;
                return;
            }
        }
        if (!allow_exact_fa) {
            if (options.posibit_shortcut && neg == 0 && min_branch <= all_pos_index) {
                ++counters.forced_pos;
                const auto& cell = branches[all_pos_index];
                forced_leaf(err + cell.mean * fa_count, cell, fa_count);
                return;
            }
            if (options.negabit_shortcut && pos == 0 && min_branch <= all_neg_index) {
                ++counters.forced_neg;
                const auto& cell = branches[all_neg_index];
                forced_leaf(err + cell.mean * fa_count, cell, fa_count);
                return;
            }
        }
        for (std::size_t i = min_branch; i < branches.size(); ++i) {
            const auto& branch = branches[i];
            if (pos < branch.mix.pos || neg < branch.mix.neg)
                continue;
            path.push_back({branch.kind, branch.mix});
            search(pos - branch.mix.pos, neg - branch.mix.neg, err + branch.mean, multiset_mode ? i : 0);
            path.pop_back();
        }
    }
};

ColumnAssignment make_assignment(int pos, int neg, const Frac& err_in, const Frac& err_out,
                                 std::vector<CellUse> cells, SearchCounters counters)
{
    ColumnAssignment asn;
    asn.pos_count = pos;
    asn.neg_count = neg;
    asn.err_in = err_in;
    asn.err_out = err_out;
    asn.cells = std::move(cells);
    asn.counters = counters;
    int used_pos = 0;
    int used_neg = 0;
    for (const auto& cell : asn.cells) {
        used_pos += cell.mix.pos;
        used_neg += cell.mix.neg;
    }
    asn.leftover_pos = pos - used_pos;
    asn.leftover_neg = neg - used_neg;
    if (asn.leftover_pos < 0 || asn.leftover_neg < 0 || asn.leftover_pos + asn.leftover_neg > 2)
        throw std::logic_error("assignment consumed bits it does not have");
    return asn;
}

} // namespace

ColumnAssignment assign_column(int pos_count, int neg_count, Frac err_in, bool allow_exact_fa,
                               const CellLibrary& library, const SearchOptions& options)
{
    if (pos_count < 0 || neg_count < 0)
        throw std::invalid_argument("assign_column: negative bit count");
    if (library.cells.size() != 6)
        throw std::invalid_argument("assign_column: library must hold the six approximate cells");
    if (pos_count + neg_count < 3)
        return make_assignment(pos_count, neg_count, err_in, err_in, {}, {});

    const auto branches = branch_cells(library, allow_exact_fa);
    Frac max_shift(0, 1);
    std::size_t all_pos = branches.size();
    std::size_t all_neg = branches.size();
    for (std::size_t i = 0; i < branches.size(); ++i) {
        max_shift = std::max(max_shift, branches[i].mean.abs());
        if (branches[i].kind != CellKind::fa_exact && branches[i].mix == PolarityMix{3, 0})
            all_pos = i;
        if (branches[i].kind != CellKind::fa_exact && branches[i].mix == PolarityMix{0, 3})
            all_neg = i;
    }
    if (all_pos == branches.size() || all_neg == branches.size())
        throw std::invalid_argument("assign_column: library lacks a 3P or 3N cell");
    const bool multiset_mode = (pos_count + neg_count) / 3 > kSequenceLimit;
    Searcher s{branches, all_pos, all_neg, max_shift, allow_exact_fa, multiset_mode, options};
    s.search(pos_count, neg_count, err_in, 0);
    if (!s.have_best)
        throw std::logic_error("assign_column: search found no assignment");
    return make_assignment(pos_count, neg_count, err_in, s.best_err, std::move(s.best_cells), s.counters);
}

ColumnAssignment exhaustive_assign(int pos_count, int neg_count, Frac err_in, bool allow_exact_fa,
                                   const CellLibrary& library, int cap)
{
    if (pos_count < 0 || neg_count < 0)
        throw std::invalid_argument("exhaustive_assign: negative bit count");
    if (pos_count + neg_count > cap)
        throw std::invalid_argument("exhaustive_assign: column height exceeds cap");
    if (pos_count + neg_count < 3)
        return make_assignment(pos_count, neg_count, err_in, err_in, {}, {});

    // Independent of the branch-and-bound recursion: enumerate cell
    // multisets as non-decreasing branch-index sequences, which is the
    // order the search tree first reaches each multiset.
    const auto branches = branch_cells(library, allow_exact_fa);
    bool have_best = false;
    Frac best_abs{};
    Frac best_err{};
    std::vector<CellUse> best_cells;
    std::vector<CellUse> seq;
    SearchCounters counters;

    const int total_cells = (pos_count + neg_count) / 3;
    std::function<void(std::size_t, int, int, Frac)> enumerate = [&](std::size_t min_branch, int pos, int neg,
                                                                     Frac err) {
        if (static_cast<int>(seq.size()) == total_cells) {
            ++counters.visited;
            if (!have_best || err.abs() < best_abs) {
                have_best = true;
                best_abs = err.abs();
                best_err = err;
                best_cells = seq;
            }
            return;
        }
        for (std::size_t i = min_branch; i < branches.size(); ++i) {
            const auto& b = branches[i];
            if (pos < b.mix.pos || neg < b.mix.neg)
                continue;
            seq.push_back({b.kind, b.mix});
            enumerate(i, pos - b.mix.pos, neg - b.mix.neg, err + b.mean);
            seq.pop_back();
        }
    };
    enumerate(0, pos_count, neg_count, err_in);
    if (!have_best)
        throw std::logic_error("exhaustive_assign: no feasible multiset");
    return make_assignment(pos_count, neg_count, err_in, best_err, std::move(best_cells), counters);
}

ColumnAssignment exact_assign(int pos_count, int neg_count, Frac err_in)
{
    if (pos_count < 0 || neg_count < 0)
        throw std::invalid_argument("exact_assign: negative bit count");
    std::vector<CellUse> cells;
    int p = pos_count;
    int n = neg_count;
    while (p + n >= 3) {
        const int take_p = std::min(3, p);
        const int take_n = 3 - take_p;
        cells.push_back({CellKind::fa_exact, {take_p, take_n}});
        p -= take_p;
        n -= take_n;
    }
    auto asn = make_assignment(pos_count, neg_count, err_in, err_in, std::move(cells), {});
    asn.exact_region = true;
    return asn;
}

DesignPlan plan_design(int digits, int border, const CellLibrary& library, const SearchOptions& options)
{
    if (digits < 1)
        throw std::invalid_argument("plan_design: digit count must be >= 1");
    if (border < 1 || border > 8 * digits + 1)
        throw std::invalid_argument("plan_design: border column must be in [1, 8*digits+1]");

    DesignPlan plan;
    plan.digits = digits;
    plan.border = border;
    plan.library_digest = library.digest();

    std::vector<ColumnCount> profile = initial_profile(digits);
    std::vector<Frac> prev_err(profile.size(), Frac(0, 1));

    const auto needs_stage = [](const std::vector<ColumnCount>& p) {
        return std::any_of(p.begin(), p.end(), [](const ColumnCount& c) { return c.height() >= 3; });
    };

    constexpr int kStageCap = 64;
    while (needs_stage(profile)) {
        if (plan.stage_count() >= kStageCap)
            throw std::logic_error("plan_design: reduction did not converge");
        const int stage = plan.stage_count();
        plan.profiles.push_back(profile);

        std::vector<ColumnAssignment> assignments(profile.size());
        std::vector<ColumnCount> next(profile.size() + 1);
        std::vector<Frac> cur_err(profile.size() + 1, Frac(0, 1));

        for (std::size_t p = 0; p < profile.size(); ++p) {
            const int column = static_cast<int>(p) + 1;
            const Frac above = p < prev_err.size() ? prev_err[p] : Frac(0, 1);
            const Frac left = p > 0 ? cur_err[p - 1] : Frac(0, 1);
            const Frac err_in = above + left;

            ColumnAssignment asn;
            if (column < border)
                asn = assign_column(profile[p].pos, profile[p].neg, err_in, false, library, options);
            else if (column == border)
                asn = assign_column(profile[p].pos, profile[p].neg, err_in, true, library, options);
            else
                asn = exact_assign(profile[p].pos, profile[p].neg, err_in);
            asn.stage = stage;
            asn.column = column;
            cur_err[p] = asn.err_out;

            const auto emit = [&](const PolarityMix& mix) {
                const auto [sum_pol, carry_pol] = exact_output_polarities(mix);
                auto& sum_col = next[p];
                auto& carry_col = next[p + 1];
                (sum_pol == Polarity::posibit ? sum_col.pos : sum_col.neg) += 1;
                (carry_pol == Polarity::posibit ? carry_col.pos : carry_col.neg) += 1;
            };
            for (const auto& cell : asn.cells)
                emit(cell.mix);
            if (asn.leftover_pos + asn.leftover_neg == 2)
                emit({asn.leftover_pos, asn.leftover_neg});
            else {
                next[p].pos += asn.leftover_pos;
                next[p].neg += asn.leftover_neg;
            }

            assignments[p] = std::move(asn);
        }

        plan.stages.push_back(std::move(assignments));
        while (!next.empty() && next.back().height() == 0)
            next.pop_back();
        prev_err.assign(next.size(), Frac(0, 1));
        for (std::size_t p = 0; p < next.size() && p < cur_err.size(); ++p)
            prev_err[p] = cur_err[p];
        profile = std::move(next);
    }
    plan.profiles.push_back(profile);
    return plan;
}

SearchStats search_stats(const DesignPlan& plan)
{
    SearchStats stats;
    for (const auto& stage : plan.stages)
        for (const auto& asn : stage) {
            if (asn.exact_region)
                continue;
            stats.totals += asn.counters;
            if (asn.counters.visited > 0)
                stats.columns.push_back(asn);
        }
    return stats;
}

std::int64_t PlanCellCounts::fa_total() const
{
    std::int64_t total = 0;
    for (CellKind k : {CellKind::fa_exact, CellKind::fa_pp, CellKind::fa_pn1, CellKind::fa_pn2,
                       CellKind::fa_np1, CellKind::fa_np2, CellKind::fa_nn})
        total += by_kind[static_cast<std::size_t>(k)];
    return total;
}

std::int64_t PlanCellCounts::approx_total() const
{
    std::int64_t total = 0;
    for (CellKind k : {CellKind::fa_pp, CellKind::fa_pn1, CellKind::fa_pn2, CellKind::fa_np1,
                       CellKind::fa_np2, CellKind::fa_nn})
        total += by_kind[static_cast<std::size_t>(k)];
    return total;
}

PlanCellCounts count_cells(const DesignPlan& plan)
{
    PlanCellCounts counts;
    for (const auto& stage : plan.stages)
        for (const auto& asn : stage) {
            for (const auto& cell : asn.cells)
                ++counts.by_kind[static_cast<std::size_t>(cell.kind)];
            if (asn.leftover_pos + asn.leftover_neg == 2)
                ++counts.by_kind[static_cast<std::size_t>(CellKind::ha_exact)];
            else
                counts.pass_bits += asn.leftover_pos + asn.leftover_neg;
        }
    return counts;
}

} // namespace mrsd
