// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "mrsdmul/cells.hpp"
#include "mrsdmul/frac.hpp"
#include "mrsdmul/ppgen.hpp"

namespace mrsd {

// One reduction cell instance inside a column: the kind plus the
// polarity mix it consumes (fixed for approximate cells, free for
// exact ones).
struct CellUse {
    CellKind kind;
    PolarityMix mix;
    bool operator==(const CellUse&) const = default;
};

struct SearchCounters {
    std::int64_t visited{0};     // nodes entered, forced evaluations included
    std::int64_t pruned{0};      // subtrees cut by the compensation bound
    std::int64_t forced_pos{0};  // posibit-only shortcut evaluations
    std::int64_t forced_neg{0};  // negabit-only shortcut evaluations
    SearchCounters& operator+=(const SearchCounters& o)
    {
        visited += o.visited;
        pruned += o.pruned;
        forced_pos += o.forced_pos;
        forced_neg += o.forced_neg;
        return *this;
    }
    bool operator==(const SearchCounters&) const = default;
};

// Bound toggles; disabling any of them must never change a returned
// assignment, only the node counts.
struct SearchOptions {
    bool compensation_bound{true};
    bool posibit_shortcut{true};
    bool negabit_shortcut{true};
};

// The cell multiset chosen for one column at one stage, plus the 0-2
// leftover bits that go to an exact HA or pass through.
struct ColumnAssignment {
    int stage{0};
    int column{0}; // 1-based, column 1 = product LSB
    int pos_count{0};
    int neg_count{0};
    std::vector<CellUse> cells; // FAs only, in search order
    int leftover_pos{0};
    int leftover_neg{0};
    Frac err_in{};
    Frac err_out{};
    bool exact_region{false};
    SearchCounters counters;

    int fa_count() const { return static_cast<int>(cells.size()); }
};

// Minimizes |err_in + sum of cell mean errors| over all feasible cell
// multisets for (pos_count, neg_count) bits; floor((pos+neg)/3) cells
// are always assigned. Ties go to the first solution in branch order
// FA_PP, FA_PN1, FA_PN2, FA_NP1, FA_NP2, FA_NN, then exact FA mixes
// (3P, 2P1N, 1P2N, 3N) when allow_exact_fa is set.
ColumnAssignment assign_column(int pos_count, int neg_count, Frac err_in, bool allow_exact_fa,
                               const CellLibrary& library, const SearchOptions& options = {});

// Full enumeration with the same objective and tie-break; the oracle
// assign_column must match. Throws when pos+neg exceeds the cap.
ColumnAssignment exhaustive_assign(int pos_count, int neg_count, Frac err_in, bool allow_exact_fa,
                                   const CellLibrary& library, int cap = 15);

// Deterministic exact-region assignment: bits sorted posibits first and
// consumed in consecutive triples by exact FAs.
ColumnAssignment exact_assign(int pos_count, int neg_count, Frac err_in);

// Per-stage, per-column reduction schedule for an n-digit multiplier
// with border column b: columns below b take approximate cells, column
// b mixes in the exact FA, columns above b stay exact. Column error
// feeds forward as err_in(t, c) = err_out(t-1, c) + err_out(t, c-1).
struct DesignPlan {
    int digits{0};
    int border{0};
    std::uint64_t library_digest{0};
    std::vector<std::vector<ColumnAssignment>> stages;  // [stage][position]
    std::vector<std::vector<ColumnCount>> profiles;     // entering each stage, plus final

    const std::vector<ColumnCount>& final_profile() const { return profiles.back(); }
    int stage_count() const { return static_cast<int>(stages.size()); }
};

DesignPlan plan_design(int digits, int border, const CellLibrary& library,
                       const SearchOptions& options = {});

struct SearchStats {
    SearchCounters totals;
    // (stage, column, counters) for every searched column.
    std::vector<ColumnAssignment> columns;
};

SearchStats search_stats(const DesignPlan& plan);

// Cell census over a whole plan, HA and pass-throughs included.
struct PlanCellCounts {
    std::int64_t by_kind[8]{};
    std::int64_t pass_bits{0};
    std::int64_t fa_total() const;
    std::int64_t approx_total() const;
};

PlanCellCounts count_cells(const DesignPlan& plan);

} // namespace mrsd
