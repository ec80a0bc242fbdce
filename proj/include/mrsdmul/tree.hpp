// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mrsdmul/cells.hpp"
#include "mrsdmul/digit.hpp"
#include "mrsdmul/dse.hpp"
#include "mrsdmul/ppgen.hpp"

namespace mrsd {

// One cell instance bound to concrete bit slots. Slots index the
// ordered bit list of a column at a given stage; outputs are slots in
// the next stage (sum in the same column, carry one column up).
struct WiredCell {
    CellKind kind;
    PolarityMix mix;
    int cell_index{-1};                    // into the design's cell table
    std::array<int, 3> inputs{-1, -1, -1}; // input slot per port, -1 unused
    int sum_slot{-1};
    int carry_slot{-1};
};

struct WiredColumn {
    std::vector<Polarity> slots;            // bits entering this column, in order
    std::vector<WiredCell> cells;           // FAs first, then the leftover HA
    std::vector<std::pair<int, int>> passes; // (slot here, slot in next stage)
};

struct StageWiring {
    std::vector<WiredColumn> columns;
};

struct DesignStats {
    std::int64_t counts[8]{};       // indexed by CellKind
    std::int64_t pass_bits{0};
    double fa_usage_pct[8]{};       // share per FA kind over all FAs, percent
    std::int64_t gate_literals{0};  // two-level literal proxy over all cells
    int depth_stages{0};
};

struct EvalResult {
    MRSDNumber result;
    BigInt value;
};

// A DesignPlan bound to a concrete, deterministic wiring. Within a
// column, bits are consumed posibits first (oldest first), then
// negabits; a stage's outputs enter the next stage as carries from the
// column below, then this column's sums, then its pass-throughs.
class MultiplierDesign {
public:
    static MultiplierDesign build(DesignPlan plan, CellLibrary library);

    int digits() const { return plan_.digits; }
    int result_digits() const { return 2 * plan_.digits + 1; }
    const DesignPlan& plan() const { return plan_; }
    const CellLibrary& library() const { return library_; }
    // One entry per reduction stage, plus a trailing cell-free entry
    // describing the surviving rows.
    const std::vector<StageWiring>& wiring() const { return wiring_; }
    const std::vector<CellSpec>& cell_table() const { return cells_; }

    std::uint64_t wiring_digest() const;

    EvalResult evaluate(const MRSDNumber& a, const MRSDNumber& b) const;

    DesignStats stats() const;

private:
    MultiplierDesign() = default;

    int cell_index_for(CellKind kind, const PolarityMix& mix);

    DesignPlan plan_;
    CellLibrary library_;
    std::vector<StageWiring> wiring_;
    std::vector<CellSpec> cells_;
};

// Sums the surviving bits (at most two per column) and re-encodes the
// exact total as a result_digits-wide number. Throws std::logic_error
// if the total falls outside that width's range.
MRSDNumber finalize_rows(const std::vector<TypedBit>& bits, int result_digits);

// Value-preserving re-encode of a 2N+1 digit product into 2N digits;
// empty when the value needs the wide form.
std::optional<MRSDNumber> compress_result(const MRSDNumber& x);

} // namespace mrsd
