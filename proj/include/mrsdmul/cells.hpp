// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrsdmul/digit.hpp"
#include "mrsdmul/frac.hpp"

namespace mrsd {

enum class CellKind : std::uint8_t {
    fa_exact,
    ha_exact,
    fa_pp,
    fa_pn1,
    fa_pn2,
    fa_np1,
    fa_np2,
    fa_nn,
};

std::string_view cell_name(CellKind kind);
CellKind cell_kind_from_name(std::string_view name);
bool is_approximate(CellKind kind);

// Input polarity multiset of a reduction cell (arity 2 or 3).
struct PolarityMix {
    int pos{0};
    int neg{0};
    int arity() const { return pos + neg; }
    bool operator==(const PolarityMix&) const = default;
};

// Output polarities forced by the input mix:
//   3P -> (P,P)   2P1N -> (N,P)   1P2N -> (P,N)   3N -> (N,N)
//   2P -> (P,P)   1P1N -> (N,P)   2N -> (P,N)
// Throws for arity outside {2,3}.
std::pair<Polarity, Polarity> exact_output_polarities(const PolarityMix& mix);

struct RowOutput {
    bool sum{false};
    bool carry{false};
    bool operator==(const RowOutput&) const = default;
};

// One reduction cell: an input polarity mix, output polarities, and a
// full stored-bit truth table. Inputs are ordered posibits first, then
// negabits; row index r feeds input i with bit (r >> i) & 1.
class CellSpec {
public:
    CellSpec(CellKind kind, PolarityMix mix, std::vector<RowOutput> table);

    CellKind kind() const { return kind_; }
    const PolarityMix& mix() const { return mix_; }
    Polarity sum_polarity() const { return sum_pol_; }
    Polarity carry_polarity() const { return carry_pol_; }
    int rows() const { return static_cast<int>(table_.size()); }
    const std::vector<RowOutput>& table() const { return table_; }

    RowOutput apply(unsigned row) const;

    // value(sum) + 2*value(carry) - sum of input values, in column units.
    int row_error(unsigned row) const;
    int exact_row_sum(unsigned row) const;

    Frac mean_error() const { return mean_error_; }
    int max_abs_row_error() const;
    int erroneous_rows() const;

    // Minimal two-level (SOP) literal count of sum plus carry; the
    // gate-cost proxy used by design statistics.
    int literal_cost() const { return literal_cost_; }

    bool operator==(const CellSpec& o) const
    {
        return kind_ == o.kind_ && mix_ == o.mix_ && table_ == o.table_;
    }

private:
    CellKind kind_;
    PolarityMix mix_;
    Polarity sum_pol_;
    Polarity carry_pol_;
    std::vector<RowOutput> table_;
    Frac mean_error_;
    int literal_cost_;
};

// Standard binary FA/HA stored-bit tables; value-preserving for every
// polarity mix under the inverted negabit encoding.
CellSpec exact_fa(const PolarityMix& mix);
CellSpec exact_ha(const PolarityMix& mix);

// The six approximate cells in branch order.
struct CellLibrary {
    std::vector<CellSpec> cells;

    const CellSpec& by_kind(CellKind kind) const;
    std::uint64_t digest() const;
};

// Targets: (3P,+1/4) (2P1N,+1/4) (2P1N,-1/2) (1P2N,-1/4) (1P2N,+1/2) (3N,-1/4).
// For each slot, searches all 4^8 output tables for those hitting the
// target mean exactly with every row error in {-1,0,+1}, then keeps the
// winner by fewest erroneous rows, then lowest two-level literal count,
// then lexicographically smallest table.
CellLibrary derive_default_library();

// Expected (mix, mean error) per approximate slot, in branch order.
const std::array<std::pair<PolarityMix, Frac>, 6>& default_cell_targets();

// Minimal SOP literal count of a boolean function over n_vars inputs
// given as an on-set bitmask. Exposed for tests.
int min_sop_literals(unsigned on_mask, int n_vars);

std::uint64_t fnv1a64(std::string_view data);

// Canonical text form used for digests and determinism checks.
std::string canonical_cell_text(const CellSpec& cell);

} // namespace mrsd
