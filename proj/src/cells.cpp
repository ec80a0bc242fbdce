// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include "mrsdmul/cells.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <stdexcept>

namespace mrsd {

std::string_view cell_name(CellKind kind)
{
    switch (kind) {
    case CellKind::fa_exact: return "FA_EXACT";
    case CellKind::ha_exact: return "HA_EXACT";
    case CellKind::fa_pp: return "FA_PP";
    case CellKind::fa_pn1: return "FA_PN1";
    case CellKind::fa_pn2: return "FA_PN2";
    case CellKind::fa_np1: return "FA_NP1";
    case CellKind::fa_np2: return "FA_NP2";
    case CellKind::fa_nn: return "FA_NN";
    }
    throw std::logic_error("cell_name: bad kind");
}

CellKind cell_kind_from_name(std::string_view name)
{
    for (CellKind k : {CellKind::fa_exact, CellKind::ha_exact, CellKind::fa_pp, CellKind::fa_pn1,
                       CellKind::fa_pn2, CellKind::fa_np1, CellKind::fa_np2, CellKind::fa_nn})
        if (cell_name(k) == name)
            return k;
    throw std::invalid_argument("unknown cell name: " + std::string(name));
}

bool is_approximate(CellKind kind)
{
    return kind != CellKind::fa_exact && kind != CellKind::ha_exact;
}

std::pair<Polarity, Polarity> exact_output_polarities(const PolarityMix& mix)
{
    if (mix.pos < 0 || mix.neg < 0 || (mix.arity() != 2 && mix.arity() != 3))
        throw std::invalid_argument("exact_output_polarities: arity must be 2 or 3");
    const Polarity P = Polarity::posibit;
    const Polarity N = Polarity::negabit;
    if (mix.arity() == 3) {
        switch (mix.neg) {
        case 0: return {P, P};
        case 1: return {N, P};
        case 2: return {P, N};
        case 3: return {N, N};
        }
    }
    switch (mix.neg) {
    case 0: return {P, P};
    case 1: return {N, P};
    case 2: return {P, N};
    }
    throw std::logic_error("exact_output_polarities: unreachable");
}

namespace {

Frac compute_mean_error(const CellSpec& cell)
{
    std::int64_t total = 0;
    for (int r = 0; r < cell.rows(); ++r)
        total += cell.row_error(static_cast<unsigned>(r));
    return Frac(total, cell.rows());
}

} // namespace

CellSpec::CellSpec(CellKind kind, PolarityMix mix, std::vector<RowOutput> table)
    : kind_(kind), mix_(mix), table_(std::move(table)), mean_error_(0, 1), literal_cost_(0)
{
    const auto [sp, cp] = exact_output_polarities(mix_);
    sum_pol_ = sp;
    carry_pol_ = cp;
    if (table_.size() != (1u << mix_.arity()))
        throw std::invalid_argument("CellSpec: table must have 2^arity rows");
    mean_error_ = compute_mean_error(*this);

    unsigned sum_mask = 0;
    unsigned carry_mask = 0;
    for (unsigned r = 0; r < table_.size(); ++r) {
        if (table_[r].sum)
            sum_mask |= 1u << r;
        if (table_[r].carry)
            carry_mask |= 1u << r;
    }
    literal_cost_ = min_sop_literals(sum_mask, mix_.arity()) + min_sop_literals(carry_mask, mix_.arity());
}

RowOutput CellSpec::apply(unsigned row) const
{
    if (row >= table_.size())
        throw std::out_of_range("CellSpec::apply: row out of range");
    return table_[row];
}

int CellSpec::exact_row_sum(unsigned row) const
{
    // Inputs ordered posibits first; bit i of the row feeds input i.
    int total = 0;
    for (int i = 0; i < mix_.arity(); ++i) {
        const bool stored = (row >> i) & 1u;
        const Polarity pol = i < mix_.pos ? Polarity::posibit : Polarity::negabit;
        total += bit_value(pol, stored);
    }
    return total;
}

int CellSpec::row_error(unsigned row) const
{
    const RowOutput out = table_[row];
    const int got = bit_value(sum_pol_, out.sum) + 2 * bit_value(carry_pol_, out.carry);
    return got - exact_row_sum(row);
}

int CellSpec::max_abs_row_error() const
{
    int worst = 0;
    for (int r = 0; r < rows(); ++r)
        worst = std::max(worst, std::abs(row_error(static_cast<unsigned>(r))));
    return worst;
}

int CellSpec::erroneous_rows() const
{
    int n = 0;
    for (int r = 0; r < rows(); ++r)
        if (row_error(static_cast<unsigned>(r)) != 0)
            ++n;
    return n;
}

CellSpec exact_fa(const PolarityMix& mix)
{
    if (mix.arity() != 3)
        throw std::invalid_argument("exact_fa: arity must be 3");
    std::vector<RowOutput> table(8);
    for (unsigned r = 0; r < 8; ++r) {
        const int ones = std::popcount(r);
        table[r] = {static_cast<bool>(ones & 1), ones >= 2};
    }
    return CellSpec(CellKind::fa_exact, mix, std::move(table));
}

CellSpec exact_ha(const PolarityMix& mix)
{
    if (mix.arity() != 2)
        throw std::invalid_argument("exact_ha: arity must be 2");
    std::vector<RowOutput> table(4);
    for (unsigned r = 0; r < 4; ++r) {
        const bool a = r & 1u;
        const bool b = (r >> 1) & 1u;
        table[r] = {a != b, a && b};
    }
    return CellSpec(CellKind::ha_exact, mix, std::move(table));
}

const CellSpec& CellLibrary::by_kind(CellKind kind) const
{
    for (const auto& c : cells)
        if (c.kind() == kind)
            return c;
    throw std::invalid_argument(std::string("library has no cell ") + std::string(cell_name(kind)));
}

std::uint64_t CellLibrary::digest() const
{
    std::string all;
    for (const auto& c : cells)
        all += canonical_cell_text(c);
    return fnv1a64(all);
}

const std::array<std::pair<PolarityMix, Frac>, 6>& default_cell_targets()
{
    static const std::array<std::pair<PolarityMix, Frac>, 6> targets = {{
        {{3, 0}, Frac(1, 4)},
        {{2, 1}, Frac(1, 4)},
        {{2, 1}, Frac(-1, 2)},
        {{1, 2}, Frac(-1, 4)},
        {{1, 2}, Frac(1, 2)},
        {{0, 3}, Frac(-1, 4)},
    }};
    return targets;
}

namespace {

const std::array<CellKind, 6> kApproxKinds = {CellKind::fa_pp,  CellKind::fa_pn1, CellKind::fa_pn2,
                                              CellKind::fa_np1, CellKind::fa_np2, CellKind::fa_nn};

std::vector<RowOutput> decode_table(unsigned code)
{
    std::vector<RowOutput> table(8);
    for (unsigned r = 0; r < 8; ++r) {
        table[r].sum = (code >> (2 * r)) & 1u;
        table[r].carry = (code >> (2 * r + 1)) & 1u;
    }
    return table;
}

bool table_less(const std::vector<RowOutput>& a, const std::vector<RowOutput>& b)
{
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a[r].sum != b[r].sum)
            return !a[r].sum;
        if (a[r].carry != b[r].carry)
            return !a[r].carry;
    }
    return false;
}

CellSpec derive_cell(CellKind kind, const PolarityMix& mix, const Frac& target)
{
    // Precompute per-row exact sums and the value offset of the output
    // polarities; candidate tables are ranked by erroneous-row count,
    // then literal cost, then lexicographic table order.
    const auto [sum_pol, carry_pol] = exact_output_polarities(mix);
    const int offset = (sum_pol == Polarity::negabit ? -1 : 0) + (carry_pol == Polarity::negabit ? -2 : 0);
    std::array<int, 8> exact_sum{};
    for (unsigned r = 0; r < 8; ++r) {
        int total = 0;
        for (int i = 0; i < 3; ++i)
            total += bit_value(i < mix.pos ? Polarity::posibit : Polarity::negabit, (r >> i) & 1u);
        exact_sum[r] = total;
    }
    // Target mean as a total row error over 8 rows; must be integral.
    if ((8 * target.num) % target.den != 0)
        throw std::invalid_argument("derive_cell: target mean not a multiple of 1/8");
    const std::int64_t want_total = 8 * target.num / target.den;

    std::vector<unsigned> feasible;
    int best_err_rows = std::numeric_limits<int>::max();
    for (unsigned code = 0; code < (1u << 16); ++code) {
        int total = 0;
        int err_rows = 0;
        bool ok = true;
        for (unsigned r = 0; r < 8 && ok; ++r) {
            const int s = (code >> (2 * r)) & 1u;
            const int c = (code >> (2 * r + 1)) & 1u;
            const int e = offset + s + 2 * c - exact_sum[r];
            if (e < -1 || e > 1) {
                ok = false;
                break;
            }
            total += e;
            if (e != 0)
                ++err_rows;
        }
        if (!ok || total != want_total || err_rows > best_err_rows)
            continue;
        if (err_rows < best_err_rows) {
            best_err_rows = err_rows;
            feasible.clear();
        }
        feasible.push_back(code);
    }
    if (feasible.empty())
        throw std::logic_error("derive_cell: no feasible table");

    const CellSpec* best = nullptr;
    std::vector<CellSpec> candidates;
    candidates.reserve(feasible.size());
    for (unsigned code : feasible)
        candidates.emplace_back(kind, mix, decode_table(code));
    for (const auto& cand : candidates) {
        if (!best || cand.literal_cost() < best->literal_cost() ||
            (cand.literal_cost() == best->literal_cost() && table_less(cand.table(), best->table())))
            best = &cand;
    }
    return *best;
}

} // namespace

CellLibrary derive_default_library()
{
    CellLibrary lib;
    const auto& targets = default_cell_targets();
    for (std::size_t i = 0; i < targets.size(); ++i)
        lib.cells.push_back(derive_cell(kApproxKinds[i], targets[i].first, targets[i].second));
    return lib;
}

int min_sop_literals(unsigned on_mask, int n_vars)
{
    const unsigned n_rows = 1u << n_vars;
    const unsigned full = (1u << n_rows) - 1u;
    on_mask &= full;
    if (on_mask == 0 || on_mask == full)
        return 0;

    // Product terms: per variable 0 = free, 1 = positive, 2 = negated.
    struct Term {
        unsigned cover;
        int literals;
    };
    std::vector<Term> terms;
    int n_terms = 1;
    for (int i = 0; i < n_vars; ++i)
        n_terms *= 3;
    for (int code = 0; code < n_terms; ++code) {
        int c = code;
        unsigned cover = 0;
        int lits = 0;
        for (unsigned row = 0; row < n_rows; ++row) {
            bool match = true;
            int cc = c;
            for (int v = 0; v < n_vars; ++v) {
                const int spec = cc % 3;
                cc /= 3;
                const bool bit = (row >> v) & 1u;
                if ((spec == 1 && !bit) || (spec == 2 && bit)) {
                    match = false;
                    break;
                }
            }
            if (match)
                cover |= 1u << row;
        }
        for (int v = 0; v < n_vars; ++v) {
            if (c % 3 != 0)
                ++lits;
            c /= 3;
        }
        if (cover != 0 && (cover & ~on_mask) == 0)
            terms.push_back({cover, lits});
    }

    std::vector<int> memo(1u << n_rows, -1);
    std::function<int(unsigned)> solve = [&](unsigned uncovered) -> int {
        if (uncovered == 0)
            return 0;
        if (memo[uncovered] >= 0)
            return memo[uncovered];
        const unsigned pick = uncovered & (~uncovered + 1u); // lowest uncovered minterm
        int best = std::numeric_limits<int>::max() / 2;
        for (const auto& t : terms)
            if (t.cover & pick)
                best = std::min(best, t.literals + solve(uncovered & ~t.cover));
        memo[uncovered] = best;
        return best;
    };
    return solve(on_mask);
}

std::uint64_t fnv1a64(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string canonical_cell_text(const CellSpec& cell)
{
    std::string s(cell_name(cell.kind()));
    s += "|P";
    s += std::to_string(cell.mix().pos);
    s += "N";
    s += std::to_string(cell.mix().neg);
    s += '|';
    s += polarity_char(cell.sum_polarity());
    s += polarity_char(cell.carry_polarity());
    s += '|';
    for (const auto& row : cell.table()) {
        s += row.sum ? '1' : '0';
        s += row.carry ? '1' : '0';
    }
    s += '|';
    s += cell.mean_error().to_string();
    s += '\n';
    return s;
}

} // namespace mrsd
