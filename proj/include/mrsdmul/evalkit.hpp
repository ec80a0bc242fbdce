// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "mrsdmul/digit.hpp"
#include "mrsdmul/tree.hpp"

namespace mrsd {

// Relative-error histogram: 201 uniform bins across [-1, 1]. Samples
// outside the range are clamped into the edge bins and also counted
// separately.
struct Histogram {
    static constexpr int kBins = 201;
    std::array<std::int64_t, kBins> bins{};
    std::int64_t underflow{0};
    std::int64_t overflow{0};

    static double bin_low(int index) { return -1.0 + 2.0 * index / kBins; }
    static double bin_high(int index) { return -1.0 + 2.0 * (index + 1) / kBins; }
    static double bin_center(int index) { return -1.0 + 2.0 * (index + 0.5) / kBins; }

    void add(double re);
    std::int64_t total() const;
    // Mode of the in-range distribution (clamped tail mass excluded
    // from the edge bins); lowest index on ties.
    int mode_bin() const;
};

struct ErrorReport {
    std::string source;       // "monte-carlo" or "exhaustive"
    int digits{0};
    int border{0};
    std::uint64_t library_digest{0};
    std::uint64_t samples{0};
    std::uint64_t seed{0};
    std::uint64_t skipped_zero_exact{0}; // excluded from MRED/MARED and the histogram

    double mred{0};        // mean of (approx - exact) / exact, zero-exact samples skipped
    double mared{0};       // mean of |approx - exact| / |exact|
    double nmed_signed{0}; // mean of (approx - exact) / normalizer, all samples
    double nmed_abs{0};
    BigInt normalizer;     // max product magnitude for the operand width
    BigInt max_abs_error;
    double re_min{0};
    double re_max{0};
    Histogram histogram;
};

// Maximum product magnitude: square of the larger dynamic-range bound
// of the operand width. The NMED normalizer, recorded in every report.
BigInt error_normalizer(int digits);

// Draws operand pairs from seeded substreams (fixed 8192-sample blocks,
// one generator per block) and merges block results in block order, so
// the report is identical for any worker count.
ErrorReport run_monte_carlo(const MultiplierDesign& design, std::uint64_t n_samples, std::uint64_t seed,
                            int workers = 1);

// All 1024 operand pairs of a one-digit design.
ErrorReport run_exhaustive(const MultiplierDesign& design);

const Histogram& histogram(const ErrorReport& report);

} // namespace mrsd
