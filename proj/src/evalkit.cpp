// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include "mrsdmul/evalkit.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace mrsd {

void Histogram::add(double re)
{
    int index = static_cast<int>(std::floor((re + 1.0) * kBins / 2.0));
    if (re < -1.0) {
        ++underflow;
        index = 0;
    } else if (re > 1.0) {
        ++overflow;
        index = kBins - 1;
    } else if (index >= kBins) {
        index = kBins - 1; // re == 1.0 lands on the upper edge
    } else if (index < 0) {
        index = 0;
    }
    ++bins[static_cast<std::size_t>(index)];
}

std::int64_t Histogram::total() const
{
    std::int64_t n = 0;
    for (auto c : bins)
        n += c;
    return n;
}

int Histogram::mode_bin() const
{
    // Mode of the in-range distribution. The clamped out-of-range mass
    // parked in the edge bins is bookkeeping, not shape, so it is
    // subtracted before comparing.
    const auto in_range = [&](int i) {
        std::int64_t c = bins[static_cast<std::size_t>(i)];
        if (i == 0)
            c -= underflow;
        if (i == kBins - 1)
            c -= overflow;
        return c;
    };
    int best = 0;
    for (int i = 1; i < kBins; ++i)
        if (in_range(i) > in_range(best))
            best = i;
    return best;
}

BigInt error_normalizer(int digits)
{
    const auto [lo, hi] = MRSDNumber::dynamic_range(digits);
    const BigInt mag = std::max(BigInt(-lo), hi);
    return mag * mag;
}

namespace {

// Compensated accumulation keeps 1e6-sample sums exact to well below
// the metric scales of interest.
struct KahanSum {
    long double sum{0};
    long double carry{0};
    void add(long double x)
    {
        const long double y = x - carry;
        const long double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct BlockResult {
    KahanSum re_sum;
    KahanSum re_abs_sum;
    KahanSum ed_norm_sum;
    KahanSum ed_norm_abs_sum;
    std::uint64_t used{0};
    std::uint64_t skipped{0};
    BigInt max_abs_error{0};
    double re_min{std::numeric_limits<double>::infinity()};
    double re_max{-std::numeric_limits<double>::infinity()};
    Histogram histogram;
};

void accumulate_sample(BlockResult& block, const BigInt& exact, const BigInt& approx,
                       long double inv_normalizer)
{
    const BigInt diff = approx - exact;
    const long double diff_ld = diff.convert_to<long double>();
    block.ed_norm_sum.add(diff_ld * inv_normalizer);
    block.ed_norm_abs_sum.add(std::fabs(diff_ld) * inv_normalizer);
    const BigInt abs_diff = diff < 0 ? BigInt(-diff) : diff;
    if (abs_diff > block.max_abs_error)
        block.max_abs_error = abs_diff;
    if (exact == 0) {
        ++block.skipped;
        return;
    }
    ++block.used;
    const long double re_ld = diff_ld / exact.convert_to<long double>();
    const double re = static_cast<double>(re_ld);
    block.re_sum.add(re_ld);
    block.re_abs_sum.add(std::fabs(re_ld));
    block.re_min = std::min(block.re_min, re);
    block.re_max = std::max(block.re_max, re);
    block.histogram.add(re);
}

ErrorReport merge_blocks(const std::vector<BlockResult>& blocks, std::uint64_t n_samples,
                         const MultiplierDesign& design)
{
    ErrorReport report;
    report.digits = design.digits();
    report.border = design.plan().border;
    report.library_digest = design.plan().library_digest;
    report.samples = n_samples;
    report.normalizer = error_normalizer(design.digits());

    KahanSum re_sum;
    KahanSum re_abs_sum;
    KahanSum ed_sum;
    KahanSum ed_abs_sum;
    std::uint64_t used = 0;
    double re_min = std::numeric_limits<double>::infinity();
    double re_max = -std::numeric_limits<double>::infinity();
    for (const auto& block : blocks) {
        re_sum.add(block.re_sum.sum);
        re_abs_sum.add(block.re_abs_sum.sum);
        ed_sum.add(block.ed_norm_sum.sum);
        ed_abs_sum.add(block.ed_norm_abs_sum.sum);
        used += block.used;
        report.skipped_zero_exact += block.skipped;
        if (block.max_abs_error > report.max_abs_error)
            report.max_abs_error = block.max_abs_error;
        re_min = std::min(re_min, block.re_min);
        re_max = std::max(re_max, block.re_max);
        for (int i = 0; i < Histogram::kBins; ++i)
            report.histogram.bins[static_cast<std::size_t>(i)] +=
                block.histogram.bins[static_cast<std::size_t>(i)];
        report.histogram.underflow += block.histogram.underflow;
        report.histogram.overflow += block.histogram.overflow;
    }
    if (used > 0) {
        report.mred = static_cast<double>(re_sum.sum / static_cast<long double>(used));
        report.mared = static_cast<double>(re_abs_sum.sum / static_cast<long double>(used));
        report.re_min = re_min;
        report.re_max = re_max;
    }
    if (n_samples > 0) {
        report.nmed_signed = static_cast<double>(ed_sum.sum / static_cast<long double>(n_samples));
        report.nmed_abs = static_cast<double>(ed_abs_sum.sum / static_cast<long double>(n_samples));
    }
    return report;
}

constexpr std::uint64_t kBlockSize = 8192;

} // namespace

ErrorReport run_monte_carlo(const MultiplierDesign& design, std::uint64_t n_samples, std::uint64_t seed,
                            int workers)
{
    if (n_samples < 1)
        throw std::invalid_argument("run_monte_carlo: need at least one sample");
    if (workers < 1)
        throw std::invalid_argument("run_monte_carlo: need at least one worker");

    const std::uint64_t n_blocks = (n_samples + kBlockSize - 1) / kBlockSize;
    std::vector<BlockResult> blocks(n_blocks);
    const long double inv_norm = 1.0L / error_normalizer(design.digits()).convert_to<long double>();

    std::atomic<std::uint64_t> next_block{0};
    const auto worker = [&]() {
        for (;;) {
            const std::uint64_t blk = next_block.fetch_add(1);
            if (blk >= n_blocks)
                return;
            auto rng = make_stream(seed, blk);
            const std::uint64_t begin = blk * kBlockSize;
            const std::uint64_t end = std::min(begin + kBlockSize, n_samples);
            BlockResult& out = blocks[blk];
            for (std::uint64_t i = begin; i < end; ++i) {
                const MRSDNumber a = MRSDNumber::random(design.digits(), rng);
                const MRSDNumber b = MRSDNumber::random(design.digits(), rng);
                const BigInt exact = a.value() * b.value();
                const EvalResult ev = design.evaluate(a, b);
                accumulate_sample(out, exact, ev.value, inv_norm);
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    ErrorReport report = merge_blocks(blocks, n_samples, design);
    report.source = "monte-carlo";
    report.seed = seed;
    return report;
}

ErrorReport run_exhaustive(const MultiplierDesign& design)
{
    if (design.digits() != 1)
        throw std::invalid_argument("run_exhaustive: only one-digit designs are enumerable");
    std::vector<BlockResult> blocks(1);
    const long double inv_norm = 1.0L / error_normalizer(1).convert_to<long double>();
    for (unsigned pa = 0; pa < 32; ++pa)
        for (unsigned pb = 0; pb < 32; ++pb) {
            const MRSDNumber a(std::vector<MRSDigit>{MRSDigit::from_bits(static_cast<std::uint8_t>(pa))});
            const MRSDNumber b(std::vector<MRSDigit>{MRSDigit::from_bits(static_cast<std::uint8_t>(pb))});
            const BigInt exact = a.value() * b.value();
            const EvalResult ev = design.evaluate(a, b);
            accumulate_sample(blocks[0], exact, ev.value, inv_norm);
        }
    ErrorReport report = merge_blocks(blocks, 1024, design);
    report.source = "exhaustive";
    report.seed = 0;
    return report;
}

const Histogram& histogram(const ErrorReport& report)
{
    return report.histogram;
}

} // namespace mrsd
