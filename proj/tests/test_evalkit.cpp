// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "mrsdmul/evalkit.hpp"
#include "mrsdmul/io.hpp"

using namespace mrsd;

namespace {

const CellLibrary& lib()
{
    static const CellLibrary library = derive_default_library();
    return library;
}

MultiplierDesign design_for(int digits, int border)
{
    return MultiplierDesign::build(plan_design(digits, border, lib()), lib());
}

// Straight-line enumeration of all 1024 one-digit pairs, with metric
// arithmetic done longhand; the oracle for run_exhaustive.
struct Enumerated {
    double mred{0}, mared{0}, nmed{0}, nmed_abs{0};
    std::uint64_t skipped{0};
    std::vector<double> res;
};

Enumerated enumerate_pairs(const MultiplierDesign& design)
{
    Enumerated out;
    const double norm = 272.0 * 272.0;
    double re_sum = 0, re_abs = 0, ed = 0, ed_abs = 0;
    for (unsigned pa = 0; pa < 32; ++pa)
        for (unsigned pb = 0; pb < 32; ++pb) {
            const MRSDNumber a(std::vector<MRSDigit>{MRSDigit::from_bits(static_cast<std::uint8_t>(pa))});
            const MRSDNumber b(std::vector<MRSDigit>{MRSDigit::from_bits(static_cast<std::uint8_t>(pb))});
            const double exact = static_cast<double>((a.value() * b.value()).convert_to<long long>());
            const double approx = static_cast<double>(design.evaluate(a, b).value.convert_to<long long>());
            ed += (approx - exact) / norm;
            ed_abs += std::fabs(approx - exact) / norm;
            if (exact == 0) {
                ++out.skipped;
                continue;
            }
            const double re = (approx - exact) / exact;
            out.res.push_back(re);
            re_sum += re;
            re_abs += std::fabs(re);
        }
    out.mred = re_sum / static_cast<double>(1024 - out.skipped);
    out.mared = re_abs / static_cast<double>(1024 - out.skipped);
    out.nmed = ed / 1024.0;
    out.nmed_abs = ed_abs / 1024.0;
    return out;
}

} // namespace

TEST_CASE("exact designs report zero error")
{
    const MultiplierDesign design = design_for(1, 1);
    const ErrorReport ex = run_exhaustive(design);
    CHECK(ex.mred == 0.0);
    CHECK(ex.mared == 0.0);
    CHECK(ex.nmed_signed == 0.0);
    CHECK(ex.nmed_abs == 0.0);
    CHECK(ex.max_abs_error == 0);
    CHECK(ex.histogram.bins[100] == ex.histogram.total());
    CHECK(ex.skipped_zero_exact == 63);

    const ErrorReport mc = run_monte_carlo(design_for(2, 1), 10000, 5);
    CHECK(mc.mred == 0.0);
    CHECK(mc.mared == 0.0);
    CHECK(mc.nmed_abs == 0.0);
}

TEST_CASE("exhaustive metrics match direct enumeration")
{
    // Border 4 injects approximate cells into the low columns.
    const MultiplierDesign design = design_for(1, 4);
    const DesignStats st = design.stats();
    CHECK(st.counts[static_cast<std::size_t>(CellKind::fa_pp)] >= 1);

    const ErrorReport report = run_exhaustive(design);
    const Enumerated oracle = enumerate_pairs(design);
    CHECK(report.samples == 1024);
    CHECK(report.skipped_zero_exact == 63);
    CHECK(report.mared > 0.0);
    CHECK(report.mred == doctest::Approx(oracle.mred).epsilon(1e-12));
    CHECK(report.mared == doctest::Approx(oracle.mared).epsilon(1e-12));
    CHECK(report.nmed_signed == doctest::Approx(oracle.nmed).epsilon(1e-12));
    CHECK(report.nmed_abs == doctest::Approx(oracle.nmed_abs).epsilon(1e-12));
    CHECK(report.normalizer == BigInt(272) * 272);

    CHECK_THROWS_AS(run_exhaustive(design_for(2, 1)), std::invalid_argument);
}

TEST_CASE("metric identities hold on every report")
{
    for (int border : {1, 4, 6, 9}) {
        const ErrorReport r = run_monte_carlo(design_for(2, border), 5000, 99);
        CHECK(std::fabs(r.mred) <= r.mared);
        CHECK(std::fabs(r.nmed_signed) <= r.nmed_abs);
        CHECK(r.histogram.total() + static_cast<std::int64_t>(r.skipped_zero_exact) ==
              static_cast<std::int64_t>(r.samples));
    }
}

TEST_CASE("reports are deterministic and worker-count independent")
{
    const MultiplierDesign design = design_for(2, 8);
    const ErrorReport a = run_monte_carlo(design, 20000, 321, 1);
    const ErrorReport b = run_monte_carlo(design, 20000, 321, 1);
    const ErrorReport c = run_monte_carlo(design, 20000, 321, 4);
    CHECK(io::report_to_csv(a) == io::report_to_csv(b));
    CHECK(io::report_to_csv(a) == io::report_to_csv(c));
    CHECK(io::histogram_to_csv(a) == io::histogram_to_csv(c));

    const ErrorReport d = run_monte_carlo(design, 20000, 322, 1);
    CHECK(io::report_to_csv(a) != io::report_to_csv(d));
}

TEST_CASE("monte carlo converges to the exhaustive metrics")
{
    const MultiplierDesign design = design_for(1, 4);
    const ErrorReport ex = run_exhaustive(design);
    const Enumerated oracle = enumerate_pairs(design);

    // Population standard deviations from the full pair enumeration.
    double var_re = 0, var_abs = 0;
    for (double re : oracle.res) {
        var_re += (re - oracle.mred) * (re - oracle.mred);
        var_abs += (std::fabs(re) - oracle.mared) * (std::fabs(re) - oracle.mared);
    }
    var_re /= static_cast<double>(oracle.res.size());
    var_abs /= static_cast<double>(oracle.res.size());

    const std::uint64_t n = 1000000;
    const ErrorReport mc = run_monte_carlo(design, n, 777, 4);
    const double n_used = static_cast<double>(n - mc.skipped_zero_exact);
    CHECK(std::fabs(mc.mred - ex.mred) <= 3.0 * std::sqrt(var_re / n_used));
    CHECK(std::fabs(mc.mared - ex.mared) <= 3.0 * std::sqrt(var_abs / n_used));

    // Zero-product draws are binomial with p = 63/1024.
    const double p = 63.0 / 1024.0;
    const double sd = std::sqrt(p * (1 - p) * static_cast<double>(n));
    CHECK(std::fabs(static_cast<double>(mc.skipped_zero_exact) - p * static_cast<double>(n)) <= 3.0 * sd);
}

TEST_CASE("histogram binning")
{
    Histogram h;
    h.add(0.0);
    h.add(0.001);
    h.add(-0.001);
    CHECK(h.bins[100] == 3);
    h.add(-1.0);
    CHECK(h.bins[0] == 1);
    h.add(1.0);
    CHECK(h.bins[200] == 1);
    h.add(-5.0);
    h.add(7.0);
    CHECK(h.underflow == 1);
    CHECK(h.overflow == 1);
    CHECK(h.bins[0] == 2);
    CHECK(h.bins[200] == 2);
    CHECK(h.total() == 7);
    // In-range mode ignores the clamped tails.
    CHECK(h.mode_bin() == 100);
    CHECK(Histogram::bin_center(100) == doctest::Approx(0.0).epsilon(1e-9));

    CHECK_THROWS_AS(run_monte_carlo(design_for(1, 1), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_monte_carlo(design_for(1, 1), 10, 1, 0), std::invalid_argument);
}

TEST_CASE("wider borders keep the mode near zero")
{
    const ErrorReport r = run_monte_carlo(design_for(2, 10), 30000, 2026);
    CHECK(std::fabs(r.mred) < r.mared);
    CHECK(std::fabs(Histogram::bin_center(r.histogram.mode_bin())) <= 0.05);
}
