// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: derive or inspect cell libraries, design
// multipliers, evaluate accuracy, and run the bundled self checks.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "mrsdmul/cells.hpp"
#include "mrsdmul/dse.hpp"
#include "mrsdmul/evalkit.hpp"
#include "mrsdmul/io.hpp"
#include "mrsdmul/tree.hpp"
#include "mrsdmul/verify.hpp"

namespace {

mrsd::CellLibrary obtain_library(const std::string& path)
{
    if (path.empty())
        return mrsd::derive_default_library();
    return mrsd::io::load_library(path);
}

void print_library(const mrsd::CellLibrary& library)
{
    std::printf("%-8s %-6s %-4s %-6s %-10s %-8s %s\n", "cell", "inputs", "sum", "carry", "mean_err",
                "err_rows", "literals");
    for (const auto& cell : library.cells) {
        std::string inputs;
        for (int i = 0; i < cell.mix().pos; ++i)
            inputs += 'P';
        for (int i = 0; i < cell.mix().neg; ++i)
            inputs += 'N';
        std::printf("%-8s %-6s %-4c %-6c %-10s %-8d %d\n", std::string(mrsd::cell_name(cell.kind())).c_str(),
                    inputs.c_str(), mrsd::polarity_char(cell.sum_polarity()),
                    mrsd::polarity_char(cell.carry_polarity()), cell.mean_error().to_string().c_str(),
                    cell.erroneous_rows(), cell.literal_cost());
    }
    std::printf("library digest: %s\n", mrsd::io::digest_string(library.digest()).c_str());
}

int cmd_cells(const std::string& library_path, const std::string& out)
{
    const auto library = obtain_library(library_path);
    print_library(library);
    if (!out.empty()) {
        mrsd::io::save_library(library, out);
        std::printf("wrote %s\n", out.c_str());
    }
    return 0;
}

int cmd_design(int digits, int border, const std::string& library_path, const std::string& out,
               const std::string& stats_out, const std::string& format)
{
    const auto library = obtain_library(library_path);
    const auto plan = mrsd::plan_design(digits, border, library);
    const auto design = mrsd::MultiplierDesign::build(plan, library);
    const auto stats = design.stats();

    if (!out.empty()) {
        mrsd::io::save_design(design, out);
        std::printf("wrote %s\n", out.c_str());
    }
    const std::string stats_text = format == "csv" ? mrsd::io::stats_to_csv(stats, plan)
                                                   : mrsd::io::stats_to_json(stats, plan).dump(2) + "\n";
    if (!stats_out.empty()) {
        mrsd::io::write_text_file(stats_out, stats_text);
        std::printf("wrote %s\n", stats_out.c_str());
    } else {
        std::fputs(stats_text.c_str(), stdout);
    }
    const auto pruned = mrsd::search_stats(plan).totals;
    std::printf("search: visited=%lld pruned=%lld forced_pos=%lld forced_neg=%lld\n",
                static_cast<long long>(pruned.visited), static_cast<long long>(pruned.pruned),
                static_cast<long long>(pruned.forced_pos), static_cast<long long>(pruned.forced_neg));
    return 0;
}

int cmd_eval(const std::string& design_path, const std::string& library_path, std::uint64_t samples,
             std::uint64_t seed, bool exhaustive, int workers, const std::string& out,
             const std::string& hist_out, const std::string& format)
{
    const auto library = obtain_library(library_path);
    const auto loaded = mrsd::io::load_design(design_path, library);
    const auto design = mrsd::MultiplierDesign::build(loaded.plan, library);
    if (design.wiring_digest() != loaded.wiring_digest)
        throw std::runtime_error("design file wiring digest does not match the rebuilt wiring");

    const mrsd::ErrorReport report =
        exhaustive ? mrsd::run_exhaustive(design) : mrsd::run_monte_carlo(design, samples, seed, workers);

    const std::string text = format == "csv" ? mrsd::io::report_to_csv(report)
                                             : mrsd::io::report_to_json(report).dump(2) + "\n";
    if (!out.empty()) {
        mrsd::io::write_text_file(out, text);
        std::printf("wrote %s\n", out.c_str());
    } else {
        std::fputs(text.c_str(), stdout);
    }
    if (!hist_out.empty()) {
        mrsd::io::write_text_file(hist_out, mrsd::io::histogram_to_csv(report));
        std::printf("wrote %s\n", hist_out.c_str());
    }
    std::printf("mred=%.6e mared=%.6e nmed=%.6e (samples=%llu skipped=%llu)\n", report.mred, report.mared,
                report.nmed_signed, static_cast<unsigned long long>(report.samples),
                static_cast<unsigned long long>(report.skipped_zero_exact));
    return 0;
}

int cmd_verify(const std::string& library_path)
{
    const auto library = obtain_library(library_path);
    const auto results = mrsd::run_verification(library);
    for (const auto& r : results)
        std::printf("[%s] %s%s%s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.empty() ? "" : ": ", r.detail.c_str());
    return mrsd::all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mrsdmul: redundant signed-digit multiplier design and evaluation"};
    app.require_subcommand(1);

    std::string library_path;
    std::string out;
    std::string stats_out;
    std::string hist_out;
    std::string format = "json";
    int digits = 2;
    int border = 1;
    std::uint64_t samples = 50000;
    std::uint64_t seed = 1;
    int workers = 1;
    bool exhaustive = false;
    std::string design_path;

    auto* cells = app.add_subcommand("cells", "derive or load the reduction cell library");
    cells->add_option("--library", library_path, "load a custom library instead of deriving");
    cells->add_option("--out", out, "write the library document here");

    auto* design = app.add_subcommand("design", "plan and wire a multiplier");
    design->add_option("--digits", digits, "operand digit count")->required()->check(CLI::PositiveNumber);
    design->add_option("--border", border, "approximate border column, 1-based")->required();
    design->add_option("--library", library_path, "cell library file (default: derived)");
    design->add_option("--out", out, "write the design document here");
    design->add_option("--stats-out", stats_out, "write design statistics here");
    design->add_option("--format", format, "stats format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* eval = app.add_subcommand("eval", "measure accuracy of a designed multiplier");
    eval->add_option("--design", design_path, "design document")->required();
    eval->add_option("--library", library_path, "cell library file (default: derived)");
    eval->add_option("--samples", samples, "random operand pairs to draw");
    eval->add_option("--seed", seed, "random stream seed");
    eval->add_flag("--exhaustive", exhaustive, "enumerate all pairs (1-digit designs)");
    eval->add_option("--workers", workers, "worker threads; never changes results")
        ->check(CLI::PositiveNumber);
    eval->add_option("--out", out, "write the metric report here");
    eval->add_option("--histogram-out", hist_out, "write the relative-error histogram CSV here");
    eval->add_option("--format", format, "report format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* verify = app.add_subcommand("verify", "run the bundled self checks");
    verify->add_option("--library", library_path, "cell library file (default: derived)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(cells))
            return cmd_cells(library_path, out);
        if (app.got_subcommand(design))
            return cmd_design(digits, border, library_path, out, stats_out, format);
        if (app.got_subcommand(eval))
            return cmd_eval(design_path, library_path, samples, seed, exhaustive, workers, out, hist_out,
                            format);
        if (app.got_subcommand(verify))
            return cmd_verify(library_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
