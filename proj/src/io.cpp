// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#include "mrsdmul/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mrsd::io {

namespace {

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

std::string polarity_string(Polarity p)
{
    return std::string(1, polarity_char(p));
}

Polarity polarity_from_string(const std::string& s)
{
    if (s == "P")
        return Polarity::posibit;
    if (s == "N")
        return Polarity::negabit;
    throw std::invalid_argument("bad polarity: " + s);
}

} // namespace

std::string digest_string(std::uint64_t digest)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, digest);
    return buf;
}

std::uint64_t parse_digest(const std::string& text)
{
    if (text.rfind("fnv1a64:", 0) != 0 || text.size() != 8 + 16)
        throw std::invalid_argument("bad digest string: " + text);
    return std::stoull(text.substr(8), nullptr, 16);
}

Json library_to_json(const CellLibrary& library)
{
    Json doc;
    doc["schema"] = "mrsdmul.cells/1";
    doc["digest"] = digest_string(library.digest());
    Json cells = Json::array();
    for (const auto& cell : library.cells) {
        Json jc;
        jc["name"] = std::string(cell_name(cell.kind()));
        Json inputs = Json::array();
        for (int i = 0; i < cell.mix().pos; ++i)
            inputs.push_back("P");
        for (int i = 0; i < cell.mix().neg; ++i)
            inputs.push_back("N");
        jc["inputs"] = inputs;
        jc["sum_polarity"] = polarity_string(cell.sum_polarity());
        jc["carry_polarity"] = polarity_string(cell.carry_polarity());
        Json table = Json::array();
        for (const auto& row : cell.table())
            table.push_back(Json::array({row.sum ? 1 : 0, row.carry ? 1 : 0}));
        jc["table"] = table;
        jc["mean_error"] = cell.mean_error().to_string();
        cells.push_back(std::move(jc));
    }
    doc["cells"] = std::move(cells);
    return doc;
}

CellLibrary library_from_json(const Json& doc)
{
    if (doc.value("schema", "") != "mrsdmul.cells/1")
        throw std::invalid_argument("cell library: unknown schema tag");
    const auto& cells = doc.at("cells");
    const auto& targets = default_cell_targets();
    if (cells.size() != targets.size())
        throw std::invalid_argument("cell library: expected exactly six approximate cells");

    static const std::array<CellKind, 6> kSlots = {CellKind::fa_pp,  CellKind::fa_pn1, CellKind::fa_pn2,
                                                   CellKind::fa_np1, CellKind::fa_np2, CellKind::fa_nn};
    CellLibrary lib;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& jc = cells[i];
        const CellKind kind = cell_kind_from_name(jc.at("name").get<std::string>());
        if (kind != kSlots[i])
            throw std::invalid_argument("cell library: slot " + std::to_string(i) + " must be " +
                                        std::string(cell_name(kSlots[i])));
        PolarityMix mix;
        for (const auto& p : jc.at("inputs")) {
            if (polarity_from_string(p.get<std::string>()) == Polarity::posibit)
                ++mix.pos;
            else
                ++mix.neg;
        }
        if (!(mix == targets[i].first))
            throw std::invalid_argument("cell library: wrong input mix for " +
                                        std::string(cell_name(kind)));
        std::vector<RowOutput> table;
        for (const auto& row : jc.at("table"))
            table.push_back({row.at(0).get<int>() != 0, row.at(1).get<int>() != 0});
        CellSpec cell(kind, mix, std::move(table));
        if (cell.sum_polarity() != polarity_from_string(jc.at("sum_polarity").get<std::string>()) ||
            cell.carry_polarity() != polarity_from_string(jc.at("carry_polarity").get<std::string>()))
            throw std::invalid_argument("cell library: declared output polarities do not match the mix");
        const Frac declared = Frac::parse(jc.at("mean_error").get<std::string>());
        if (!(declared == cell.mean_error()))
            throw std::invalid_argument("cell library: declared mean error " + declared.to_string() +
                                        " for " + std::string(cell_name(kind)) + " but table gives " +
                                        cell.mean_error().to_string());
        if (cell.max_abs_row_error() > 1)
            throw std::invalid_argument("cell library: row error beyond +/-1 in " +
                                        std::string(cell_name(kind)));
        lib.cells.push_back(std::move(cell));
    }
    return lib;
}

void save_library(const CellLibrary& library, const std::string& path)
{
    write_text_file(path, library_to_json(library).dump(2) + "\n");
}

CellLibrary load_library(const std::string& path)
{
    return library_from_json(Json::parse(read_text_file(path)));
}

void validate_plan(const DesignPlan& plan, const CellLibrary& library)
{
    if (plan.digits < 1)
        throw std::invalid_argument("plan: digit count must be >= 1");
    if (plan.border < 1 || plan.border > 8 * plan.digits + 1)
        throw std::invalid_argument("plan: border outside [1, 8*digits+1]");
    if (plan.library_digest != library.digest())
        throw std::invalid_argument("plan: cell library digest mismatch");
    if (plan.profiles.size() != plan.stages.size() + 1)
        throw std::invalid_argument("plan: profile/stage count mismatch");
    if (!(plan.profiles.front() == initial_profile(plan.digits)))
        throw std::invalid_argument("plan: initial profile is not the partial product profile");

    for (std::size_t t = 0; t < plan.stages.size(); ++t) {
        const auto& profile = plan.profiles[t];
        const auto& stage = plan.stages[t];
        if (stage.size() != profile.size())
            throw std::invalid_argument("plan: stage width mismatch");
        std::vector<ColumnCount> next(profile.size() + 1);
        for (std::size_t p = 0; p < stage.size(); ++p) {
            const auto& asn = stage[p];
            const int column = static_cast<int>(p) + 1;
            if (asn.column != column || asn.stage != static_cast<int>(t))
                throw std::invalid_argument("plan: assignment indexed against the wrong column");
            if (asn.pos_count != profile[p].pos || asn.neg_count != profile[p].neg)
                throw std::invalid_argument("plan: assignment bit counts disagree with profile");
            if (asn.fa_count() != profile[p].height() / 3)
                throw std::invalid_argument("plan: cell count is not floor(height/3)");
            int used_pos = 0;
            int used_neg = 0;
            Frac err = asn.err_in;
            for (const auto& cell : asn.cells) {
                used_pos += cell.mix.pos;
                used_neg += cell.mix.neg;
                if (cell.kind == CellKind::ha_exact)
                    throw std::invalid_argument("plan: HA listed as a reduction FA");
                if (cell.kind == CellKind::fa_exact) {
                    if (column < plan.border)
                        throw std::invalid_argument("plan: exact FA below the border column");
                } else {
                    if (column > plan.border)
                        throw std::invalid_argument("plan: approximate cell above the border column");
                    const CellSpec& spec = library.by_kind(cell.kind);
                    if (!(spec.mix() == cell.mix))
                        throw std::invalid_argument("plan: approximate cell with a foreign mix");
                    err += spec.mean_error();
                }
            }
            if (used_pos + asn.leftover_pos != asn.pos_count ||
                used_neg + asn.leftover_neg != asn.neg_count)
                throw std::invalid_argument("plan: cells plus leftover do not exhaust the column");
            if (asn.leftover_pos + asn.leftover_neg != profile[p].height() % 3)
                throw std::invalid_argument("plan: leftover size is not height mod 3");
            if (!(err == asn.err_out))
                throw std::invalid_argument("plan: err_out does not match err_in plus cell means");

            const Frac above = t > 0 && p < plan.stages[t - 1].size() ? plan.stages[t - 1][p].err_out
                                                                      : Frac(0, 1);
            const Frac left = p > 0 ? stage[p - 1].err_out : Frac(0, 1);
            if (!(asn.err_in == above + left))
                throw std::invalid_argument("plan: error ledger chain broken");

            const auto emit = [&next, p](const PolarityMix& mix) {
                const auto [sum_pol, carry_pol] = exact_output_polarities(mix);
                (sum_pol == Polarity::posibit ? next[p].pos : next[p].neg) += 1;
                (carry_pol == Polarity::posibit ? next[p + 1].pos : next[p + 1].neg) += 1;
            };
            for (const auto& cell : asn.cells)
                emit(cell.mix);
            if (asn.leftover_pos + asn.leftover_neg == 2)
                emit({asn.leftover_pos, asn.leftover_neg});
            else {
                next[p].pos += asn.leftover_pos;
                next[p].neg += asn.leftover_neg;
            }
        }
        while (!next.empty() && next.back().height() == 0)
            next.pop_back();
        if (!(next == plan.profiles[t + 1]))
            throw std::invalid_argument("plan: stage output profile mismatch");
    }
    for (const auto& cc : plan.profiles.back())
        if (cc.height() > 2)
            throw std::invalid_argument("plan: final profile not reduced to two rows");
}

Json design_to_json(const DesignPlan& plan, std::uint64_t wiring_digest)
{
    Json doc;
    doc["schema"] = "mrsdmul.design/1";
    doc["digits"] = plan.digits;
    doc["border"] = plan.border;
    doc["library_digest"] = digest_string(plan.library_digest);
    doc["wiring_digest"] = digest_string(wiring_digest);

    Json stages = Json::array();
    for (const auto& stage : plan.stages) {
        Json columns = Json::array();
        for (const auto& asn : stage) {
            Json jc;
            jc["column"] = asn.column;
            jc["pos"] = asn.pos_count;
            jc["neg"] = asn.neg_count;
            Json cells = Json::array();
            for (const auto& cell : asn.cells)
                cells.push_back(Json{{"cell", std::string(cell_name(cell.kind))},
                                     {"pos", cell.mix.pos},
                                     {"neg", cell.mix.neg}});
            jc["cells"] = std::move(cells);
            jc["leftover_pos"] = asn.leftover_pos;
            jc["leftover_neg"] = asn.leftover_neg;
            jc["err_in"] = asn.err_in.to_string();
            jc["err_out"] = asn.err_out.to_string();
            jc["exact_region"] = asn.exact_region;
            jc["visited"] = asn.counters.visited;
            jc["pruned"] = asn.counters.pruned;
            jc["forced_pos"] = asn.counters.forced_pos;
            jc["forced_neg"] = asn.counters.forced_neg;
            columns.push_back(std::move(jc));
        }
        stages.push_back(Json{{"columns", std::move(columns)}});
    }
    doc["stages"] = std::move(stages);

    Json profiles = Json::array();
    for (const auto& profile : plan.profiles) {
        Json jp = Json::array();
        for (const auto& cc : profile)
            jp.push_back(Json::array({cc.pos, cc.neg}));
        profiles.push_back(std::move(jp));
    }
    doc["profiles"] = std::move(profiles);
    return doc;
}

LoadedDesign design_from_json(const Json& doc, const CellLibrary& library)
{
    if (doc.value("schema", "") != "mrsdmul.design/1")
        throw std::invalid_argument("design: unknown schema tag");
    LoadedDesign loaded;
    DesignPlan& plan = loaded.plan;
    plan.digits = doc.at("digits").get<int>();
    plan.border = doc.at("border").get<int>();
    plan.library_digest = parse_digest(doc.at("library_digest").get<std::string>());
    loaded.wiring_digest = parse_digest(doc.at("wiring_digest").get<std::string>());

    int stage_index = 0;
    for (const auto& js : doc.at("stages")) {
        std::vector<ColumnAssignment> stage;
        for (const auto& jc : js.at("columns")) {
            ColumnAssignment asn;
            asn.stage = stage_index;
            asn.column = jc.at("column").get<int>();
            asn.pos_count = jc.at("pos").get<int>();
            asn.neg_count = jc.at("neg").get<int>();
            for (const auto& cell : jc.at("cells"))
                asn.cells.push_back({cell_kind_from_name(cell.at("cell").get<std::string>()),
                                     {cell.at("pos").get<int>(), cell.at("neg").get<int>()}});
            asn.leftover_pos = jc.at("leftover_pos").get<int>();
            asn.leftover_neg = jc.at("leftover_neg").get<int>();
            asn.err_in = Frac::parse(jc.at("err_in").get<std::string>());
            asn.err_out = Frac::parse(jc.at("err_out").get<std::string>());
            asn.exact_region = jc.at("exact_region").get<bool>();
            asn.counters.visited = jc.at("visited").get<std::int64_t>();
            asn.counters.pruned = jc.at("pruned").get<std::int64_t>();
            asn.counters.forced_pos = jc.at("forced_pos").get<std::int64_t>();
            asn.counters.forced_neg = jc.at("forced_neg").get<std::int64_t>();
            stage.push_back(std::move(asn));
        }
        plan.stages.push_back(std::move(stage));
        ++stage_index;
    }
    for (const auto& jp : doc.at("profiles")) {
        std::vector<ColumnCount> profile;
        for (const auto& cc : jp)
            profile.push_back({cc.at(0).get<int>(), cc.at(1).get<int>()});
        plan.profiles.push_back(std::move(profile));
    }
    validate_plan(plan, library);
    return loaded;
}

void save_design(const MultiplierDesign& design, const std::string& path)
{
    write_text_file(path, design_to_json(design.plan(), design.wiring_digest()).dump(2) + "\n");
}

LoadedDesign load_design(const std::string& path, const CellLibrary& library)
{
    return design_from_json(Json::parse(read_text_file(path)), library);
}

namespace {

std::string report_header(const ErrorReport& report, const char* schema)
{
    std::ostringstream out;
    out << "# schema=" << schema << "\n";
    out << "# source=" << report.source << " digits=" << report.digits << " border=" << report.border
        << " samples=" << report.samples << " seed=" << report.seed << "\n";
    out << "# library=" << digest_string(report.library_digest)
        << " normalizer=" << report.normalizer.str() << "\n";
    return out.str();
}

} // namespace

std::string report_to_csv(const ErrorReport& report)
{
    std::ostringstream out;
    out << report_header(report, "mrsdmul.report-csv/1");
    out << "metric,value\n";
    out << "samples," << report.samples << "\n";
    out << "skipped_zero_exact," << report.skipped_zero_exact << "\n";
    out << "mred," << fmt_double(report.mred) << "\n";
    out << "mred_abs," << fmt_double(std::abs(report.mred)) << "\n";
    out << "mared," << fmt_double(report.mared) << "\n";
    out << "nmed_signed," << fmt_double(report.nmed_signed) << "\n";
    out << "nmed_abs," << fmt_double(report.nmed_abs) << "\n";
    out << "max_abs_error," << report.max_abs_error.str() << "\n";
    out << "re_min," << fmt_double(report.re_min) << "\n";
    out << "re_max," << fmt_double(report.re_max) << "\n";
    out << "histogram_mode_re," << fmt_double(Histogram::bin_center(report.histogram.mode_bin())) << "\n";
    return out.str();
}

std::string histogram_to_csv(const ErrorReport& report)
{
    std::ostringstream out;
    out << report_header(report, "mrsdmul.hist-csv/1");
    out << "bin,re_low,re_high,count\n";
    char buf[96];
    for (int i = 0; i < Histogram::kBins; ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.9f,%.9f,%lld", i, Histogram::bin_low(i),
                      Histogram::bin_high(i),
                      static_cast<long long>(report.histogram.bins[static_cast<std::size_t>(i)]));
        out << buf << "\n";
    }
    out << "underflow,,," << report.histogram.underflow << "\n";
    out << "overflow,,," << report.histogram.overflow << "\n";
    out << "skipped_zero_exact,,," << report.skipped_zero_exact << "\n";
    return out.str();
}

Json report_to_json(const ErrorReport& report)
{
    Json doc;
    doc["schema"] = "mrsdmul.report/1";
    doc["source"] = report.source;
    doc["digits"] = report.digits;
    doc["border"] = report.border;
    doc["library_digest"] = digest_string(report.library_digest);
    doc["samples"] = report.samples;
    doc["seed"] = report.seed;
    doc["skipped_zero_exact"] = report.skipped_zero_exact;
    doc["mred"] = fmt_double(report.mred);
    doc["mared"] = fmt_double(report.mared);
    doc["nmed_signed"] = fmt_double(report.nmed_signed);
    doc["nmed_abs"] = fmt_double(report.nmed_abs);
    doc["normalizer"] = report.normalizer.str();
    doc["max_abs_error"] = report.max_abs_error.str();
    doc["re_min"] = fmt_double(report.re_min);
    doc["re_max"] = fmt_double(report.re_max);
    Json hist;
    hist["bins"] = report.histogram.bins;
    hist["underflow"] = report.histogram.underflow;
    hist["overflow"] = report.histogram.overflow;
    doc["histogram"] = std::move(hist);
    return doc;
}

std::string stats_to_csv(const DesignStats& stats, const DesignPlan& plan)
{
    std::ostringstream out;
    out << "# schema=mrsdmul.stats-csv/1\n";
    out << "# digits=" << plan.digits << " border=" << plan.border
        << " library=" << digest_string(plan.library_digest) << "\n";
    out << "metric,value\n";
    for (int k = 0; k < 8; ++k)
        out << "count_" << cell_name(static_cast<CellKind>(k)) << ","
            << stats.counts[static_cast<std::size_t>(k)] << "\n";
    for (int k = 0; k < 8; ++k)
        if (static_cast<CellKind>(k) != CellKind::ha_exact)
            out << "pct_" << cell_name(static_cast<CellKind>(k)) << ","
                << fmt_double(stats.fa_usage_pct[static_cast<std::size_t>(k)]) << "\n";
    out << "pass_bits," << stats.pass_bits << "\n";
    out << "gate_literals," << stats.gate_literals << "\n";
    out << "depth_stages," << stats.depth_stages << "\n";
    return out.str();
}

Json stats_to_json(const DesignStats& stats, const DesignPlan& plan)
{
    Json doc;
    doc["schema"] = "mrsdmul.stats/1";
    doc["digits"] = plan.digits;
    doc["border"] = plan.border;
    doc["library_digest"] = digest_string(plan.library_digest);
    Json counts;
    for (int k = 0; k < 8; ++k)
        counts[std::string(cell_name(static_cast<CellKind>(k)))] =
            stats.counts[static_cast<std::size_t>(k)];
    doc["counts"] = std::move(counts);
    Json pct;
    for (int k = 0; k < 8; ++k)
        if (static_cast<CellKind>(k) != CellKind::ha_exact)
            pct[std::string(cell_name(static_cast<CellKind>(k)))] =
                fmt_double(stats.fa_usage_pct[static_cast<std::size_t>(k)]);
    doc["fa_usage_pct"] = std::move(pct);
    doc["pass_bits"] = stats.pass_bits;
    doc["gate_literals"] = stats.gate_literals;
    doc["depth_stages"] = stats.depth_stages;
    return doc;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out)
        throw std::runtime_error("short write to " + path);
}

} // namespace mrsd::io
