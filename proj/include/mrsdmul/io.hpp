// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "mrsdmul/cells.hpp"
#include "mrsdmul/dse.hpp"
#include "mrsdmul/evalkit.hpp"
#include "mrsdmul/tree.hpp"

namespace mrsd::io {

using Json = nlohmann::ordered_json;

std::string digest_string(std::uint64_t digest);
std::uint64_t parse_digest(const std::string& text);

// Cell library document, schema mrsdmul.cells/1. Loading reconstructs
// each cell, recomputes its mean error against the declared value, and
// rejects mismatches, bad polarities, oversized row errors, or a slot
// layout other than the canonical six.
Json library_to_json(const CellLibrary& library);
CellLibrary library_from_json(const Json& doc);
void save_library(const CellLibrary& library, const std::string& path);
CellLibrary load_library(const std::string& path);

// Structural revalidation of a plan against a library: profiles, cell
// feasibility, border legality, the error ledger, and stage evolution.
void validate_plan(const DesignPlan& plan, const CellLibrary& library);

// Design document, schema mrsdmul.design/1.
struct LoadedDesign {
    DesignPlan plan;
    std::uint64_t wiring_digest{0};
};

Json design_to_json(const DesignPlan& plan, std::uint64_t wiring_digest);
LoadedDesign design_from_json(const Json& doc, const CellLibrary& library);
void save_design(const MultiplierDesign& design, const std::string& path);
LoadedDesign load_design(const std::string& path, const CellLibrary& library);

// Accuracy reports: one metric per CSV row, plus a JSON form carrying
// the histogram. All emitters are byte-deterministic for equal inputs.
std::string report_to_csv(const ErrorReport& report);
std::string histogram_to_csv(const ErrorReport& report);
Json report_to_json(const ErrorReport& report);

std::string stats_to_csv(const DesignStats& stats, const DesignPlan& plan);
Json stats_to_json(const DesignStats& stats, const DesignPlan& plan);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace mrsd::io
