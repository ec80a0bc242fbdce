// Copyright (c) 2026 the mrsdmul authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "mrsdmul/cells.hpp"

namespace mrsd {

struct CheckResult {
    std::string name;
    bool passed{false};
    std::string detail; // non-empty on failure or for informative passes
};

// Self-check suites bundled behind the `verify` command: product-bit
// gates, exact-cell value preservation, library mean errors, encode
// round trips, exact-design equality against the integer oracle,
// search-vs-enumeration equivalence, and bound admissibility.
std::vector<CheckResult> run_verification(const CellLibrary& library);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace mrsd
