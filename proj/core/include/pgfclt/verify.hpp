// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pgfclt {

// Self-contained property suites behind the `verify` CLI command: seeded,
// deterministic, and independent of any test framework. Each suite returns
// per-check pass counts; a failure message names the instance that broke.
struct SuiteResult {
    std::string name;
    int passed = 0;
    int failed = 0;
    std::vector<std::string> failures; // first few failure descriptions
};

// Available suites: "cumulants" (root-based vs coefficient-oracle),
// "expform" (truncated exponential form vs direct evaluation),
// "tailbound" (closed-form dominance over direct double sums),
// "region" (sign/membership equivalence, factor-form consistency,
// variance decomposition), "roots" (Newton-identity power sums vs summed
// root powers, conjugate closure, annulus ratios), "families" (lattice
// construction identities, boost root bookkeeping).
std::vector<std::string> verify_suite_names();

// Runs one suite with the given seed. Unknown names throw OutOfRange.
SuiteResult run_verify_suite(const std::string& name, std::uint64_t seed);

// Runs all suites (or the single named one when filter is nonempty).
std::vector<SuiteResult> run_verify(std::uint64_t seed,
                                    const std::string& filter = "");

} // namespace pgfclt
