// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pgfclt/families.hpp"
#include "pgfclt/region.hpp"

namespace pgfclt {

// Machine-readable output. All numeric fields use shortest round-trip
// decimal formatting (std::to_chars), locale-independent; CSV files open
// with the versioned schema comment line.
inline constexpr const char* kCsvSchemaLine = "# pgf-clt schema v1";

std::string format_double(double v);

// Per-root CSV: re, im, modulus, dist_to_one, in_S, dist_to_S, m2,
// residual. Zero roots (roots at exactly 0) appear as rows with re=im=0.
void write_roots_csv(std::ostream& out, const RootSet& rs,
                     const RegionReport& region);

// Family sweep CSV: n, k_lattice, sigma, min_dist_to_one, Tstar_k, N_delta,
// N_delta_over_sigma3, ks_normal, cf_dist, M_3, M_4, error.
void write_family_csv(std::ostream& out, const std::vector<SweepRecord>& rows);

// Full single-PMF analysis; serializes to JSON or CSV-ish key/value text.
struct AnalyzeReport {
    double mean = 0.0;
    double sigma = 0.0;
    std::size_t support = 0;
    double tilt_r = 1.0; // reweighting applied before profiling (1 = none)
    std::size_t root_count = 0;
    int zero_root_count = 0;
    double max_residual = 0.0;
    double min_dist_to_one = 0.0;
    std::vector<double> T, S; // real parts, k <= 8
    int R = 0;
    std::vector<double> kappa_roots;
    std::vector<double> kappa_coeffs;
    double kappa_max_rel_diff = 0.0;
    long N_delta = 0;
    double delta = 0.0;
    ConditionReport large_var, power_sum, region;
    double ks_normal = 0.0;
    double cf_dist = 0.0;
};

void write_analyze_json(std::ostream& out, const AnalyzeReport& report);
void write_analyze_csv(std::ostream& out, const AnalyzeReport& report);

} // namespace pgfclt
