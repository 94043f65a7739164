// SPDX-License-Identifier: MIT
// Shared helpers for the doctest suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace testutil {

// |a - b| <= tol * max(|a|, |b|); exact equality (including both zero) passes.
inline bool rel_close(double a, double b, double tol) {
    if (a == b) return true;
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * scale;
}

inline bool abs_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol;
}

// Relative with an absolute floor for values that legitimately sit at zero.
inline bool close(double a, double b, double rel, double abs_floor) {
    return abs_close(a, b, abs_floor) || rel_close(a, b, rel);
}

inline bool cx_close(std::complex<double> a, std::complex<double> b,
                     double tol) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * std::max(1e-300, scale);
}

// Distance from z to the nearest element of pool.
inline double nearest_dist(std::complex<double> z,
                           const std::vector<std::complex<double>>& pool) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : pool) best = std::min(best, std::abs(z - w));
    return best;
}

} // namespace testutil
