// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <vector>

#include "pgfclt/polynomial.hpp"

namespace pgfclt {

// All complex roots of a generating polynomial, with per-root scaled
// residuals. Roots at exactly 0 (factored out of the polynomial as stripped
// low-order zero coefficients) are carried as a count, not as entries of
// `roots`; count(roots) + zero_root_count = degree of the untrimmed-at-the-
// bottom polynomial. Non-real roots come in conjugate pairs (enforced by a
// post-pairing step for real-coefficient inputs).
struct RootSet {
    std::vector<std::complex<double>> roots;
    std::vector<double> residuals; // scaled residual per entry of roots
    int zero_root_count = 0;

    std::size_t total_count() const noexcept {
        return roots.size() + static_cast<std::size_t>(zero_root_count);
    }
};

// Truncated power sums of the root multiset, split at the unit circle:
//   T[k-1] = T_k = sum over |zeta| > 1 of zeta^(-k),
//   S[k-1] = S_k = sum over |zeta| < 1 of zeta^k   (roots at 0 contribute 0),
//   R      = count of roots with |zeta| < 1, including roots at 0,
//   Tstar[l-1] = T*_l = sum over ALL roots of |zeta|^(-l)  (infinite when a
//                root sits at 0; stored as +inf).
// K is the truncation order of T, S, Tstar.
struct RootProfile {
    std::vector<std::complex<double>> T;
    std::vector<std::complex<double>> S;
    int R = 0;
    std::vector<double> Tstar;
    int K = 0;
};

// Finds all roots (with multiplicity, as nearby simple roots for clusters)
// by Aberth-Ehrlich simultaneous iteration: initial guesses on the circle
// of radius (|a_0/a_d|)^(1/d) with golden-angle spacing, at most 500 sweeps;
// falls back to companion-matrix eigenvalues if the iteration stalls. Each
// accepted root satisfies scaled_residual(root) <= tol.
// Throws DegreeZero (degree < 1) and NoConvergence (both stages failed).
RootSet find_roots(const Polynomial& poly, double tol);

// Full-root power sums sum_zeta zeta^k for k = 1..K straight from the
// coefficients via the Newton-identity recurrence on elementary symmetric
// functions — an oracle for find_roots that involves no root finding.
std::vector<std::complex<double>> newton_power_sums(const Polynomial& poly, int K);

// Direct summation of T_k, S_k, R, T*_l from a root set. Roots within the
// guard band | |zeta| - 1 | <= 1e-9 make the inside/outside split
// discontinuous and throw RootOnUnitCircle: reweight (tilt) first.
// Requires K >= 2.
RootProfile root_profile(const RootSet& rs, int K);

// min over all roots of |1 - zeta|; roots at 0 contribute exactly 1.
double min_dist_to_one(const RootSet& rs);

// Truncation order for geometric tails below `tail` given the smallest
// outside-root modulus alpha > 1: max(64, 8*ceil(log(1/tail)/log(alpha))),
// capped at 2^20.
int default_profile_truncation(double alpha, double tail = 1e-15);

} // namespace pgfclt
