// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <vector>

#include "pgfclt/roots.hpp"

namespace pgfclt {

// Normalized factor of a conjugate root pair (or single real root) of a
// generating polynomial: P_zeta(z) = p2 z^2 + p1 z + p0 with P_zeta(1) = 1,
// and mu = 2 p2 + p1, its mean. For a non-real root zeta = a+ib:
//   q  = (1-a)^2 + b^2,  p2 = 1/q,  p1 = -2a/q,  p0 = (a^2+b^2)/q.
// For a real root zeta = -r <= 0 the factor is linear:
//   p2 = 0,  p1 = 1/(1+r),  p0 = r/(1+r).
struct QuadFactor {
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
    double mu = 0.0;
};

// The region S = { x+iy : x (1 + x^2 + y^2) >= 2 (x^2 + y^2) }: the locus
// where a conjugate pair's factor contributes nonpositive variance-like
// second moment m_2. Exact rational inequality, no trig.
bool in_region_s(std::complex<double> z);

// Euclidean distance from z to S, to absolute accuracy tol: 0 inside;
// otherwise minimized over the boundary curve w(r) = r e^{+-i theta(r)},
// cos theta(r) = 2r/(1+r^2), by a log-spaced coarse scan over
// r in [1e-6, 1e6] plus golden-section refinement per branch.
double dist_to_region_s(std::complex<double> z, double tol);

// Factor of the root: requires zeta off the open positive real axis
// (PositiveRealRoot otherwise; generating polynomials with nonnegative
// coefficients have no such roots).
QuadFactor quad_factor(std::complex<double> zeta);

// Central-moment analogue of the factor:
//   m_k = p2 (2-mu)^k + p1 (1-mu)^k + p0 (-mu)^k.
// For non-real zeta the independent closed form
//   [ (2(a^2+b^2)-2a)^k - 2a(a^2+b^2-1)^k + (a^2+b^2)(2a-2)^k ] / q^{k+1}
// is evaluated as well and the two must agree to relative 1e-9
// (FormsDisagree on internal inconsistency); the p-form value is returned.
// Real roots use the linear factor, where only the p-form applies.
// m_0 = 1 and m_1 = 0 identically.
double central_moment_mk(std::complex<double> zeta, int k);

// Sign of m_2 via the factored numerator g(a,b) = a(1+a^2+b^2) - 2(a^2+b^2)
// alone (m_2 = -2 g / q^2), avoiding cancellation: returns -1, 0, or +1.
// Shares g with in_region_s, so sign(m_2) <= 0 iff zeta in S, exactly.
// Requires zeta non-real or real nonpositive (PositiveRealRoot).
int m2_sign(std::complex<double> zeta);

// Census of roots near S: N_delta = #roots at distance <= delta (roots at 0
// lie on the boundary of S and count for every delta >= 0).
struct RegionReport {
    struct PerRoot {
        std::complex<double> root;
        bool in_S = false;
        double dist_to_S = 0.0;
        double m2 = 0.0;
    };
    long N_delta = 0;
    double delta = 0.0;
    std::vector<PerRoot> per_root;
};

RegionReport count_near_s(const RootSet& rs, double delta);

// Probe for the bounded-ratio property |m_k| <= c m_2 away from S:
// when dist(S, zeta) > delta returns (|m_k|/m_2, true); otherwise
// (0, false). Requires k >= 2.
std::pair<double, bool> moment_bound_probe(std::complex<double> zeta,
                                           double delta, int k);

} // namespace pgfclt
