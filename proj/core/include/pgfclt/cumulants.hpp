// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <vector>

#include "pgfclt/multiprec.hpp"
#include "pgfclt/pmf.hpp"
#include "pgfclt/roots.hpp"

namespace pgfclt {

// Root-side cumulant machinery. Everything here consumes a RootProfile
// (power sums T_k, S_k, inside count R) and is validated against the
// coefficient-side oracle cumulants_from_pmf.

// A_m = sum_k T_k k^(m-1) and B_m = (-1)^m sum_k S_k k^(m-1), m = 1..M,
// by direct summation over the profile's truncation range. The geometric
// tail |T_k| <= N_out alpha^(-k) must satisfy k^(M-1) * tail < 1e-12 at the
// cut (checked; TruncationInsufficient otherwise). Imaginary residues are
// asserted <= 1e-8 * (1 + |Re|) — a conjugate-pairing-bug tripwire — and
// discarded. `alpha` is the smallest outside-root modulus and `beta` the
// largest inside-root modulus (pass beta = 0 with no inside roots).
std::pair<std::vector<double>, std::vector<double>>
ab_coefficients(const RootProfile& profile, int M, double alpha, double beta);

// kappa_1 = -A_1 - B_1 + R;  kappa_m = -(A_m + B_m) for 2 <= m <= M.
// Source flag is root_based.
CumulantVector cumulants_from_roots(const RootProfile& profile, int M,
                                    double alpha, double beta);

// Truncated exponential form of the generating polynomial,
//   P(z) = exp( -sum_k T_k (z^k - 1)/k - sum_k S_k (z^-k - 1)/k + R log z ),
// with a certified truncation error. Valid evaluation points must stay
// (i) inside the root-free annulus beta < |z| < alpha and (ii) within the
// disk around 1 that the certificate covers: |z - 1| <= delta_eff / 2 with
// delta_eff = min(min|1 - zeta|, alpha - 1, 1 - beta). tail_estimate bounds
// the dropped tail uniformly over that disk.
struct ExpFormTerms {
    std::vector<double> T_over_k; // Re T_k / k, k = 1..K
    std::vector<double> S_over_k; // Re S_k / k
    int R = 0;
    int K = 0;
    double tail_estimate = 0.0;
    double alpha = 0.0;     // smallest modulus outside the unit circle
    double beta = 0.0;      // largest modulus inside (0 if none)
    double delta_eff = 0.0; // evaluation-disk radius bound around 1
};

// Builds the terms from a profile, choosing the smallest K <= profile.K
// whose certified tail is below tol (TruncationInsufficient if none).
// `rs` supplies the moduli for alpha/beta/delta_eff.
ExpFormTerms exp_form_terms(const RootProfile& profile, const RootSet& rs,
                            double tol);

// Evaluates the truncated exponential form; the result is within
// tail_estimate (in exp-argument terms) of the untruncated expression.
// Throws OutsideDomain beyond the certified disk |z-1| <= delta_eff/2.
// Principal branch of log z throughout (the domain keeps z away from the
// cut).
std::complex<double> exp_form_eval(const ExpFormTerms& terms,
                                   std::complex<double> z);

// Stirling numbers of the second kind via the recurrence
// S(n+1,k) = k S(n,k) + S(n,k-1), exact integers, memoized (thread-safe
// initialization). Requires 0 <= k <= n <= 200 (OutOfRange).
const BigInt& stirling2(int n, int k);

// Closed-form tail bound for the cumulant-generating remainder of a single
// root factor at angle theta, valid when every root satisfies
// |1 - 1/zeta| > delta (outside roots; the inside-root version follows by
// zeta -> 1/zeta, theta -> -theta):
//   bound = (1/(2 delta)) |theta e / delta|^M / (1 - |theta e / delta|).
// Requires delta > 0 and |theta e / delta| < 1 (ThetaTooLarge). The
// dominance guarantee is established for delta <= 1, the only regime the
// accompanying property suite samples.
double cumulant_tail_bound(double delta, double theta, int M);

// C_k = sum_{j=1}^{l} j^(k-1) T_j for a truncated real power-sum vector T.
// Requires k >= 2 (OutOfRange).
double ck_coefficients(const std::vector<double>& T, int k);

// Negative-order polylogarithm Li_{-n}(x) = sum_{j>=1} j^n x^j for |x| < 1,
// via the exact closed form
//   Li_{-n}(x) = sum_{i=0}^{n} i! S(n+1, i+1) (x/(1-x))^{i+1}
// evaluated at 50 digits. Direct summation of the series is numerically
// impossible for large n when |x| is near 1 but x is far from 1 (terms peak
// exponentially above the result); this form has only mild cancellation.
// Requires 0 <= n <= 199 (OutOfRange) and |1 - x| not tiny.
Complex50 polylog_neg(int n, const Complex50& x);

} // namespace pgfclt
