// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <vector>

namespace pgfclt {

// All m roots of the truncated exponential series
//   s_m(z) = sum_{j=0}^{m} z^j / j!
// (the generating polynomial of the conditioned-Poisson family, up to
// normalization). General-purpose solvers fail here long before m ~ 100:
// the coefficients span e^{Theta(m)} and evaluation near a root cancels
// e^{(beta-1-ln beta) m} with beta = |z|/m, so this routine instead uses
// the analytic structure of the roots:
//
//  1. Seeds. With a = m+1 the roots solve Q(a, a*lambda) = 0 for the
//     regularized upper incomplete gamma Q, whose uniform asymptotic
//         Q ~ (1/2) erfc(xi) + e^{-xi^2}/sqrt(2 pi a) (c0 + c1/a),
//         eta^2/2 = lambda - 1 - log lambda, xi = eta sqrt(a/2),
//     yields one seed per index j = 0 .. m/2-1:
//       - near the positive real axis (|xi| < 5): Newton in xi on the form
//         above, started at the (j+1)-th zero of erfc;
//       - elsewhere: Newton on the logarithmic form
//         -a eta^2/2 + log(-B) - (1/2) log(2 pi a) = 2 pi i (j+1),
//         B = 1/u - (1/u^3 + 1/u^2 + 1/(12u))/a, u = lambda - 1,
//         continued in eta^2 (steps of -4 pi i / a) from the previously
//         polished root.
//  2. Polish. Newton on the complement form s_m(z) = e^z - T(z) with
//     T = sum_{j>m} z^j/j! the tail of exp. At a root e^z and T balance to
//     within (1/2) ln(2 pi a) - ln|B| nats — a few digits for any m — so a
//     fixed ~50 significant digits suffice regardless of degree, and T
//     converges geometrically (term ratio |z|/(m+1+i) < 1 near the roots).
//  3. Closure. Conjugate reflection, the single negative real root for odd
//     m, and exact Newton-sum integrity checks (sum w = -m, sum 1/w = -1,
//     sum 1/w^2 = 0) with a gap-fill fallback; NoConvergence if the checks
//     cannot be met.
//
// Deterministic; runs in seconds at m ~ 10^4 on one core.
struct TruncExpRoots {
    std::vector<std::complex<double>> roots; // all m roots, conjugate-closed
    double max_rel_step = 0.0; // worst accepted final Newton step (relative)
    int repair_passes = 0;     // gap-fill passes used (0 in normal operation)
};

TruncExpRoots trunc_exp_roots(int m);

// Complement-form evaluation of s_m and s_m' at ~50-digit precision,
// exposed for residual computation and tests. Returns s_m(z).
std::complex<double> trunc_exp_eval(int m, std::complex<double> z);

} // namespace pgfclt
