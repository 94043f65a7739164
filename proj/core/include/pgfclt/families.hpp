// SPDX-License-Identifier: MIT
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pgfclt/diagnostics.hpp"
#include "pgfclt/pmf.hpp"
#include "pgfclt/roots.hpp"

namespace pgfclt {

// Named distribution families for the analysis pipeline.

// Poisson(1) conditioned on being <= m: p_k = (1/k!) / C_m with
// C_m = sum_{j<=m} 1/j!. Exact rational arithmetic up to m = 170, extended
// precision beyond (1/k! underflows doubles there). Requires m >= 1.
Pmf truncated_poisson(int m);

// Lattice-scaled conditioned Poisson: k = round(ln n), m = floor(n/k);
// support {0, k, 2k, ..., mk}, generating polynomial P_m(z^k). The
// prototypical large-variance sequence that still fails to normalize.
// Requires n >= 8 so that k >= 2 and m >= 1 (NTooSmall).
Pmf scaled_truncated_poisson(long n);

// Same construction with the lattice step tied to a target polynomial
// root-growth exponent: k = round(1/(2 eps)), m = floor(n/k). Requires
// 0 < eps <= 1/4 and the derived k >= 2 (BadEpsilon).
Pmf epsilon_scaled_family(long n, double eps);

// Convolution with Binomial(t, 1/2), t = ceil((2C)^2 sigma^2): multiplies
// the standard deviation by about sqrt(C^2+1) while only adding roots at
// -1. Requires C > 0 (OutOfRange).
Pmf variance_boost(const Pmf& pmf, double C);

// Independent sum of Bernoulli(q_i): iterated convolution. All roots of
// the generating polynomial are real and <= 0 (the real-rooted positive
// control). Each q_i must lie in [0,1] (OutOfRange).
Pmf bernoulli_product(const std::vector<double>& q);

// Binomial(n, p) via the stable closed form (log-gamma), not n-fold
// convolution. Requires n >= 1, p in [0,1].
Pmf binomial(long n, double p);

// Poisson(1) truncated where the remaining tail mass drops below
// tail_mass; used as the non-normal comparison target for the scaled
// family.
Pmf poisson_unit_pmf(double tail_mass = 1e-12);

// ---------------------------------------------------------------------------

struct FamilySpec {
    enum class Kind {
        binomial,                 // p
        bernoulli_product,        // q vector
        truncated_poisson,        // per-n: m = n
        scaled_truncated_poisson, // n from sweep
        epsilon_scaled,           // eps + n from sweep
        boosted,                  // inner family + C
        custom                    // PMF file, sweep ignored (single row)
    };
    Kind kind = Kind::binomial;
    double p = 0.5;
    std::vector<double> q;
    double eps = 0.25;
    double C = 1.0;
    std::string file;
    std::shared_ptr<const FamilySpec> inner; // for boosted
    std::vector<long> sweep;                 // strictly increasing
};

// PMF of one family member at size n.
Pmf family_pmf(const FamilySpec& spec, long n);

// Root multiset of the member's generating polynomial. Families whose
// construction determines the roots get them exactly: binomial and
// Bernoulli products from their linear factors, the conditioned-Poisson
// families from the dedicated truncated-exponential solver (plus exact
// lattice k-th-root expansion), boosts as the inner set union {-1} with
// multiplicity t. Custom PMFs go through the general finder. Residuals
// record the solver's final relative correction (0 for closed forms).
RootSet family_roots(const FamilySpec& spec, long n, double tol);

// Sweep controls mirroring the CLI defaults.
struct SweepParams {
    double delta = 0.1;
    double eps = 0.25;
    int k = 2;           // power-sum order for T*_k
    int max_cumulant = 6;
    double theta_max = 3.0;
    int grid_points = 61;
    double tol = 1e-10;
    int threads = 0;     // 0 = hardware concurrency (capped by env)
};

// One row per n: measured geometry and normality metrics. On a per-n
// failure the error field carries the message and numeric fields are NaN.
struct SweepRecord {
    long n = 0;
    int k_lattice = 1; // lattice step for scaled families, 1 otherwise
    double sigma = 0.0;
    double min_dist_to_one = 0.0;
    double Tstar_k = 0.0;
    long N_delta = 0;
    double N_delta_over_sigma3 = 0.0;
    double ks_normal = 0.0;
    double cf_dist = 0.0;
    double M_3 = 0.0;
    double M_4 = 0.0;
    std::string error;
};

// Runs the full per-n pipeline (PMF, roots, profile, condition checks,
// normality metrics) for each n in spec.sweep. Rows may be computed in
// parallel; output is ordered by n deterministically.
std::vector<SweepRecord> family_sweep(const FamilySpec& spec,
                                      const SweepParams& params);

// Lattice step k = round(ln n) shared by the scaled family and its
// diagnostics.
int lattice_step(long n);

} // namespace pgfclt
