// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>
#include <vector>

#include "pgfclt/pmf.hpp"
#include "pgfclt/roots.hpp"

namespace pgfclt {

// Atoms of (X - mu)/sigma with the original masses.
struct StandardizedDist {
    struct Atom {
        double location = 0.0;
        double mass = 0.0;
    };
    std::vector<Atom> atoms; // ascending by location, zero masses dropped
    double mu = 0.0;
    double sigma = 0.0;
};

// Requires sigma > 0 (ZeroVariance).
StandardizedDist standardize(const Pmf& pmf);

// Standard normal CDF. Implemented on top of the C library's erfc (itself a
// series/continued-fraction hybrid); absolute error well below 1e-10, so
// regression constants derived from this function are portable.
double normal_cdf(double x);

// sup_x |F*(x) - Phi(x)| where F* is the standardized CDF; evaluated
// exactly at the atoms (both one-sided gaps per atom).
double ks_to_normal(const Pmf& pmf);

// Kolmogorov distance between two standardized discrete distributions:
// sup over the union of atom locations of |F_a - F_b|, both one-sided gaps.
double ks_distance(const StandardizedDist& a, const StandardizedDist& b);

// max over the theta-grid {0 ... theta_max, grid_points points} of
//   |P(e^{i theta/sigma}) e^{-i theta mu/sigma} - e^{-theta^2/2}|,
// with P evaluated by Horner on the unit circle.
double cf_distance(const Pmf& pmf, double theta_max, int grid_points);

// E[((X-mu)/sigma)^k] via extended-precision raw moments. Requires
// sigma > 0 and k <= 12 (KTooLarge).
double standardized_moment(const Pmf& pmf, int k);

// Checkable hypothesis clauses. `holds` is always re-derivable from
// `measured` and `input_param` (pure function of the record).
struct ConditionReport {
    enum class Kind { large_var, power_sum, region };
    Kind kind = Kind::large_var;
    double input_param = 0.0; // eps, k, or delta
    std::map<std::string, double> measured;
    bool holds = false;
};

// Large-variance condition at exponent eps in (0,1):
// holds  <=>  sigma > n^eps  AND  min|1-zeta| > sigma^-(1-eps).
// measured: sigma, n_pow_eps, min_dist_to_one, dist_threshold.
ConditionReport check_large_var(const Pmf& pmf, const RootSet& rs, double eps);

// Reciprocal-modulus power sum T*_k = sum |zeta|^-k over ALL roots; roots
// at 0 make it infinite and the condition fails. Per-instance output is the
// raw value (the hypothesis is about a sequence; trends are judged at the
// sweep level). measured: Tstar_k. holds <=> T*_k finite.
ConditionReport check_power_sum(const RootSet& rs, int k);

// Region condition at distance delta: records min|1-zeta|, N_delta (census
// of roots within delta of the region S), sigma^3, and the trend ratio
// N_delta/sigma^3; holds <=> min|1-zeta| > delta.
ConditionReport check_region(const RootSet& rs, double sigma, double delta);

// Root-annulus ratios for the degree-m truncated-exponential family:
// (min|zeta|/m, max|zeta|/m). The upper ratio is provably <= 1; the lower
// approaches a positive constant that this check measures empirically.
std::pair<double, double> szego_annulus_check(const RootSet& rs, int m);

// Reweighting factor r in (0.9, 1) maximizing min| |zeta|/r - 1 |, used to
// push roots out of the unit-circle guard band before profiling. The
// objective is piecewise-hyperbolic in r with one basin per root modulus,
// so the exact candidate optima — midpoints of adjacent distinct moduli
// inside the interval, plus the interval ends — are evaluated directly and
// the argmax returned. Returns 1.0 when no root is inside the guard band
// (no reweighting needed).
double auto_tilt_r(const RootSet& rs, double guard_band = 1e-9);

} // namespace pgfclt
