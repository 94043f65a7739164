// SPDX-License-Identifier: MIT
#include "pgfclt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "pgfclt/errors.hpp"
#include "pgfclt/multiprec.hpp"
#include "pgfclt/region.hpp"

namespace pgfclt {

namespace {

using C = std::complex<double>;

double sigma_of(const Pmf& pmf) {
    const double var = pmf.mean_var().second;
    if (!(var > 0.0)) throw ZeroVariance("distribution is degenerate");
    return std::sqrt(var);
}

} // namespace

StandardizedDist standardize(const Pmf& pmf) {
    StandardizedDist out;
    out.mu = pmf.mean_var().first;
    out.sigma = sigma_of(pmf);
    out.atoms.reserve(pmf.size());
    for (std::size_t k = 0; k < pmf.size(); ++k)
        if (pmf[k] > 0.0)
            out.atoms.push_back(
                {(static_cast<double>(k) - out.mu) / out.sigma, pmf[k]});
    return out;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double ks_to_normal(const Pmf& pmf) {
    const StandardizedDist d = standardize(pmf);
    double cum = 0.0, worst = 0.0;
    for (const auto& atom : d.atoms) {
        const double phi = normal_cdf(atom.location);
        worst = std::max(worst, std::abs(cum - phi)); // left limit
        cum += atom.mass;
        worst = std::max(worst, std::abs(cum - phi)); // right value
    }
    return worst;
}

double ks_distance(const StandardizedDist& a, const StandardizedDist& b) {
    // Both CDFs are right-continuous step functions, so the sup is attained
    // at a union atom. Merge-walk the two sorted atom lists.
    std::size_t i = 0, j = 0;
    double fa = 0.0, fb = 0.0, worst = 0.0;
    while (i < a.atoms.size() || j < b.atoms.size()) {
        const double xa = i < a.atoms.size()
                              ? a.atoms[i].location
                              : std::numeric_limits<double>::infinity();
        const double xb = j < b.atoms.size()
                              ? b.atoms[j].location
                              : std::numeric_limits<double>::infinity();
        const double x = std::min(xa, xb);
        while (i < a.atoms.size() && a.atoms[i].location == x)
            fa += a.atoms[i++].mass;
        while (j < b.atoms.size() && b.atoms[j].location == x)
            fb += b.atoms[j++].mass;
        worst = std::max(worst, std::abs(fa - fb));
    }
    return worst;
}

double cf_distance(const Pmf& pmf, double theta_max, int grid_points) {
    if (!(theta_max > 0.0)) throw OutOfRange("frequency bound must be > 0");
    if (grid_points < 2) throw OutOfRange("grid needs at least 2 points");
    const auto [mu, var] = pmf.mean_var();
    if (!(var > 0.0)) throw ZeroVariance("distribution is degenerate");
    const double sigma = std::sqrt(var);

    const std::vector<double>& p = pmf.probs();
    double worst = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double theta = theta_max * i / (grid_points - 1);
        const C z = std::exp(C(0.0, theta / sigma));
        C val(0.0, 0.0);
        for (std::size_t k = p.size(); k-- > 0;) val = val * z + p[k];
        val *= std::exp(C(0.0, -theta * mu / sigma));
        const double gauss = std::exp(-0.5 * theta * theta);
        worst = std::max(worst, std::abs(val - gauss));
    }
    return worst;
}

double standardized_moment(const Pmf& pmf, int k) {
    if (k < 0) throw OutOfRange("moment order must be >= 0");
    if (k > 12)
        throw KTooLarge("standardized moments are only supported to order 12");
    const auto [mu, var] = pmf.mean_var();
    if (!(var > 0.0)) throw ZeroVariance("distribution is degenerate");
    Real50 acc = 0;
    const Real50 mu50(mu);
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        if (pmf[j] == 0.0) continue;
        const Real50 c = Real50(static_cast<double>(j)) - mu50;
        acc += Real50(pmf[j]) * pow(c, k);
    }
    acc /= pow(Real50(std::sqrt(var)), k);
    return acc.convert_to<double>();
}

ConditionReport check_large_var(const Pmf& pmf, const RootSet& rs,
                                double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw BadEpsilon("exponent must lie in (0, 1)");
    ConditionReport rep;
    rep.kind = ConditionReport::Kind::large_var;
    rep.input_param = eps;
    const double sigma = std::sqrt(pmf.mean_var().second);
    const double n_pow_eps =
        std::pow(static_cast<double>(pmf.n()), eps);
    const double mind = min_dist_to_one(rs);
    const double dist_threshold = std::pow(sigma, -(1.0 - eps));
    rep.measured["sigma"] = sigma;
    rep.measured["n_pow_eps"] = n_pow_eps;
    rep.measured["min_dist_to_one"] = mind;
    rep.measured["dist_threshold"] = dist_threshold;
    rep.holds = sigma > n_pow_eps && mind > dist_threshold;
    return rep;
}

ConditionReport check_power_sum(const RootSet& rs, int k) {
    if (k < 1) throw OutOfRange("power-sum order must be >= 1");
    ConditionReport rep;
    rep.kind = ConditionReport::Kind::power_sum;
    rep.input_param = static_cast<double>(k);
    double tstar = 0.0;
    for (const C& z : rs.roots) tstar += std::pow(std::abs(z), -k);
    if (rs.zero_root_count > 0)
        tstar = std::numeric_limits<double>::infinity();
    rep.measured["Tstar_k"] = tstar;
    rep.holds = std::isfinite(tstar);
    return rep;
}

ConditionReport check_region(const RootSet& rs, double sigma, double delta) {
    if (!(delta > 0.0)) throw OutOfRange("census distance must be > 0");
    ConditionReport rep;
    rep.kind = ConditionReport::Kind::region;
    rep.input_param = delta;
    const RegionReport census = count_near_s(rs, delta);
    const double mind = min_dist_to_one(rs);
    const double sigma3 = sigma * sigma * sigma;
    rep.measured["min_dist_to_one"] = mind;
    rep.measured["N_delta"] = static_cast<double>(census.N_delta);
    rep.measured["sigma3"] = sigma3;
    rep.measured["N_delta_over_sigma3"] =
        static_cast<double>(census.N_delta) / sigma3;
    rep.holds = mind > delta;
    return rep;
}

std::pair<double, double> szego_annulus_check(const RootSet& rs, int m) {
    if (m < 1) throw OutOfRange("degree must be >= 1");
    if (rs.total_count() == 0) throw DegreeZero("no roots to measure");
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const C& z : rs.roots) {
        const double mod = std::abs(z);
        lo = std::min(lo, mod);
        hi = std::max(hi, mod);
    }
    if (rs.zero_root_count > 0) lo = 0.0;
    return {lo / m, hi / m};
}

double auto_tilt_r(const RootSet& rs, double guard_band) {
    if (!(guard_band > 0.0)) throw OutOfRange("guard band must be > 0");
    bool in_band = false;
    std::vector<double> moduli;
    moduli.reserve(rs.roots.size());
    for (const C& z : rs.roots) {
        const double m = std::abs(z);
        moduli.push_back(m);
        if (std::abs(m - 1.0) <= guard_band) in_band = true;
    }
    if (!in_band) return 1.0;

    std::sort(moduli.begin(), moduli.end());
    moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());

    // The objective f(r) = min_i |m_i - r| / r is a lower envelope of
    // V-shapes with apexes at the moduli; on [lo, hi] its maxima sit at
    // envelope crossings (midpoints of adjacent distinct moduli) or at the
    // interval ends, so those candidates are scanned exactly.
    const double lo = 0.9, hi = 1.0 - 1e-12;
    std::vector<double> cands = {lo, hi};
    for (std::size_t i = 0; i + 1 < moduli.size(); ++i) {
        const double mid = 0.5 * (moduli[i] + moduli[i + 1]);
        if (mid > lo && mid < hi) cands.push_back(mid);
    }
    auto objective = [&](double r) {
        double worst = std::numeric_limits<double>::infinity();
        for (double m : moduli) worst = std::min(worst, std::abs(m - r) / r);
        return worst;
    };
    double best_r = lo, best_f = objective(lo);
    for (double r : cands) {
        const double f = objective(r);
        if (f > best_f || (f == best_f && r < best_r)) {
            best_f = f;
            best_r = r;
        }
    }
    return best_r;
}

} // namespace pgfclt
