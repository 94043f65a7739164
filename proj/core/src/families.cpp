// SPDX-License-Identifier: MIT
#include "pgfclt/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pgfclt/errors.hpp"
#include "pgfclt/multiprec.hpp"
#include "pgfclt/polynomial.hpp"
#include "pgfclt/region.hpp"
#include "pgfclt/trunc_exp.hpp"

namespace pgfclt {

namespace {

using C = std::complex<double>;

// Lattice expansion: support {0, k, 2k, ..., mk} carrying the base masses.
Pmf lattice_expand(const Pmf& base, int k) {
    std::vector<double> probs(base.size() * static_cast<std::size_t>(k) -
                                  static_cast<std::size_t>(k) + 1,
                              0.0);
    for (std::size_t j = 0; j < base.size(); ++j)
        probs[j * static_cast<std::size_t>(k)] = base[j];
    return Pmf::from_probs(probs);
}

// Roots of P(z^k) from the roots of P: exact k-th-root fan-out.
void lattice_expand_roots(RootSet& rs, int k) {
    if (k == 1) return;
    std::vector<C> expanded;
    std::vector<double> residuals;
    expanded.reserve(rs.roots.size() * static_cast<std::size_t>(k));
    residuals.reserve(expanded.capacity());
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
        const C w = rs.roots[i];
        const double rho = std::pow(std::abs(w), 1.0 / k);
        const double th = std::arg(w);
        for (int t = 0; t < k; ++t) {
            const double ang =
                (th + 2.0 * std::numbers::pi_v<double> * t) / k;
            expanded.push_back(C(rho * std::cos(ang), rho * std::sin(ang)));
            residuals.push_back(rs.residuals[i]);
        }
    }
    rs.roots = std::move(expanded);
    rs.residuals = std::move(residuals);
    rs.zero_root_count *= k;
}

int epsilon_lattice_step(double eps) {
    if (!(eps > 0.0) || eps > 0.25)
        throw BadEpsilon("exponent must lie in (0, 1/4]");
    const int k = static_cast<int>(std::lround(1.0 / (2.0 * eps)));
    if (k < 2) throw BadEpsilon("exponent gives a lattice step below 2");
    return k;
}

std::vector<double> cycled_q(const std::vector<double>& q, long n) {
    if (q.empty())
        throw OutOfRange("independent-sum family needs at least one factor");
    if (n < 1) throw OutOfRange("family size must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            q[static_cast<std::size_t>(i) % q.size()];
    return out;
}

} // namespace

int lattice_step(long n) {
    if (n < 1) throw OutOfRange("lattice step needs n >= 1");
    return std::max(1, static_cast<int>(std::lround(
                           std::log(static_cast<double>(n)))));
}

Pmf truncated_poisson(int m) {
    if (m < 1) throw OutOfRange("support bound must be >= 1");
    std::vector<double> probs(static_cast<std::size_t>(m) + 1);
    if (m <= 170) {
        // Exact integers: with b_k = m!/k!, p_k = b_k / sum_j b_j.
        std::vector<BigInt> b(static_cast<std::size_t>(m) + 1);
        b[static_cast<std::size_t>(m)] = 1;
        for (int k = m - 1; k >= 0; --k)
            b[static_cast<std::size_t>(k)] =
                b[static_cast<std::size_t>(k) + 1] * (k + 1);
        BigInt total = 0;
        for (const BigInt& x : b) total += x;
        for (int k = 0; k <= m; ++k)
            probs[static_cast<std::size_t>(k)] =
                BigRat(b[static_cast<std::size_t>(k)], total)
                    .convert_to<double>();
    } else {
        // 1/k! underflows doubles past k = 170; run the recurrence in
        // extended precision and convert at the end.
        std::vector<Real50> w(static_cast<std::size_t>(m) + 1);
        w[0] = 1;
        Real50 total = 1;
        for (int k = 1; k <= m; ++k) {
            w[static_cast<std::size_t>(k)] =
                w[static_cast<std::size_t>(k) - 1] / k;
            total += w[static_cast<std::size_t>(k)];
        }
        for (int k = 0; k <= m; ++k)
            probs[static_cast<std::size_t>(k)] =
                (w[static_cast<std::size_t>(k)] / total).convert_to<double>();
    }
    return Pmf::from_probs(probs);
}

Pmf scaled_truncated_poisson(long n) {
    if (n < 8)
        throw NTooSmall("scaled family needs n >= 8 for a lattice step >= 2");
    const int k = lattice_step(n);
    const long m = n / k;
    if (k < 2 || m < 1) throw NTooSmall("scaled family parameters degenerate");
    return lattice_expand(truncated_poisson(static_cast<int>(m)), k);
}

Pmf epsilon_scaled_family(long n, double eps) {
    const int k = epsilon_lattice_step(eps);
    const long m = n / k;
    if (m < 1) throw NTooSmall("size too small for the requested exponent");
    return lattice_expand(truncated_poisson(static_cast<int>(m)), k);
}

Pmf binomial(long n, double p) {
    if (n < 1) throw OutOfRange("trial count must be >= 1");
    if (!(p >= 0.0 && p <= 1.0))
        throw OutOfRange("success probability must lie in [0, 1]");
    std::vector<double> probs(static_cast<std::size_t>(n) + 1, 0.0);
    if (p == 0.0) {
        probs[0] = 1.0;
    } else if (p == 1.0) {
        probs[static_cast<std::size_t>(n)] = 1.0;
    } else {
        const double lp = std::log(p), lq = std::log1p(-p);
        const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
        for (long k = 0; k <= n; ++k)
            probs[static_cast<std::size_t>(k)] = std::exp(
                lgn - std::lgamma(static_cast<double>(k) + 1.0) -
                std::lgamma(static_cast<double>(n - k) + 1.0) +
                static_cast<double>(k) * lp + static_cast<double>(n - k) * lq);
    }
    return Pmf::from_probs(probs);
}

Pmf bernoulli_product(const std::vector<double>& q) {
    for (double qi : q)
        if (!(qi >= 0.0 && qi <= 1.0))
            throw OutOfRange("factor probabilities must lie in [0, 1]");
    Pmf acc = Pmf::from_probs({1.0});
    for (double qi : q) acc = convolve(acc, Pmf::from_weights({1.0 - qi, qi}));
    return acc;
}

Pmf variance_boost(const Pmf& pmf, double C_factor) {
    if (!(C_factor > 0.0)) throw OutOfRange("boost factor must be > 0");
    const double var = pmf.mean_var().second;
    const long t = static_cast<long>(
        std::ceil(4.0 * C_factor * C_factor * var));
    if (t < 1) return pmf; // degenerate input: nothing to boost
    return convolve(pmf, binomial(t, 0.5));
}

Pmf poisson_unit_pmf(double tail_mass) {
    if (!(tail_mass > 0.0 && tail_mass < 1.0))
        throw OutOfRange("tail mass must lie in (0, 1)");
    std::vector<double> weights;
    double term = std::exp(-1.0); // e^-1 / k!
    double tail = 1.0;
    for (int k = 0; k < 500; ++k) {
        weights.push_back(term);
        tail -= term;
        if (tail < tail_mass) break;
        term /= (k + 1.0);
    }
    return Pmf::from_weights(weights);
}

Pmf family_pmf(const FamilySpec& spec, long n) {
    switch (spec.kind) {
        case FamilySpec::Kind::binomial:
            return binomial(n, spec.p);
        case FamilySpec::Kind::bernoulli_product:
            return bernoulli_product(cycled_q(spec.q, n));
        case FamilySpec::Kind::truncated_poisson:
            if (n > std::numeric_limits<int>::max())
                throw OutOfRange("support bound too large");
            return truncated_poisson(static_cast<int>(n));
        case FamilySpec::Kind::scaled_truncated_poisson:
            return scaled_truncated_poisson(n);
        case FamilySpec::Kind::epsilon_scaled:
            return epsilon_scaled_family(n, spec.eps);
        case FamilySpec::Kind::boosted:
            if (!spec.inner)
                throw OutOfRange("boosted family requires an inner family");
            return variance_boost(family_pmf(*spec.inner, n), spec.C);
        case FamilySpec::Kind::custom:
            return load_pmf_json_file(spec.file);
    }
    throw OutOfRange("unknown family kind");
}

RootSet family_roots(const FamilySpec& spec, long n, double tol) {
    RootSet rs;
    switch (spec.kind) {
        case FamilySpec::Kind::binomial: {
            if (n < 1) throw OutOfRange("trial count must be >= 1");
            if (!(spec.p >= 0.0 && spec.p <= 1.0))
                throw OutOfRange("success probability must lie in [0, 1]");
            if (spec.p == 0.0) return rs; // constant polynomial: no roots
            if (spec.p == 1.0) {
                rs.zero_root_count = static_cast<int>(n);
                return rs;
            }
            const C root(-(1.0 - spec.p) / spec.p, 0.0);
            rs.roots.assign(static_cast<std::size_t>(n), root);
            rs.residuals.assign(static_cast<std::size_t>(n), 0.0);
            return rs;
        }
        case FamilySpec::Kind::bernoulli_product: {
            for (double qi : cycled_q(spec.q, n)) {
                if (qi == 0.0) continue; // constant factor, no root
                if (qi == 1.0) {
                    ++rs.zero_root_count;
                    continue;
                }
                rs.roots.push_back(C(-(1.0 - qi) / qi, 0.0));
                rs.residuals.push_back(0.0);
            }
            return rs;
        }
        case FamilySpec::Kind::truncated_poisson: {
            const TruncExpRoots te = trunc_exp_roots(static_cast<int>(n));
            rs.roots = te.roots;
            rs.residuals.assign(rs.roots.size(), te.max_rel_step);
            return rs;
        }
        case FamilySpec::Kind::scaled_truncated_poisson: {
            if (n < 8) throw NTooSmall("scaled family needs n >= 8");
            const int k = lattice_step(n);
            const TruncExpRoots te =
                trunc_exp_roots(static_cast<int>(n / k));
            rs.roots = te.roots;
            rs.residuals.assign(rs.roots.size(), te.max_rel_step);
            lattice_expand_roots(rs, k);
            return rs;
        }
        case FamilySpec::Kind::epsilon_scaled: {
            const int k = epsilon_lattice_step(spec.eps);
            if (n / k < 1)
                throw NTooSmall("size too small for the requested exponent");
            const TruncExpRoots te =
                trunc_exp_roots(static_cast<int>(n / k));
            rs.roots = te.roots;
            rs.residuals.assign(rs.roots.size(), te.max_rel_step);
            lattice_expand_roots(rs, k);
            return rs;
        }
        case FamilySpec::Kind::boosted: {
            if (!spec.inner)
                throw OutOfRange("boosted family requires an inner family");
            rs = family_roots(*spec.inner, n, tol);
            const double var = family_pmf(*spec.inner, n).mean_var().second;
            const long t =
                static_cast<long>(std::ceil(4.0 * spec.C * spec.C * var));
            rs.roots.insert(rs.roots.end(), static_cast<std::size_t>(t),
                            C(-1.0, 0.0));
            rs.residuals.insert(rs.residuals.end(),
                                static_cast<std::size_t>(t), 0.0);
            return rs;
        }
        case FamilySpec::Kind::custom: {
            const Pmf pmf = load_pmf_json_file(spec.file);
            int zero_roots = 0;
            const Polynomial poly = Polynomial::from_pmf(pmf, &zero_roots);
            rs = find_roots(poly, tol);
            rs.zero_root_count += zero_roots;
            return rs;
        }
    }
    throw OutOfRange("unknown family kind");
}

std::vector<SweepRecord> family_sweep(const FamilySpec& spec,
                                      const SweepParams& params) {
    std::vector<long> sizes = spec.sweep;
    if (spec.kind == FamilySpec::Kind::custom)
        sizes = {0}; // single row, size read from the file
    if (sizes.empty()) return {}; // header-only output downstream
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw OutOfRange("sweep sizes must be strictly increasing");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<SweepRecord> rows;
    rows.reserve(sizes.size());
    for (long n : sizes) {
        SweepRecord rec;
        rec.n = n;
        try {
            const Pmf pmf = family_pmf(spec, n);
            if (spec.kind == FamilySpec::Kind::custom)
                rec.n = static_cast<long>(pmf.n());
            if (spec.kind == FamilySpec::Kind::scaled_truncated_poisson)
                rec.k_lattice = lattice_step(n);
            else if (spec.kind == FamilySpec::Kind::epsilon_scaled)
                rec.k_lattice = epsilon_lattice_step(spec.eps);

            const RootSet rs = family_roots(spec, rec.n, params.tol);
            rec.sigma = std::sqrt(pmf.mean_var().second);
            rec.min_dist_to_one = min_dist_to_one(rs);

            double tstar = 0.0;
            for (const C& z : rs.roots)
                tstar += std::pow(std::abs(z), -params.k);
            if (rs.zero_root_count > 0)
                tstar = std::numeric_limits<double>::infinity();
            rec.Tstar_k = tstar;

            rec.N_delta = count_near_s(rs, params.delta).N_delta;
            rec.N_delta_over_sigma3 =
                static_cast<double>(rec.N_delta) /
                (rec.sigma * rec.sigma * rec.sigma);
            rec.ks_normal = ks_to_normal(pmf);
            rec.cf_dist =
                cf_distance(pmf, params.theta_max, params.grid_points);
            rec.M_3 = standardized_moment(pmf, 3);
            rec.M_4 = standardized_moment(pmf, 4);
        } catch (const Error& e) {
            rec.error = e.what();
            rec.sigma = rec.min_dist_to_one = rec.Tstar_k = nan;
            rec.N_delta = -1;
            rec.N_delta_over_sigma3 = rec.ks_normal = rec.cf_dist = nan;
            rec.M_3 = rec.M_4 = nan;
        }
        rows.push_back(std::move(rec));
    }
    return rows;
}

} // namespace pgfclt
