// SPDX-License-Identifier: MIT
#include "pgfclt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "pgfclt/cumulants.hpp"
#include "pgfclt/diagnostics.hpp"
#include "pgfclt/errors.hpp"
#include "pgfclt/families.hpp"
#include "pgfclt/pmf.hpp"
#include "pgfclt/polynomial.hpp"
#include "pgfclt/region.hpp"
#include "pgfclt/roots.hpp"
#include "pgfclt/trunc_exp.hpp"

namespace pgfclt {

namespace {

using C = std::complex<double>;

// Deterministic uniform doubles straight from the engine's bit stream
// (identical across platforms; std::uniform_real_distribution is not
// required to be reproducible between standard libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }
    int uniform_int(int lo, int hi) { // inclusive bounds
        return lo + static_cast<int>(
                        eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

class Suite {
public:
    explicit Suite(std::string name) { res_.name = std::move(name); }
    void check(bool ok, const std::string& what) {
        if (ok) {
            ++res_.passed;
        } else {
            ++res_.failed;
            if (res_.failures.size() < 5) res_.failures.push_back(what);
        }
    }
    SuiteResult take() { return std::move(res_); }

private:
    SuiteResult res_;
};

Pmf random_pmf(Rng& rng, int max_degree) {
    const int d = rng.uniform_int(1, max_degree);
    std::vector<double> w(static_cast<std::size_t>(d) + 1, 0.0);
    for (int k = 0; k <= d; ++k)
        if (rng.uniform() > 0.25) w[static_cast<std::size_t>(k)] =
            rng.uniform(0.01, 1.0);
    w[static_cast<std::size_t>(d)] = rng.uniform(0.05, 1.0); // keep degree
    if (rng.uniform() < 0.3) w[0] = 0.0; // exercise roots at 0
    // Two atoms minimum: a point mass has a rootless generating polynomial.
    int nonzero = 0;
    for (double x : w) nonzero += x > 0;
    if (nonzero < 2) w[d > 1 ? 1 : 0] = 0.5;
    return Pmf::from_weights(w);
}

struct Prepared {
    Pmf pmf;
    RootSet rs;
    double tilt_r = 1.0;
};

RootSet solve_roots(const Pmf& pmf, double tol) {
    int zero_roots = 0;
    const Polynomial poly = Polynomial::from_pmf(pmf, &zero_roots);
    RootSet rs = find_roots(poly, tol);
    rs.zero_root_count += zero_roots;
    return rs;
}

// Root pipeline with the automatic reweighting step applied when roots sit
// in the unit-circle guard band.
Prepared prepare(const Pmf& in, double tol) {
    Prepared out{in, solve_roots(in, tol), 1.0};
    // Wide guard band: reweight already when roots merely approach the
    // circle. Power sums of roots at distance eps from the circle carry
    // intermediate terms of size ~((M-1)/(e*eps))^(M-1), so a healthy
    // clearance is what keeps high-order cumulants computable in doubles
    // (and the profile truncation order small).
    const double r = auto_tilt_r(out.rs, 0.05);
    if (r != 1.0) {
        out.pmf = tilt(in, r);
        out.rs = solve_roots(out.pmf, tol);
        out.tilt_r = r;
    }
    return out;
}

std::pair<double, double> annulus_bounds(const RootSet& rs) {
    double alpha = std::numeric_limits<double>::infinity();
    double beta = 0.0;
    for (const C& z : rs.roots) {
        const double m = std::abs(z);
        if (m > 1.0)
            alpha = std::min(alpha, m);
        else
            beta = std::max(beta, m);
    }
    return {alpha, beta};
}

int profile_truncation(double alpha, double beta) {
    const double alpha_eff =
        beta > 0.0 ? std::min(alpha, 1.0 / beta) : alpha;
    return default_profile_truncation(alpha_eff);
}

C pgf_eval(const Pmf& pmf, C z) {
    C acc(0.0, 0.0);
    const std::vector<double>& p = pmf.probs();
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * z + p[k];
    return acc;
}

std::string describe(const char* what, int index) {
    std::ostringstream os;
    os << what << " (instance " << index << ")";
    return os.str();
}

// Double-precision noise floor of the truncated power-sum route for the
// m-th cumulant: each stored T_k/S_k carries ulp-level rounding, and the
// k^(m-1)-weighted sum amplifies it. Incoherent (root-sum-square) model of
// those independent per-k errors; the comparison tolerance adds a safety
// factor on top.
double route_noise(const RootProfile& profile, int m) {
    double acc = 0.0;
    for (int k = 1; k <= profile.K; ++k) {
        const double w = std::pow(static_cast<double>(k), m - 1);
        const std::size_t idx = static_cast<std::size_t>(k - 1);
        acc += w * w *
               (std::norm(profile.T[idx]) + std::norm(profile.S[idx]));
    }
    return std::sqrt(acc) * 0x1.0p-52;
}

// ---------------------------------------------------------------------------

SuiteResult suite_cumulants(std::uint64_t seed) {
    Suite suite("cumulants");
    Rng rng(seed ^ 0x636b6c74ULL);
    constexpr int kInstances = 60;
    constexpr int kM = 6;
    for (int i = 0; i < kInstances; ++i) {
        try {
            Pmf pmf = [&] {
                switch (i) { // fixed hard instances force the tilt path
                    case 0:
                        return Pmf::from_weights(
                            std::vector<double>(11, 1.0)); // uniform {0..10}
                    case 1:
                        return Pmf::from_probs({0.5, 0.0, 0.5});
                    case 2:
                        return Pmf::from_probs({0.5, 0.5});
                    case 3: // atoms at {0,4}: simple roots exactly on the
                            // unit circle (fourth roots of -1)
                        return Pmf::from_probs({0.5, 0.0, 0.0, 0.0, 0.5});
                    default:
                        return random_pmf(rng, 40);
                }
            }();
            const Prepared prep = prepare(pmf, 1e-10);
            const auto [alpha, beta] = annulus_bounds(prep.rs);
            const RootProfile profile =
                root_profile(prep.rs, profile_truncation(alpha, beta));
            const CumulantVector root_side =
                cumulants_from_roots(profile, kM, alpha, beta);
            const CumulantVector coeff_side =
                cumulants_from_pmf(prep.pmf, kM);
            bool ok = true;
            for (int m = 0; m < kM; ++m) {
                const double a = root_side.values[static_cast<std::size_t>(m)];
                const double b =
                    coeff_side.values[static_cast<std::size_t>(m)];
                const double diff = std::abs(a - b);
                const double tol =
                    std::max({1e-6 * std::max(std::abs(a), std::abs(b)),
                              64.0 * route_noise(profile, m + 1), 1e-9});
                if (diff > tol) ok = false;
            }
            suite.check(ok, describe("root-based vs coefficient cumulants "
                                     "disagree",
                                     i));
        } catch (const Error& e) {
            suite.check(false, describe(e.what(), i));
        }
    }
    return suite.take();
}

SuiteResult suite_expform(std::uint64_t seed) {
    Suite suite("expform");
    Rng rng(seed ^ 0x65786620ULL);
    constexpr int kInstances = 30;
    for (int i = 0; i < kInstances; ++i) {
        try {
            const Prepared prep = prepare(random_pmf(rng, 30), 1e-10);
            const auto [alpha, beta] = annulus_bounds(prep.rs);
            const RootProfile profile =
                root_profile(prep.rs, profile_truncation(alpha, beta));
            const ExpFormTerms terms =
                exp_form_terms(profile, prep.rs, 1e-11);
            bool ok = true;
            for (int p = 0; p < 10; ++p) {
                const double radius =
                    rng.uniform() * 0.5 * terms.delta_eff;
                const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
                const C z = 1.0 + radius * C(std::cos(angle),
                                             std::sin(angle));
                const C direct = pgf_eval(prep.pmf, z);
                const C form = exp_form_eval(terms, z);
                if (std::abs(direct - form) >
                    1e-9 * (1.0 + std::abs(direct)))
                    ok = false;
            }
            suite.check(ok, describe("exponential form deviates from "
                                     "direct evaluation",
                                     i));
        } catch (const Error& e) {
            suite.check(false, describe(e.what(), i));
        }
    }
    return suite.take();
}

// sum_{k >= M} (theta^k / k!) |C_k| for a single outside root, with
// C_k = sum_j j^(k-1) zeta^-j = Li_{-(k-1)}(1/zeta). The polylogarithm goes
// through its exact closed form: summing its defining series in doubles is
// hopeless for large k when |zeta| is near 1 (terms peak at exp(k ln k -
// k ln|zeta|) above a result governed by the much larger |log zeta|).
double remainder_sum(C zeta, double theta, int M, int terms) {
    const Complex50 x = Complex50(1) / Complex50(zeta.real(), zeta.imag());
    Real50 theta_pow_over_fact = pow(Real50(theta), M);
    for (int k = 2; k <= M; ++k) theta_pow_over_fact /= k;
    Real50 lhs(0);
    for (int k = M; k < M + terms; ++k) {
        lhs += theta_pow_over_fact * abs(polylog_neg(k - 1, x));
        theta_pow_over_fact *= theta / (k + 1);
    }
    return lhs.convert_to<double>();
}

SuiteResult suite_tailbound(std::uint64_t seed) {
    Suite suite("tailbound");
    Rng rng(seed ^ 0x7461696cULL);

    // Route agreement for the closed-form polylogarithm. On the positive
    // real axis every series term is positive, so plain double summation is
    // exact to machine precision and anchors the closed form.
    for (int i = 0; i < 20; ++i) {
        const double x = rng.uniform(0.02, 0.93);
        const int n = rng.uniform_int(0, 12);
        double direct = 0.0, xj = 1.0;
        for (int j = 1; j < 20000; ++j) {
            xj *= x;
            const double term = std::pow(static_cast<double>(j), n) * xj;
            direct += term;
            if (term < 1e-18 * direct && j > n / std::log(1.0 / x)) break;
        }
        const Complex50 cf = polylog_neg(n, Complex50(x));
        suite.check(std::abs(direct - cf.real().convert_to<double>()) <=
                            1e-12 * direct &&
                        std::abs(cf.imag().convert_to<double>()) <=
                            1e-12 * direct,
                    describe("polylogarithm routes disagree on the real "
                             "axis",
                             i));
    }
    // Off the axis the series cancels (terms peak far above the result), so
    // the direct route runs at 50 digits.
    for (int i = 0; i < 20; ++i) {
        const double r = rng.uniform(0.05, 0.625);
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const Complex50 x =
            Real50(r) * Complex50(std::cos(phi), std::sin(phi));
        const int n = rng.uniform_int(0, 20);
        Complex50 direct(0), xj(1);
        const Real50 floor50 = pow(Real50(10), -35);
        for (int j = 1; j < 20000; ++j) {
            xj *= x;
            const Complex50 term = pow(Real50(j), n) * xj;
            direct += term;
            if (j > n / std::log(1.0 / r) && abs(term) < floor50 * abs(direct))
                break;
        }
        const Complex50 closed = polylog_neg(n, x);
        suite.check(abs(direct - closed) <= Real50(1e-30) * abs(direct),
                    describe("polylogarithm routes disagree off the real "
                             "axis",
                             i));
    }

    // Dominance of the closed-form remainder bound.
    for (int i = 0; i < 200; ++i) {
        const double modulus = rng.uniform(1.05, 9.0);
        const double angle = rng.uniform(0.15, 2.0 * std::numbers::pi - 0.15);
        const C zeta = modulus * C(std::cos(angle), std::sin(angle));
        const double delta =
            std::min(std::abs(1.0 - 1.0 / zeta), 1.0) * 0.999;
        const int M = 2 + i % 7;
        const double theta =
            rng.uniform(0.05, 0.95) * delta / std::exp(1.0);
        try {
            const double lhs = remainder_sum(zeta, theta, M, 60);
            const double rhs = cumulant_tail_bound(delta, theta, M);
            suite.check(lhs <= rhs * (1.0 + 1e-9),
                        describe("remainder bound violated", i));
        } catch (const Error& e) {
            suite.check(false, describe(e.what(), i));
        }
    }
    return suite.take();
}

SuiteResult suite_region(std::uint64_t seed) {
    Suite suite("region");
    Rng rng(seed ^ 0x7265676eULL);

    // Sign of the factor's second moment vs region membership: exact
    // equivalence everywhere off the positive real axis.
    for (int i = 0; i < 400; ++i) {
        const double a = rng.uniform(-3.0, 3.0);
        const double b = rng.uniform(-3.0, 3.0);
        const C zeta(a, b);
        if (b == 0.0 && a > 0.0) {
            suite.check(true, "");
            continue;
        }
        try {
            const bool in_s = in_region_s(zeta);
            const int sign = m2_sign(zeta);
            suite.check((sign <= 0) == in_s,
                        describe("second-moment sign disagrees with "
                                 "region membership",
                                 i));
        } catch (const Error& e) {
            suite.check(false, describe(e.what(), i));
        }
    }

    // Factor-moment route consistency (the closed form is cross-checked
    // inside central_moment_mk) plus the m_0/m_1 identities.
    for (int i = 0; i < 100; ++i) {
        const C zeta(rng.uniform(-4.0, 4.0), rng.uniform(0.05, 4.0));
        try {
            bool ok = std::abs(central_moment_mk(zeta, 0) - 1.0) < 1e-12 &&
                      std::abs(central_moment_mk(zeta, 1)) < 1e-12;
            for (int k = 2; k <= 8; ++k) (void)central_moment_mk(zeta, k);
            suite.check(ok, describe("factor moment identities m0/m1", i));
        } catch (const Error& e) {
            suite.check(false, describe(e.what(), i));
        }
    }

    // Variance decomposition: sum of factor second moments equals the
    // coefficient-side variance.
    for (int i = 0; i < 30; ++i) {
        try {
            const Pmf pmf = random_pmf(rng, 30);
            const RootSet rs = solve_roots(pmf, 1e-10);
            double acc = 0.0;
            for (const C& z : rs.roots) {
                if (z.imag() > 0.0 || z.imag() == 0.0)
                    acc += central_moment_mk(z, 2);
            }
            const double var = pmf.mean_var().second;
            suite.check(std::abs(acc - var) <=
                            1e-6 * std::max(1e-12, std::abs(var)),
                        describe("factor second moments do not sum to the "
                                 "variance",
                                 i));
        } catch (const Error& e) {
            suite.check(false, describe(e.what(), i));
        }
    }
    return suite.take();
}

SuiteResult suite_roots(std::uint64_t seed) {
    Suite suite("roots");
    Rng rng(seed ^ 0x726f6f74ULL);

    // Newton-identity power sums vs direct summation over found roots.
    for (int i = 0; i < 40; ++i) {
        try {
            const int d = rng.uniform_int(2, 50);
            std::vector<double> coeffs(static_cast<std::size_t>(d) + 1);
            for (int k = 0; k <= d; ++k)
                coeffs[static_cast<std::size_t>(k)] =
                    rng.uniform(-1.0, 1.0);
            if (std::abs(coeffs[static_cast<std::size_t>(d)]) < 0.2)
                coeffs[static_cast<std::size_t>(d)] = 0.5;
            const Polynomial poly(coeffs);
            const RootSet rs = find_roots(poly, 1e-8);
            const auto newton = newton_power_sums(poly, 10);
            bool ok = true;
            for (int k = 1; k <= 10; ++k) {
                C direct(0.0, 0.0);
                double scale = 1.0;
                for (const C& z : rs.roots) {
                    direct += std::pow(z, k);
                    scale += std::pow(std::abs(z), k);
                }
                if (std::abs(direct - newton[static_cast<std::size_t>(
                                 k - 1)]) > 1e-8 * scale)
                    ok = false;
            }
            suite.check(ok, describe("power sums disagree with Newton "
                                     "identities",
                                     i));

            bool closed = true;
            for (const C& z : rs.roots) {
                if (z.imag() == 0.0) continue;
                const C conj = std::conj(z);
                if (std::find(rs.roots.begin(), rs.roots.end(), conj) ==
                    rs.roots.end())
                    closed = false;
            }
            suite.check(closed,
                        describe("conjugate closure not exact", i));
        } catch (const Error& e) {
            suite.check(false, describe(e.what(), i));
        }
    }

    // Root-annulus upper ratio for the truncated exponential family.
    for (int m : {8, 16, 32, 64}) {
        try {
            FamilySpec spec;
            spec.kind = FamilySpec::Kind::truncated_poisson;
            const RootSet rs = family_roots(spec, m, 1e-10);
            const auto [lo, hi] = szego_annulus_check(rs, m);
            suite.check(hi <= 1.0 + 1e-8 && lo > 0.0,
                        describe("annulus ratio out of range", m));
        } catch (const Error& e) {
            suite.check(false, describe(e.what(), m));
        }
    }
    return suite.take();
}

SuiteResult suite_families(std::uint64_t seed) {
    Suite suite("families");
    Rng rng(seed ^ 0x66616d6cULL);

    // Lattice construction identity: the scaled family's PGF is the base
    // family's PGF composed with z^k, coefficientwise.
    for (long n : {50L, 200L, 1000L}) {
        try {
            const Pmf scaled = scaled_truncated_poisson(n);
            const int k = lattice_step(n);
            const Pmf base =
                truncated_poisson(static_cast<int>(n / k));
            bool ok = scaled.n() == base.n() * static_cast<std::size_t>(k);
            for (std::size_t j = 0; ok && j < scaled.size(); ++j) {
                const double expect =
                    (j % static_cast<std::size_t>(k) == 0)
                        ? base[j / static_cast<std::size_t>(k)]
                        : 0.0;
                if (std::abs(scaled[j] - expect) > 1e-12) ok = false;
            }
            suite.check(ok, describe("lattice expansion identity", static_cast<int>(n)));
        } catch (const Error& e) {
            suite.check(false, describe(e.what(), static_cast<int>(n)));
        }
    }

    // Boost bookkeeping: root count and variance growth.
    for (double Cf : {0.5, 1.0, 2.0}) {
        try {
            const Pmf inner = binomial(30, 0.3);
            const double var_in = inner.mean_var().second;
            const Pmf boosted = variance_boost(inner, Cf);
            const double var_out = boosted.mean_var().second;
            const long t =
                static_cast<long>(std::ceil(4.0 * Cf * Cf * var_in));
            const bool var_ok =
                var_out >= (Cf * Cf + 1.0) * var_in * (1.0 - 1e-9);
            const bool support_ok =
                boosted.n() == inner.n() + static_cast<std::size_t>(t);
            FamilySpec ispec;
            ispec.kind = FamilySpec::Kind::binomial;
            ispec.p = 0.3;
            FamilySpec bspec;
            bspec.kind = FamilySpec::Kind::boosted;
            bspec.C = Cf;
            bspec.inner = std::make_shared<FamilySpec>(ispec);
            const RootSet rs = family_roots(bspec, 30, 1e-10);
            const bool roots_ok =
                rs.total_count() == 30 + static_cast<std::size_t>(t);
            suite.check(var_ok && support_ok && roots_ok,
                        describe("boost bookkeeping", static_cast<int>(10 * Cf)));
        } catch (const Error& e) {
            suite.check(false, describe(e.what(), static_cast<int>(10 * Cf)));
        }
    }

    // Closed-form binomial equals the iterated-convolution product.
    for (int i = 0; i < 3; ++i) {
        try {
            const double p = rng.uniform(0.1, 0.9);
            const Pmf direct = binomial(40, p);
            const Pmf conv =
                bernoulli_product(std::vector<double>(40, p));
            bool ok = direct.size() == conv.size();
            for (std::size_t k = 0; ok && k < direct.size(); ++k)
                if (std::abs(direct[k] - conv[k]) > 1e-12) ok = false;
            suite.check(ok, describe("closed-form binomial vs product", i));
        } catch (const Error& e) {
            suite.check(false, describe(e.what(), i));
        }
    }

    // Comparison target: unit-rate reference distribution integrity.
    try {
        const Pmf pois = poisson_unit_pmf(1e-12);
        const auto [mu, var] = pois.mean_var();
        suite.check(std::abs(mu - 1.0) < 1e-9 && std::abs(var - 1.0) < 1e-9,
                    "unit-rate reference moments");
    } catch (const Error& e) {
        suite.check(false, e.what());
    }
    return suite.take();
}

} // namespace

std::vector<std::string> verify_suite_names() {
    return {"cumulants", "expform", "tailbound",
            "region",    "roots",   "families"};
}

SuiteResult run_verify_suite(const std::string& name, std::uint64_t seed) {
    if (name == "cumulants") return suite_cumulants(seed);
    if (name == "expform") return suite_expform(seed);
    if (name == "tailbound") return suite_tailbound(seed);
    if (name == "region") return suite_region(seed);
    if (name == "roots") return suite_roots(seed);
    if (name == "families") return suite_families(seed);
    throw OutOfRange("unknown verification suite: " + name);
}

std::vector<SuiteResult> run_verify(std::uint64_t seed,
                                    const std::string& filter) {
    std::vector<SuiteResult> out;
    for (const std::string& name : verify_suite_names()) {
        if (!filter.empty() && filter != name) continue;
        out.push_back(run_verify_suite(name, seed));
    }
    if (out.empty()) throw OutOfRange("unknown verification suite: " + filter);
    return out;
}

} // namespace pgfclt
