// SPDX-License-Identifier: MIT
// Standardization, KS and characteristic-function distances, standardized
// moments, condition checks, annulus ratios, and reweighting selection.
// Reference values were generated by tests/oracles/normality_oracle.py and
// tests/oracles/trunc_exp_oracle.py.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "pgfclt/pgfclt.hpp"
#include "test_util.hpp"

using namespace pgfclt;
using C = std::complex<double>;
using testutil::abs_close;
using testutil::rel_close;

TEST_CASE("standard normal CDF spot values") {
    CHECK(abs_close(normal_cdf(0.0), 0.5, 1e-15));
    CHECK(abs_close(normal_cdf(1.0) - 0.5, 0.34134474606854294859, 1e-12));
    CHECK(abs_close(normal_cdf(0.5), 0.69146246127401310364, 1e-12));
    CHECK(abs_close(normal_cdf(-2.3), 0.010724110021675805392, 1e-13));
    for (double x : {0.3, 1.7, 4.2})
        CHECK(abs_close(normal_cdf(-x), 1.0 - normal_cdf(x), 1e-15));
}

TEST_CASE("standardization drops zero masses and centers") {
    const StandardizedDist d = standardize(Pmf::from_probs({0.5, 0.0, 0.5}));
    CHECK(rel_close(d.mu, 1.0, 1e-14));
    CHECK(rel_close(d.sigma, 1.0, 1e-14));
    REQUIRE(d.atoms.size() == 2); // the zero-mass middle atom is gone
    CHECK(abs_close(d.atoms[0].location, -1.0, 1e-14));
    CHECK(abs_close(d.atoms[1].location, 1.0, 1e-14));
    CHECK(rel_close(d.atoms[0].mass, 0.5, 1e-15));

    CHECK_THROWS_AS(standardize(Pmf::from_probs({0.0, 1.0})), ZeroVariance);
}

TEST_CASE("KS distance to the normal: symmetric two-point closed form") {
    // Atoms at +-1 with mass 1/2: sup|F* - Phi| = Phi(1) - 1/2.
    const double ks = ks_to_normal(Pmf::from_probs({0.5, 0.5}));
    CHECK(rel_close(ks, 0.34134474606854294859, 1e-12));
}

TEST_CASE("KS distance between discrete distributions") {
    const StandardizedDist a = standardize(Pmf::from_probs({0.5, 0.5}));
    CHECK(ks_distance(a, a) == 0.0);

    // {1,2,1}/4 standardizes to atoms -sqrt2, 0, sqrt2 with masses
    // 1/4, 1/2, 1/4; the sup gap against the +-1 two-point is exactly 1/4.
    const StandardizedDist b = standardize(Pmf::from_weights({1.0, 2.0, 1.0}));
    CHECK(rel_close(ks_distance(a, b), 0.25, 1e-13));
    CHECK(rel_close(ks_distance(b, a), 0.25, 1e-13));
}

TEST_CASE("characteristic-function distance on the default grid") {
    const double d = cf_distance(Pmf::from_probs({0.5, 0.5}), 3.0, 61);
    CHECK(rel_close(d, 1.0011014931386877638, 1e-12));
    // Finer grids can only increase the max; equal grid reproduces it.
    CHECK(cf_distance(Pmf::from_probs({0.5, 0.5}), 3.0, 121) >= d - 1e-15);
}

TEST_CASE("standardized moments of a skewed two-point") {
    // {0: 1/4, 3: 3/4}: M_3 = -2/sqrt(3), M_4 = 7/3, M_6 = 61/9.
    const Pmf pmf = Pmf::from_probs({0.25, 0.0, 0.0, 0.75});
    CHECK(abs_close(standardized_moment(pmf, 1), 0.0, 1e-13));
    CHECK(rel_close(standardized_moment(pmf, 2), 1.0, 1e-13));
    CHECK(rel_close(standardized_moment(pmf, 3), -1.154700538379251529, 1e-12));
    CHECK(rel_close(standardized_moment(pmf, 4), 2.3333333333333333333, 1e-12));
    CHECK(rel_close(standardized_moment(pmf, 6), 6.7777777777777777778, 1e-12));
    CHECK(standardized_moment(pmf, 0) == 1.0);
    CHECK_THROWS_AS(standardized_moment(pmf, 13), KTooLarge);
}

TEST_CASE("large-variance condition at eps = 0.4") {
    // Binomial(n, 1/3): all roots at -2, sigma = sqrt(2n/9).
    auto report_for = [](long n) {
        const Pmf pmf = binomial(n, 1.0 / 3.0);
        FamilySpec spec;
        spec.kind = FamilySpec::Kind::binomial;
        spec.p = 1.0 / 3.0;
        const RootSet rs = family_roots(spec, n, 1e-12);
        return check_large_var(pmf, rs, 0.4);
    };

    const ConditionReport r2000 = report_for(2000);
    CHECK(r2000.kind == ConditionReport::Kind::large_var);
    CHECK(r2000.input_param == 0.4);
    CHECK(rel_close(r2000.measured.at("sigma"), std::sqrt(2000.0 * 2.0 / 9.0),
                    1e-12));
    CHECK(rel_close(r2000.measured.at("n_pow_eps"), std::pow(2000.0, 0.4),
                    1e-12));
    CHECK(rel_close(r2000.measured.at("min_dist_to_one"), 3.0, 1e-10));
    CHECK(r2000.holds); // 21.08 > 20.96 and 3 > sigma^-0.6

    // At n = 1000 the variance clause fails: sqrt(2000/9) = 14.91 < 15.85.
    const ConditionReport r1000 = report_for(1000);
    CHECK_FALSE(r1000.holds);
    CHECK(r1000.measured.at("sigma") < r1000.measured.at("n_pow_eps"));

    // Point masses have sigma = 0 and fail outright. P(z) = z has a single
    // root at zero.
    RootSet point;
    point.zero_root_count = 1;
    CHECK_FALSE(
        check_large_var(Pmf::from_probs({0.0, 1.0}), point, 0.4).holds);
    CHECK_THROWS_AS(
        check_large_var(Pmf::from_probs({0.0, 1.0}), point, 1.0), BadEpsilon);
}

TEST_CASE("reciprocal power-sum condition") {
    // Roots at -2 and -1/2: T*_3 = 1/8 + 8.
    RootSet rs;
    rs.roots = {C(-2, 0), C(-0.5, 0)};
    rs.residuals = {0, 0};
    const ConditionReport rep = check_power_sum(rs, 3);
    CHECK(rep.kind == ConditionReport::Kind::power_sum);
    CHECK(rep.input_param == 3.0);
    CHECK(rel_close(rep.measured.at("Tstar_k"), 8.125, 1e-12));
    CHECK(rep.holds);

    // A root at zero drives the sum to infinity: recorded as failure.
    rs.zero_root_count = 1;
    const ConditionReport inf_rep = check_power_sum(rs, 3);
    CHECK_FALSE(inf_rep.holds);
    CHECK(std::isinf(inf_rep.measured.at("Tstar_k")));
}

TEST_CASE("region condition census") {
    RootSet rs;
    rs.roots = {C(-2, 0)};
    rs.residuals = {0};
    const ConditionReport rep = check_region(rs, 3.0, 0.1);
    CHECK(rep.kind == ConditionReport::Kind::region);
    CHECK(rel_close(rep.measured.at("min_dist_to_one"), 3.0, 1e-12));
    CHECK(rep.measured.at("N_delta") == 0.0); // -2 is 2 away from S
    CHECK(rel_close(rep.measured.at("sigma3"), 27.0, 1e-12));
    CHECK(rep.holds); // min|1 - zeta| = 3 > delta

    const ConditionReport close_rep = check_region(rs, 3.0, 2.5);
    CHECK(close_rep.measured.at("N_delta") == 1.0);
    CHECK(close_rep.holds); // 3 > 2.5 still

    const ConditionReport tight = check_region(rs, 3.0, 3.5);
    CHECK_FALSE(tight.holds);
}

TEST_CASE("annulus ratios for the truncated exponential") {
    auto ratios = [](int m) {
        RootSet rs;
        rs.roots = trunc_exp_roots(m).roots;
        rs.residuals.assign(rs.roots.size(), 0.0);
        return szego_annulus_check(rs, m);
    };
    const auto [lo4, hi4] = ratios(4);
    CHECK(rel_close(lo4, 0.48613609139922353864, 1e-12));
    CHECK(rel_close(hi4, 0.62983642495379289981, 1e-12));
    const auto [lo8, hi8] = ratios(8);
    CHECK(rel_close(lo8, 0.38412104160005957655, 1e-12));
    CHECK(rel_close(hi8, 0.64258027083656987943, 1e-12));

    // The upper ratio is provably below 1; the lower stays positive.
    for (int m : {16, 64}) {
        const auto [lo, hi] = ratios(m);
        CAPTURE(m);
        CHECK(hi <= 1.0 + 1e-8);
        CHECK(lo > 0.2);
    }
}

TEST_CASE("reweighting factor selection") {
    // Roots far from the circle: no reweighting.
    RootSet far;
    far.roots = {C(-2, 0), C(0.3, 0.2), C(0.3, -0.2)};
    far.residuals = {0, 0, 0};
    CHECK(auto_tilt_r(far) == 1.0);

    // All moduli exactly 1: the best candidate is the interval end 0.9.
    RootSet circle;
    circle.roots = {C(0, 1), C(0, -1)};
    circle.residuals = {0, 0};
    const double r = auto_tilt_r(circle);
    CHECK(abs_close(r, 0.9, 1e-12));
    // After dividing moduli by r, the circle clearance is ~1/r - 1.
    CHECK(std::abs(1.0 / r - 1.0) > 1e-3);

    // Wider guard bands may request reweighting even for cleared roots.
    RootSet near;
    near.roots = {C(1.02, 0)};
    near.residuals = {0};
    CHECK(auto_tilt_r(near) == 1.0);          // default band 1e-9
    CHECK(auto_tilt_r(near, 0.05) != 1.0);    // 2% clearance < 5% band
}
