// SPDX-License-Identifier: MIT
// Distribution families: conditioned Poisson, lattice scalings, variance
// boosting, Bernoulli products, binomial, and the sweep driver.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>

#include "pgfclt/pgfclt.hpp"
#include "test_util.hpp"

using namespace pgfclt;
using C = std::complex<double>;
using testutil::abs_close;
using testutil::rel_close;

TEST_CASE("conditioned Poisson: exact small cases") {
    // Cutoff 6: p_k = (1/k!) / (1957/720).
    const Pmf p6 = truncated_poisson(6);
    REQUIRE(p6.size() == 7);
    const double denom[7] = {720, 720, 360, 120, 30, 6, 1};
    for (int k = 0; k <= 6; ++k) {
        CAPTURE(k);
        CHECK(rel_close(p6[k], denom[k] / 1957.0, 1e-14));
    }

    const Pmf p1 = truncated_poisson(1);
    CHECK(rel_close(p1[0], 0.5, 1e-15));
    CHECK(rel_close(p1[1], 0.5, 1e-15));

    CHECK_THROWS_AS(truncated_poisson(0), OutOfRange);
}

TEST_CASE("conditioned Poisson: deep cutoff uses extended precision") {
    const Pmf p = truncated_poisson(200);
    REQUIRE(p.size() == 201);
    double sum = 0.0;
    for (double v : p.probs()) sum += v;
    CHECK(abs_close(sum, 1.0, 1e-12));
    // p_0 = 1/C_200 with C_200 = e up to ~1e-375.
    CHECK(rel_close(p[0], 0.36787944117144233, 1e-13));
    const auto [mean, var] = p.mean_var();
    CHECK(rel_close(mean, 1.0, 1e-12));
    CHECK(rel_close(var, 1.0, 1e-12));
}

TEST_CASE("lattice scaling expands the conditioned Poisson") {
    // n = 1000: k = round(ln n) = 7, m = 142; support {0, 7, ..., 994}.
    CHECK(lattice_step(1000) == 7);
    CHECK(lattice_step(10000) == 9);
    CHECK(lattice_step(100000) == 12);
    CHECK(lattice_step(8) == 2);

    const Pmf scaled = scaled_truncated_poisson(1000);
    const Pmf base = truncated_poisson(142);
    REQUIRE(scaled.size() == 142 * 7 + 1);
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        CAPTURE(i);
        if (i % 7 == 0) {
            CHECK(rel_close(scaled[i], base[i / 7], 1e-13));
        } else {
            CHECK(scaled[i] == 0.0);
        }
    }

    CHECK_THROWS_AS(scaled_truncated_poisson(7), NTooSmall);
    CHECK_NOTHROW(scaled_truncated_poisson(8));
}

TEST_CASE("epsilon scaling ties the lattice to the exponent") {
    // eps = 1/4 -> k = round(1/(2 eps)) = 2, m = floor(n/2).
    const Pmf f = epsilon_scaled_family(100, 0.25);
    const Pmf base = truncated_poisson(50);
    REQUIRE(f.size() == 101);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i % 2 == 0)
            CHECK(rel_close(f[i], base[i / 2], 1e-13));
        else
            CHECK(f[i] == 0.0);
    }
    CHECK_THROWS_AS(epsilon_scaled_family(100, 0.3), BadEpsilon);
    CHECK_THROWS_AS(epsilon_scaled_family(100, 0.0), BadEpsilon);
    CHECK_THROWS_AS(epsilon_scaled_family(100, -0.1), BadEpsilon);
}

TEST_CASE("variance boost convolves with a centered binomial") {
    const Pmf base = binomial(30, 0.3);
    const double var_in = base.mean_var().second; // 6.3
    for (double Cf : {0.5, 1.0, 2.0}) {
        const Pmf boosted = variance_boost(base, Cf);
        const int t = static_cast<int>(std::ceil(4.0 * Cf * Cf * var_in));
        CAPTURE(Cf);
        CHECK(boosted.n() == base.n() + static_cast<std::size_t>(t));
        const double var_out = boosted.mean_var().second;
        // Binomial(t, 1/2) adds exactly t/4.
        CHECK(rel_close(var_out, var_in + t / 4.0, 1e-11));
        CHECK(var_out >= (Cf * Cf + 1.0) * var_in * (1.0 - 1e-9));
    }
    CHECK_THROWS_AS(variance_boost(base, 0.0), OutOfRange);
    CHECK_THROWS_AS(variance_boost(base, -1.0), OutOfRange);
}

TEST_CASE("Bernoulli products have real nonpositive roots") {
    const std::vector<double> q = {0.2, 0.5, 0.9};
    const Pmf pmf = bernoulli_product(q);
    const auto [mean, var] = pmf.mean_var();
    CHECK(rel_close(mean, 0.2 + 0.5 + 0.9, 1e-13));
    CHECK(rel_close(var, 0.16 + 0.25 + 0.09, 1e-12));

    const RootSet rs = find_roots(Polynomial::from_pmf(pmf), 1e-12);
    REQUIRE(rs.roots.size() == 3);
    for (double qi : q) {
        const C expect(-(1.0 - qi) / qi, 0.0);
        CHECK(testutil::nearest_dist(expect, rs.roots) < 1e-9);
    }

    // Equal success probabilities reduce to the binomial.
    const Pmf prod = bernoulli_product({0.25, 0.25, 0.25, 0.25});
    const Pmf bin = binomial(4, 0.25);
    for (std::size_t k = 0; k < bin.size(); ++k)
        CHECK(rel_close(prod[k], bin[k], 1e-12));

    CHECK_THROWS_AS(bernoulli_product({0.5, 1.5}), OutOfRange);
    CHECK_THROWS_AS(bernoulli_product({-0.1}), OutOfRange);
}

TEST_CASE("binomial closed form") {
    const Pmf p = binomial(5, 0.25);
    const double expect[6] = {243.0 / 1024, 405.0 / 1024, 270.0 / 1024,
                              90.0 / 1024,  15.0 / 1024,  1.0 / 1024};
    for (int k = 0; k <= 5; ++k) {
        CAPTURE(k);
        CHECK(rel_close(p[k], expect[k], 1e-12));
    }

    const auto [mean, var] = binomial(2000, 0.5).mean_var();
    CHECK(rel_close(mean, 1000.0, 1e-12));
    CHECK(rel_close(var, 500.0, 1e-9));
    CHECK_THROWS_AS(binomial(0, 0.5), OutOfRange);
    CHECK_THROWS_AS(binomial(5, 1.5), OutOfRange);
}

TEST_CASE("Poisson(1) reference pmf") {
    const Pmf p = poisson_unit_pmf(1e-12);
    const auto [mean, var] = p.mean_var();
    CHECK(abs_close(mean, 1.0, 1e-9));
    CHECK(abs_close(var, 1.0, 1e-9));
    CHECK(rel_close(p[0], std::exp(-1.0), 1e-11));
    CHECK(rel_close(p[3], std::exp(-1.0) / 6.0, 1e-11));
}

TEST_CASE("family dispatch and roots") {
    FamilySpec bin;
    bin.kind = FamilySpec::Kind::binomial;
    bin.p = 0.25;
    const Pmf viaspec = family_pmf(bin, 6);
    const Pmf direct = binomial(6, 0.25);
    for (std::size_t k = 0; k < direct.size(); ++k)
        CHECK(rel_close(viaspec[k], direct[k], 1e-14));

    // Binomial roots are exact: all at -(1-p)/p = -3 with zero residual.
    const RootSet rs = family_roots(bin, 6, 1e-12);
    REQUIRE(rs.roots.size() == 6);
    for (const C& z : rs.roots) CHECK(std::abs(z - C(-3, 0)) < 1e-14);
    for (double r : rs.residuals) CHECK(r == 0.0);
}

TEST_CASE("scaled family roots are exact lattice expansions") {
    FamilySpec spec;
    spec.kind = FamilySpec::Kind::scaled_truncated_poisson;
    const RootSet rs = family_roots(spec, 1000, 1e-12);
    CHECK(rs.total_count() == 994); // degree 142 * 7
    CHECK(rs.zero_root_count == 0);

    // Every root, raised to the lattice power, lands on a root of the
    // degree-142 truncated exponential.
    const TruncExpRoots base = trunc_exp_roots(142);
    int checked = 0;
    for (const C& w : rs.roots) {
        if (++checked > 60) break; // spot-check a prefix; O(n^2) otherwise
        const C z = std::pow(w, 7);
        CHECK(testutil::nearest_dist(z, base.roots) < 1e-8 * std::abs(z));
    }

    // Conjugate closure of the expanded set.
    int unpaired = 0;
    for (const C& w : rs.roots) {
        if (w.imag() == 0.0) continue;
        if (std::find(rs.roots.begin(), rs.roots.end(), std::conj(w)) ==
            rs.roots.end())
            ++unpaired;
    }
    CHECK(unpaired == 0);
}

TEST_CASE("boost roots are the inner roots plus a -1 block") {
    auto inner = std::make_shared<FamilySpec>();
    inner->kind = FamilySpec::Kind::binomial;
    inner->p = 0.3;

    FamilySpec spec;
    spec.kind = FamilySpec::Kind::boosted;
    spec.C = 1.0;
    spec.inner = inner;

    const double var_in = binomial(30, 0.3).mean_var().second;
    const int t = static_cast<int>(std::ceil(4.0 * var_in));
    const RootSet rs = family_roots(spec, 30, 1e-12);
    CHECK(rs.total_count() == 30 + static_cast<std::size_t>(t));

    int at_minus_one = 0, at_inner = 0;
    for (const C& z : rs.roots) {
        if (std::abs(z - C(-1, 0)) < 1e-12) ++at_minus_one;
        if (std::abs(z - C(-7.0 / 3.0, 0)) < 1e-9) ++at_inner;
    }
    CHECK(at_minus_one == t);
    CHECK(at_inner == 30);
}

TEST_CASE("custom family loads a pmf file") {
    const std::string path = "custom_family_fixture.json";
    {
        std::ofstream out(path);
        out << R"({"weights": [1, 0, 3]})";
    }
    FamilySpec spec;
    spec.kind = FamilySpec::Kind::custom;
    spec.file = path;
    const Pmf pmf = family_pmf(spec, 0);
    CHECK(rel_close(pmf[0], 0.25, 1e-15));
    CHECK(rel_close(pmf[2], 0.75, 1e-15));
    std::remove(path.c_str());
}

TEST_CASE("sweep rows carry per-member metrics in order") {
    FamilySpec spec;
    spec.kind = FamilySpec::Kind::truncated_poisson;
    spec.sweep = {5, 10};
    SweepParams params;
    params.threads = 1;

    const auto rows = family_sweep(spec, params);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 5);
    CHECK(rows[1].n == 10);
    for (const SweepRecord& row : rows) {
        CAPTURE(row.n);
        CHECK(row.error.empty());
        CHECK(row.k_lattice == 1);
        const Pmf pmf = truncated_poisson(static_cast<int>(row.n));
        const auto [mean, var] = pmf.mean_var();
        CHECK(rel_close(row.sigma, std::sqrt(var), 1e-12));
        CHECK(rel_close(row.ks_normal, ks_to_normal(pmf), 1e-12));
        CHECK(rel_close(row.cf_dist, cf_distance(pmf, params.theta_max,
                                                 params.grid_points),
                        1e-12));
        CHECK(rel_close(row.M_3, standardized_moment(pmf, 3), 1e-12));
        CHECK(rel_close(row.M_4, standardized_moment(pmf, 4), 1e-12));
        CHECK(row.Tstar_k > 0.0);
        CHECK(row.min_dist_to_one > 1.0); // all roots left of the disk |z|<=1
    }

    // The scaled family records its lattice step.
    FamilySpec scaled;
    scaled.kind = FamilySpec::Kind::scaled_truncated_poisson;
    scaled.sweep = {100};
    const auto srows = family_sweep(scaled, params);
    REQUIRE(srows.size() == 1);
    CHECK(srows[0].k_lattice == lattice_step(100));

    // Determinism across repeated runs.
    const auto again = family_sweep(spec, params);
    REQUIRE(again.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(again[i].sigma == rows[i].sigma);
        CHECK(again[i].ks_normal == rows[i].ks_normal);
        CHECK(again[i].Tstar_k == rows[i].Tstar_k);
    }
}
