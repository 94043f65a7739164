// SPDX-License-Identifier: MIT
// Root finding, Newton-identity power sums, circle-split power-sum
// profiles, and truncation sizing.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <complex>

#include "pgfclt/pgfclt.hpp"
#include "test_util.hpp"

using namespace pgfclt;
using C = std::complex<double>;
using testutil::abs_close;
using testutil::rel_close;

TEST_CASE("two-point {0,2}: roots are +-i") {
    const RootSet rs =
        find_roots(Polynomial::from_pmf(Pmf::from_probs({0.5, 0.0, 0.5})), 1e-12);
    REQUIRE(rs.roots.size() == 2);
    CHECK(rs.zero_root_count == 0);
    CHECK(testutil::nearest_dist(C(0, 1), rs.roots) < 1e-10);
    CHECK(testutil::nearest_dist(C(0, -1), rs.roots) < 1e-10);
    for (double r : rs.residuals) CHECK(r <= 1e-12);
}

TEST_CASE("uniform {0..10}: roots are the nontrivial 11th roots of unity") {
    const Pmf pmf = Pmf::from_weights(std::vector<double>(11, 1.0));
    const RootSet rs = find_roots(Polynomial::from_pmf(pmf), 1e-12);
    REQUIRE(rs.roots.size() == 10);
    for (const C& z : rs.roots) {
        CHECK(abs_close(std::abs(z), 1.0, 1e-10));
        CHECK(std::abs(std::pow(z, 11) - 1.0) < 1e-9);
        CHECK(std::abs(z - 1.0) > 0.1); // z = 1 is not a root
    }
}

TEST_CASE("zero-probability head produces roots at exactly zero") {
    int zero_roots = -1;
    const Polynomial poly =
        Polynomial::from_pmf(Pmf::from_probs({0.0, 0.0, 0.5, 0.5}), &zero_roots);
    CHECK(zero_roots == 2);
    CHECK(poly.degree() == 1);

    // The merged root set carries them as a count.
    const RootSet rs = find_roots(poly, 1e-12);
    CHECK(rs.roots.size() == 1);
    CHECK(testutil::nearest_dist(C(-1, 0), rs.roots) < 1e-12);
}

TEST_CASE("degree-0 polynomial is rejected by the finder") {
    CHECK_THROWS_AS(find_roots(Polynomial(std::vector<double>{1.0}), 1e-12),
                    DegreeZero);
}

TEST_CASE("Newton power sums match known roots exactly") {
    // (z - 2)(z + 3)(z^2 + 1) = z^4 + z^3 - 5z^2 + z - 6;
    // power sums p_k = 2^k + (-3)^k + i^k + (-i)^k.
    const Polynomial poly(std::vector<double>{-6.0, 1.0, -5.0, 1.0, 1.0});
    const auto sums = newton_power_sums(poly, 10);
    REQUIRE(sums.size() == 10);
    for (int k = 1; k <= 10; ++k) {
        const C ik = std::pow(C(0, 1), k);
        const C expect = std::pow(2.0, k) + std::pow(-3.0, k) + ik + std::conj(ik);
        CAPTURE(k);
        CHECK(testutil::cx_close(sums[k - 1], expect, 1e-12));
    }

    // And they agree with sums over the found roots.
    const RootSet rs = find_roots(poly, 1e-12);
    REQUIRE(rs.roots.size() == 4);
    for (int k = 1; k <= 10; ++k) {
        C direct(0, 0);
        for (const C& z : rs.roots) direct += std::pow(z, k);
        CHECK(testutil::cx_close(sums[k - 1], direct, 1e-9));
    }
}

TEST_CASE("non-real roots of real polynomials close under conjugation") {
    const Polynomial poly(
        std::vector<double>{0.3, -0.7, 0.2, 0.9, -0.4, 0.1, 0.6, 1.0});
    const RootSet rs = find_roots(poly, 1e-10);
    REQUIRE(rs.roots.size() == 7);
    for (const C& z : rs.roots) {
        if (z.imag() == 0.0) continue;
        const bool paired = std::find(rs.roots.begin(), rs.roots.end(),
                                      std::conj(z)) != rs.roots.end();
        CAPTURE(z.real());
        CAPTURE(z.imag());
        CHECK(paired); // bitwise, by construction
    }
}

TEST_CASE("profile of a single outside root") {
    // Bernoulli(1/3): P(z) = (2 + z)/3, root -2. T_k = (-2)^(-k), R = 0.
    const RootSet rs =
        find_roots(Polynomial::from_pmf(Pmf::from_probs({2.0 / 3.0, 1.0 / 3.0})),
                   1e-12);
    const RootProfile profile = root_profile(rs, 8);
    CHECK(profile.K == 8);
    CHECK(profile.R == 0);
    CHECK(profile.S.size() == 8);
    for (int k = 1; k <= 8; ++k) {
        CAPTURE(k);
        CHECK(testutil::cx_close(profile.T[k - 1], std::pow(C(-2, 0), -k), 1e-10));
        CHECK(std::abs(profile.S[k - 1]) < 1e-14);
        CHECK(rel_close(profile.Tstar[k - 1], std::pow(2.0, -k), 1e-10));
    }
}

TEST_CASE("profile of a single inside root") {
    // P(z) = (1 + 3z)/4, root -1/3 inside: S_k = (-1/3)^k, R = 1.
    const RootSet rs =
        find_roots(Polynomial::from_pmf(Pmf::from_probs({0.25, 0.75})), 1e-12);
    const RootProfile profile = root_profile(rs, 6);
    CHECK(profile.R == 1);
    for (int k = 1; k <= 6; ++k) {
        CAPTURE(k);
        CHECK(testutil::cx_close(profile.S[k - 1], std::pow(C(-1.0 / 3.0, 0), k),
                                 1e-10));
        CHECK(std::abs(profile.T[k - 1]) < 1e-14);
        CHECK(rel_close(profile.Tstar[k - 1], std::pow(3.0, k), 1e-10));
    }
}

TEST_CASE("zero roots count as inside and poison Tstar") {
    int zero_roots = 0;
    const Polynomial poly = Polynomial::from_pmf(
        Pmf::from_probs({0.0, 1.0 / 3.0, 2.0 / 3.0}), &zero_roots);
    RootSet rs = find_roots(poly, 1e-12);
    CHECK(zero_roots == 1);
    rs.zero_root_count += zero_roots;
    // One zero root plus the root -1/2 inside.
    const RootProfile profile = root_profile(rs, 4);
    CHECK(profile.R == 2);
    CHECK(std::isinf(profile.Tstar[0]));
    CHECK(testutil::cx_close(profile.S[1], C(0.25, 0), 1e-10));
}

TEST_CASE("roots on the unit circle force a reweighting error") {
    const RootSet rs =
        find_roots(Polynomial::from_pmf(Pmf::from_probs({0.5, 0.5})), 1e-12);
    CHECK_THROWS_AS(root_profile(rs, 4), RootOnUnitCircle);
    CHECK_THROWS_AS(root_profile(rs, 1), OutOfRange); // K >= 2
}

TEST_CASE("min distance to one") {
    const RootSet bern =
        find_roots(Polynomial::from_pmf(Pmf::from_probs({2.0 / 3.0, 1.0 / 3.0})),
                   1e-12);
    CHECK(abs_close(min_dist_to_one(bern), 3.0, 1e-10));

    // A zero root contributes exactly 1.
    RootSet zeros;
    zeros.zero_root_count = 3;
    CHECK(min_dist_to_one(zeros) == 1.0);
}

TEST_CASE("profile truncation sizing") {
    // max(64, 8 * ceil(log(1/tail)/log(alpha))), capped at 2^20.
    CHECK(default_profile_truncation(2.0) ==
          std::max(64, 8 * static_cast<int>(
                            std::ceil(std::log(1e15) / std::log(2.0)))));
    CHECK(default_profile_truncation(1e9) == 64);
    CHECK(default_profile_truncation(1.0 + 1e-9) == (1 << 20));
    CHECK(default_profile_truncation(1.5, 1e-6) ==
          std::max(64, 8 * static_cast<int>(
                            std::ceil(std::log(1e6) / std::log(1.5)))));
}
