// SPDX-License-Identifier: MIT
// Roots and stable evaluation of the truncated exponential series
// s_m(z) = sum_{j<=m} z^j/j!. Reference roots and spot values were
// generated by tests/oracles/trunc_exp_oracle.py (60-digit mpmath).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "pgfclt/pgfclt.hpp"
#include "test_util.hpp"

using namespace pgfclt;
using C = std::complex<double>;
using testutil::abs_close;
using testutil::rel_close;

namespace {

void check_against_reference(const TruncExpRoots& got,
                             const std::vector<C>& expect) {
    REQUIRE(got.roots.size() == expect.size());
    for (const C& ref : expect) {
        CAPTURE(ref.real());
        CAPTURE(ref.imag());
        CHECK(testutil::nearest_dist(ref, got.roots) <= 1e-12 * std::abs(ref));
    }
}

std::pair<double, double> modulus_range(const std::vector<C>& roots) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const C& z : roots) {
        lo = std::min(lo, std::abs(z));
        hi = std::max(hi, std::abs(z));
    }
    return {lo, hi};
}

} // namespace

TEST_CASE("tiny degrees have closed-form roots") {
    const TruncExpRoots r1 = trunc_exp_roots(1); // 1 + z
    REQUIRE(r1.roots.size() == 1);
    CHECK(std::abs(r1.roots[0] - C(-1, 0)) < 1e-14);

    const TruncExpRoots r2 = trunc_exp_roots(2); // 1 + z + z^2/2
    REQUIRE(r2.roots.size() == 2);
    CHECK(testutil::nearest_dist(C(-1, 1), r2.roots) < 1e-13);
    CHECK(testutil::nearest_dist(C(-1, -1), r2.roots) < 1e-13);
}

TEST_CASE("reference roots at m = 4") {
    check_against_reference(
        trunc_exp_roots(4),
        {{-1.7294442310677054566, -0.88897437612186582717},
         {-1.7294442310677054566, 0.88897437612186582717},
         {-0.27055576893229454343, -2.5047759043624344897},
         {-0.27055576893229454343, 2.5047759043624344897}});
    const auto [lo, hi] = modulus_range(trunc_exp_roots(4).roots);
    CHECK(rel_close(lo / 4.0, 0.48613609139922353864, 1e-12));
    CHECK(rel_close(hi / 4.0, 0.62983642495379289981, 1e-12));
}

TEST_CASE("reference roots at m = 8") {
    check_against_reference(
        trunc_exp_roots(8),
        {{-2.9645995051603559749, -0.80887832731351708091},
         {-2.9645995051603559749, 0.80887832731351708091},
         {-2.2864292841711760319, -2.3777116677939665986},
         {-2.2864292841711760319, 2.3777116677939665986},
         {-0.78879362038762367239, -3.7718107839502019731},
         {-0.78879362038762367239, 3.7718107839502019731},
         {2.0398224097191556792, -4.7186148839235762424},
         {2.0398224097191556792, 4.7186148839235762424}});
    const auto [lo, hi] = modulus_range(trunc_exp_roots(8).roots);
    CHECK(rel_close(lo / 8.0, 0.38412104160005957655, 1e-12));
    CHECK(rel_close(hi / 8.0, 0.64258027083656987943, 1e-12));
}

TEST_CASE("reference extremes at m = 21") {
    const TruncExpRoots r = trunc_exp_roots(21);
    REQUIRE(r.roots.size() == 21);
    CHECK(testutil::nearest_dist(C(6.407509459953201, 10.163783340594792),
                                 r.roots) < 1e-10);
    const auto [lo, hi] = modulus_range(r.roots);
    CHECK(rel_close(lo, 6.743090893662873972, 1e-12));
    CHECK(rel_close(hi, 15.007841587049254779, 1e-12));
    // Odd degree: exactly one real root.
    int reals = 0;
    for (const C& z : r.roots) reals += z.imag() == 0.0;
    CHECK(reals == 1);
}

TEST_CASE("conjugate closure and parity of real roots") {
    for (int m : {5, 12, 33}) {
        const TruncExpRoots r = trunc_exp_roots(m);
        REQUIRE(r.roots.size() == static_cast<std::size_t>(m));
        int reals = 0;
        for (const C& z : r.roots) {
            if (z.imag() == 0.0) {
                ++reals;
                CHECK(z.real() < 0.0);
                continue;
            }
            CHECK(std::find(r.roots.begin(), r.roots.end(), std::conj(z)) !=
                  r.roots.end());
        }
        CAPTURE(m);
        CHECK(reals == m % 2);
    }
}

TEST_CASE("Newton-sum integrity at m = 142") {
    // s_m has sum w = -m, sum 1/w = -1, sum 1/w^2 = 0 exactly.
    const TruncExpRoots r = trunc_exp_roots(142);
    REQUIRE(r.roots.size() == 142);
    CHECK(r.repair_passes == 0);
    CHECK(r.max_rel_step <= 1e-10);

    C sum(0, 0), inv(0, 0), inv2(0, 0);
    for (const C& z : r.roots) {
        sum += z;
        inv += 1.0 / z;
        inv2 += 1.0 / (z * z);
    }
    CHECK(abs_close(sum.real(), -142.0, 1e-9 * 142));
    CHECK(abs_close(sum.imag(), 0.0, 1e-9 * 142));
    CHECK(abs_close(inv.real(), -1.0, 1e-8));
    CHECK(abs_close(inv.imag(), 0.0, 1e-8));
    CHECK(abs_close(inv2.real(), 0.0, 1e-8));
    CHECK(abs_close(inv2.imag(), 0.0, 1e-8));
}

TEST_CASE("evaluation: exact small case") {
    // s_5(3+4i) = -644/15 - 499/30 i exactly.
    const C v = trunc_exp_eval(5, C(3, 4));
    CHECK(rel_close(v.real(), -42.933333333333333333, 1e-13));
    CHECK(rel_close(v.imag(), -16.633333333333333333, 1e-13));
}

TEST_CASE("evaluation: cancellation regimes") {
    const C v40 = trunc_exp_eval(40, C(-15, 21));
    CHECK(rel_close(v40.real(), 95569921.147594939661, 1e-12));
    CHECK(rel_close(v40.imag(), -124544177.15798818305, 1e-12));

    const C v101 = trunc_exp_eval(101, C(-28, 80));
    CHECK(rel_close(v101.real(), -3.1152318380602508057e+34, 1e-12));
    CHECK(rel_close(v101.imag(), -1.0826420173567090405e+34, 1e-12));
}

TEST_CASE("evaluation: term recurrence identity") {
    // s_m(z) - s_{m-1}(z) = z^m / m!, checked where the m-th term is a
    // nonnegligible fraction of the value so the difference is
    // well-conditioned in doubles.
    for (int m : {6, 17, 30}) {
        const C z(0.4 * m, -0.3 * m);
        const C diff = trunc_exp_eval(m, z) - trunc_exp_eval(m - 1, z);
        C term = 1.0;
        for (int j = 1; j <= m; ++j) term *= z / static_cast<double>(j);
        CAPTURE(m);
        CHECK(testutil::cx_close(diff, term, 1e-10));
    }
}

TEST_CASE("roots actually annihilate the series") {
    // Residual |s_m(z)| relative to the balancing scale e^{Re z}.
    for (int m : {9, 27}) {
        const TruncExpRoots r = trunc_exp_roots(m);
        for (const C& z : r.roots) {
            const double residual =
                std::abs(trunc_exp_eval(m, z)) / std::exp(z.real());
            CAPTURE(m);
            CAPTURE(z.real());
            CAPTURE(z.imag());
            CHECK(residual < 1e-10);
        }
    }
}
