// SPDX-License-Identifier: MIT
#include "pgfclt/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pgfclt/errors.hpp"

namespace pgfclt {

namespace {

using C = std::complex<double>;

// Smallest modulus strictly outside the unit circle (+inf if none) and
// largest strictly inside (0 if none; roots at 0 count as modulus 0).
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

void check_imag_residue(C sum, const char* what) {
    if (std::abs(sum.imag()) > 1e-8 * (1.0 + std::abs(sum.real())))
        throw FormsDisagree(std::string(what) +
                            ": imaginary residue exceeds the "
                            "conjugate-pairing tolerance");
}

} // namespace

std::pair<std::vector<double>, std::vector<double>>
ab_coefficients(const RootProfile& profile, int M, double alpha, double beta) {
    if (M < 1) throw OutOfRange("combination order must be >= 1");
    if (M > static_cast<int>(profile.K))
        throw OutOfRange("combination order exceeds the profile truncation");
    if (!(beta >= 0.0 && beta < 1.0))
        throw OutOfRange("inside-root modulus bound must lie in [0, 1)");

    const int K = profile.K;
    const bool has_T = std::any_of(profile.T.begin(), profile.T.end(),
                                   [](C t) { return std::abs(t) != 0.0; });
    const bool has_S = std::any_of(profile.S.begin(), profile.S.end(),
                                   [](C s) { return std::abs(s) != 0.0; });
    if (has_T && !(alpha > 1.0))
        throw OutOfRange("outside-root modulus bound must exceed 1");

    // Certify the dropped tail: |T_k| decays like alpha^-k and the k^(M-1)
    // weight grows slower than e^((M-1)/K) per step near the cut, so the
    // continuation beyond K is geometric with the ratios below.
    const double growth = std::exp(static_cast<double>(M - 1) / K);
    double tail = 0.0;
    if (has_T) {
        const double rho = growth / alpha;
        if (!(rho < 1.0))
            throw TruncationInsufficient(
                "power-sum decay too slow for the requested order");
        tail += std::abs(profile.T[static_cast<std::size_t>(K - 1)]) *
                std::pow(static_cast<double>(K), M - 1) * rho / (1.0 - rho);
    }
    if (has_S && beta > 0.0) {
        const double rho = growth * beta;
        if (!(rho < 1.0))
            throw TruncationInsufficient(
                "power-sum decay too slow for the requested order");
        tail += std::abs(profile.S[static_cast<std::size_t>(K - 1)]) *
                std::pow(static_cast<double>(K), M - 1) * rho / (1.0 - rho);
    }
    if (!(tail < 1e-12))
        throw TruncationInsufficient(
            "certified truncation tail " + std::to_string(tail) +
            " is not below 1e-12; raise the profile truncation");

    std::vector<C> accA(static_cast<std::size_t>(M), C(0.0, 0.0));
    std::vector<C> accB(static_cast<std::size_t>(M), C(0.0, 0.0));
    for (int k = 1; k <= K; ++k) {
        const C t = profile.T[static_cast<std::size_t>(k - 1)];
        const C s = profile.S[static_cast<std::size_t>(k - 1)];
        double kp = 1.0; // k^(m-1)
        for (int m = 1; m <= M; ++m) {
            accA[static_cast<std::size_t>(m - 1)] += t * kp;
            accB[static_cast<std::size_t>(m - 1)] += s * kp;
            kp *= static_cast<double>(k);
        }
    }

    std::vector<double> A(static_cast<std::size_t>(M));
    std::vector<double> B(static_cast<std::size_t>(M));
    for (int m = 1; m <= M; ++m) {
        check_imag_residue(accA[static_cast<std::size_t>(m - 1)],
                           "outside power-sum combination");
        check_imag_residue(accB[static_cast<std::size_t>(m - 1)],
                           "inside power-sum combination");
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        A[static_cast<std::size_t>(m - 1)] =
            accA[static_cast<std::size_t>(m - 1)].real();
        B[static_cast<std::size_t>(m - 1)] =
            sign * accB[static_cast<std::size_t>(m - 1)].real();
    }
    return {std::move(A), std::move(B)};
}

CumulantVector cumulants_from_roots(const RootProfile& profile, int M,
                                    double alpha, double beta) {
    auto [A, B] = ab_coefficients(profile, M, alpha, beta);
    CumulantVector out;
    out.source = CumulantVector::Source::root_based;
    out.values.resize(static_cast<std::size_t>(M));
    out.values[0] = -A[0] - B[0] + static_cast<double>(profile.R);
    for (int m = 2; m <= M; ++m)
        out.values[static_cast<std::size_t>(m - 1)] =
            -(A[static_cast<std::size_t>(m - 1)] +
              B[static_cast<std::size_t>(m - 1)]);
    return out;
}

ExpFormTerms exp_form_terms(const RootProfile& profile, const RootSet& rs,
                            double tol) {
    if (!(tol > 0)) throw OutOfRange("tail tolerance must be > 0");
    auto [alpha, beta] = annulus_bounds(rs);

    ExpFormTerms terms;
    terms.R = profile.R;
    terms.alpha = alpha;
    terms.beta = beta;
    terms.delta_eff =
        std::min({min_dist_to_one(rs), alpha - 1.0, 1.0 - beta});
    if (!(terms.delta_eff > 0))
        throw RootOnUnitCircle("no root-free disk around 1");

    // Uniform bound over |z - 1| <= delta_eff/2 for the dropped terms
    // |T_k (z^k - 1)/k| and |S_k (z^-k - 1)/k|: per-k envelopes, then a
    // geometric continuation past the profile cut.
    const double hi = 1.0 + terms.delta_eff / 2.0; // max |z|
    const double lo = 1.0 - terms.delta_eff / 2.0; // min |z|
    const int Kp = profile.K;
    std::vector<double> env(static_cast<std::size_t>(Kp));
    double hik = 1.0, lok = 1.0;
    for (int k = 1; k <= Kp; ++k) {
        hik *= hi;
        lok *= lo;
        env[static_cast<std::size_t>(k - 1)] =
            (std::abs(profile.T[static_cast<std::size_t>(k - 1)]) *
                 (hik + 1.0) +
             std::abs(profile.S[static_cast<std::size_t>(k - 1)]) *
                 (1.0 / lok + 1.0)) /
            static_cast<double>(k);
    }
    const double rhoT = hi / std::max(alpha, hi * (1.0 + 1e-12));
    const double rhoS = beta / lo;
    double cont = 0.0; // certified tail beyond the profile cut
    if (std::abs(profile.T[static_cast<std::size_t>(Kp - 1)]) > 0.0)
        cont += std::abs(profile.T[static_cast<std::size_t>(Kp - 1)]) *
                (std::pow(hi, Kp) + 1.0) / Kp * rhoT / (1.0 - rhoT);
    if (beta > 0.0 &&
        std::abs(profile.S[static_cast<std::size_t>(Kp - 1)]) > 0.0)
        cont += std::abs(profile.S[static_cast<std::size_t>(Kp - 1)]) *
                (std::pow(lo, -Kp) + 1.0) / Kp * rhoS / (1.0 - rhoS);

    // Smallest K whose certified tail (suffix of envelopes + continuation)
    // is within tol.
    std::vector<double> cert(static_cast<std::size_t>(Kp + 1), cont);
    for (int k = Kp; k >= 1; --k)
        cert[static_cast<std::size_t>(k - 1)] =
            cert[static_cast<std::size_t>(k)] +
            env[static_cast<std::size_t>(k - 1)];
    int K = 0;
    while (K < Kp && cert[static_cast<std::size_t>(K)] > tol) ++K;
    if (cert[static_cast<std::size_t>(K)] > tol)
        throw TruncationInsufficient(
            "certified exponential-form tail exceeds the tolerance at the "
            "profile cut");
    K = std::max(K, 1);

    terms.K = K;
    terms.tail_estimate = cert[static_cast<std::size_t>(K)];
    terms.T_over_k.resize(static_cast<std::size_t>(K));
    terms.S_over_k.resize(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
        terms.T_over_k[static_cast<std::size_t>(k - 1)] =
            profile.T[static_cast<std::size_t>(k - 1)].real() / k;
        terms.S_over_k[static_cast<std::size_t>(k - 1)] =
            profile.S[static_cast<std::size_t>(k - 1)].real() / k;
    }
    return terms;
}

std::complex<double> exp_form_eval(const ExpFormTerms& terms,
                                   std::complex<double> z) {
    if (std::abs(z - 1.0) > terms.delta_eff / 2.0 * (1.0 + 1e-12))
        throw OutsideDomain(
            "evaluation point is outside the certified disk around 1");
    const C inv = 1.0 / z;
    C zk(1.0, 0.0), zmk(1.0, 0.0);
    C arg(0.0, 0.0);
    for (int k = 1; k <= terms.K; ++k) {
        zk *= z;
        zmk *= inv;
        arg -= terms.T_over_k[static_cast<std::size_t>(k - 1)] * (zk - 1.0);
        arg -= terms.S_over_k[static_cast<std::size_t>(k - 1)] * (zmk - 1.0);
    }
    arg += static_cast<double>(terms.R) * std::log(z);
    return std::exp(arg);
}

const BigInt& stirling2(int n, int k) {
    constexpr int kMaxN = 200;
    if (n < 0 || k < 0 || k > n || n > kMaxN)
        throw OutOfRange("partition-count arguments must satisfy "
                         "0 <= k <= n <= 200");
    // Full triangle, built once (thread-safe static initialization).
    static const std::vector<std::vector<BigInt>> table = [] {
        std::vector<std::vector<BigInt>> t(kMaxN + 1);
        t[0] = {BigInt(1)};
        for (int row = 1; row <= kMaxN; ++row) {
            t[static_cast<std::size_t>(row)].assign(
                static_cast<std::size_t>(row) + 1, BigInt(0));
            for (int col = 1; col <= row; ++col) {
                const auto& prev = t[static_cast<std::size_t>(row - 1)];
                BigInt v = col < row ? prev[static_cast<std::size_t>(col)] *
                                           col
                                     : BigInt(0);
                v += prev[static_cast<std::size_t>(col - 1)];
                t[static_cast<std::size_t>(row)]
                 [static_cast<std::size_t>(col)] = std::move(v);
            }
        }
        return t;
    }();
    return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

double cumulant_tail_bound(double delta, double theta, int M) {
    if (!(delta > 0)) throw OutOfRange("distance parameter must be > 0");
    if (M < 1) throw OutOfRange("remainder order must be >= 1");
    const double x =
        std::abs(theta) * std::exp(1.0) / delta; // |theta e / delta|
    if (!(x < 1.0))
        throw ThetaTooLarge(
            "frequency too large for the remainder bound: need "
            "|theta| e / delta < 1");
    return 0.5 / delta * std::pow(x, M) / (1.0 - x);
}

double ck_coefficients(const std::vector<double>& T, int k) {
    if (k < 2) throw OutOfRange("coefficient order must be >= 2");
    double acc = 0.0;
    for (std::size_t j = 1; j <= T.size(); ++j)
        acc += std::pow(static_cast<double>(j), k - 1) * T[j - 1];
    return acc;
}

Complex50 polylog_neg(int n, const Complex50& x) {
    if (n < 0 || n > 199)
        throw OutOfRange("polylogarithm order must satisfy 0 <= n <= 199");
    const Complex50 one(1);
    const Complex50 w = x / (one - x);
    Complex50 wpow = w; // w^{i+1}
    Complex50 acc(0);
    BigInt factorial(1); // i!
    for (int i = 0; i <= n; ++i) {
        if (i > 0) factorial *= i;
        const BigInt coeff = factorial * stirling2(n + 1, i + 1);
        acc += coeff.convert_to<Real50>() * wpow;
        wpow *= w;
    }
    return acc;
}

} // namespace pgfclt
