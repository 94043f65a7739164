// SPDX-License-Identifier: MIT
#include "pgfclt/trunc_exp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "pgfclt/errors.hpp"
#include "pgfclt/polynomial.hpp"
#include "pgfclt/roots.hpp"

namespace pgfclt {

namespace {

using C = std::complex<double>;
// Wide types for the complement-form Newton polish. 60 significant digits
// leave ~10 digits of headroom over the worst-case cancellation budget for
// any feasible degree (the subtraction e^z - T loses only a few nats).
using WC = boost::multiprecision::cpp_complex<60>;
using WR = WC::value_type;

constexpr double kPi = std::numbers::pi_v<double>;
constexpr double kAcceptRel = 1e-15;      // polish acceptance gate
constexpr int kSmallDegreeCutoff = 21;    // below: general-purpose solver
constexpr double kNewtonSumTol = 1e-8;    // integrity-identity gates

// ----------------------------------------------------------------------------
// eta <-> lambda machinery (double precision; seeds only).
// eta parametrizes the root curve through eta^2/2 = lambda - 1 - log lambda,
// branch smooth through lambda(0) = 1 along the upper-left eta quadrant.
// ----------------------------------------------------------------------------

C lam_from_eta(C eta) {
    const C target = eta * eta * 0.5;
    C lam;
    if (std::abs(eta) < 1.0) {
        lam = 1.0 + eta + eta * eta / 3.0 + eta * eta * eta / 36.0 -
              eta * eta * eta * eta / 270.0;
    } else {
        C ex = -1.0 - target;
        ex = C(std::min(ex.real(), 50.0), ex.imag()); // guarded start only
        lam = std::exp(ex);
        if (std::abs(lam) > 0.6) lam = 1.0 + eta + eta * eta / 3.0;
    }
    for (int it = 0; it < 100; ++it) {
        const C f = lam - 1.0 - std::log(lam) - target;
        const C fp = 1.0 - 1.0 / lam;
        C step = f / fp;
        while (std::abs(step) > 0.5 * std::abs(lam)) step *= 0.5;
        lam -= step;
        if (std::abs(step) < 1e-15 * std::abs(lam)) break;
    }
    return lam;
}

// Back-map a root w to its eta on the upper-left branch.
C eta_from_w(C w, double a) {
    const C lam = w / a;
    const C e2 = 2.0 * (lam - 1.0 - std::log(lam));
    C eta = std::sqrt(e2);
    if (eta.real() > 0 || (eta.real() == 0 && eta.imag() < 0)) eta = -eta;
    return eta;
}

// Predict the next index's eta: the phase -a eta^2/2 advances by -2 pi i
// per index, so eta^2 steps by -4 pi i / a.
C eta_continue(C eta_prev, double a) {
    const C s = std::sqrt(eta_prev * eta_prev - C(0.0, 4.0 * kPi / a));
    return std::abs(s - eta_prev) < std::abs(s + eta_prev) ? s : -s;
}

// Coefficients of the uniform asymptotic; removable singularity at eta = 0
// handled by series.
C c0_of(C eta, C lam) {
    if (std::abs(eta) < 0.15)
        return -1.0 / 3.0 + eta / 12.0 - 2.0 * eta * eta / 135.0 +
               eta * eta * eta / 864.0 + eta * eta * eta * eta / 2835.0;
    return 1.0 / (lam - 1.0) - 1.0 / eta;
}

C c1_of(C eta, C lam) {
    if (std::abs(eta) < 0.15)
        return -1.0 / 540.0 - eta / 288.0 + eta * eta / 378.0 -
               77.0 * eta * eta * eta / 77760.0 +
               eta * eta * eta * eta / 4860.0;
    const C u = lam - 1.0;
    return 1.0 / (eta * eta * eta) - 1.0 / (u * u * u) - 1.0 / (u * u) -
           1.0 / (12.0 * u);
}

// ----------------------------------------------------------------------------
// Complex erfc, accurate to ~1e-6 absolute over the seed range |z| <= ~6
// (plenty: seeds only need to land in the polish basin). Maclaurin series
// for small |z|; asymptotic series with reflection otherwise.
// ----------------------------------------------------------------------------

C cerfc(C z) {
    if (std::abs(z) <= 3.5) {
        const C z2 = z * z;
        C t = z, sum = z;
        for (int n = 1; n < 400; ++n) {
            t *= -z2 / static_cast<double>(n);
            const C add = t / static_cast<double>(2 * n + 1);
            sum += add;
            if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-30)) break;
        }
        return 1.0 - (2.0 / std::sqrt(kPi)) * sum;
    }
    const bool reflected = z.real() < 0;
    const C w = reflected ? -z : z;
    const C iw2 = 1.0 / (2.0 * w * w);
    C t(1.0, 0.0), sum(1.0, 0.0);
    double prev = 1.0;
    for (int n = 1; n <= 12; ++n) {
        t *= -static_cast<double>(2 * n - 1) * iw2;
        const double mag = std::abs(t);
        if (mag > prev) break; // asymptotic: stop at the smallest term
        prev = mag;
        sum += t;
        if (mag < 1e-18) break;
    }
    const C val = std::exp(-w * w) / (w * std::sqrt(kPi)) * sum;
    return reflected ? 2.0 - val : val;
}

C exp_guard(C w) { return std::exp(C(std::min(w.real(), 100.0), w.imag())); }

// First zeros of erfc in the upper-left quadrant (Im > 0): the a -> inf
// limit points of the near-axis roots, frozen to full double accuracy.
constexpr int kNumErfcZeros = 10;
const C kErfcZeros[kNumErfcZeros] = {
    {-1.354810128112006, 1.991466842833880},
    {-2.177044906089616, 2.691149024251439},
    {-2.784387613230428, 3.235330868352817},
    {-3.287410789389849, 3.697309702468468},
    {-3.725948719445790, 4.106107284682632},
    {-4.119635227611731, 4.476815692967546},
    {-4.479832797731202, 4.818488291883319},
    {-4.813806682044434, 5.137067271266347},
    {-5.126531545496920, 5.436703910733997},
    {-5.421588576922981, 5.720434851014552},
};

// ----------------------------------------------------------------------------
// Seeds. One per index j = 0..m/2-1.
// ----------------------------------------------------------------------------

struct Seed {
    C w{};
    bool ok = false;
    C eta{};
    bool eta_ok = false;
};

// Transition-region seed (|xi| < 5): Newton in eta on
//   F = erfc(xi)/2 + e^{-xi^2} (c0 + c1/a) / sqrt(2 pi a),
// started at the (j+1)-th zero of erfc.
Seed seed_erfc_form(double a, int j) {
    Seed out;
    if (j >= kNumErfcZeros) return out;
    const double sq = std::sqrt(a / 2.0);
    const double s2pa = std::sqrt(2.0 * kPi * a);
    C eta = kErfcZeros[j] / sq;
    for (int it = 0; it < 80; ++it) {
        const C lam = lam_from_eta(eta);
        const C xi = eta * sq;
        const C erfc_val = cerfc(xi);
        const C e2 = exp_guard(-xi * xi);
        const C c = c0_of(eta, lam) + c1_of(eta, lam) / a;
        const C F = 0.5 * erfc_val + e2 * c / s2pa;
        // dF/deta with the slowly varying c1/a part held fixed.
        const C dlam = lam * eta / (lam - 1.0);
        C dc0;
        if (std::abs(eta) < 0.15)
            dc0 = 1.0 / 12.0 - 4.0 * eta / 135.0 + 3.0 * eta * eta / 864.0;
        else
            dc0 = -dlam / ((lam - 1.0) * (lam - 1.0)) + 1.0 / (eta * eta);
        const C Fp = -sq / std::sqrt(kPi) * e2 +
                     e2 * (dc0 - a * eta * c) / s2pa;
        C step = F / Fp;
        const double lim = 0.3 * std::abs(eta) + 0.05;
        if (std::abs(step) > lim) step *= lim / std::abs(step);
        eta -= step;
        if (std::abs(step) < 1e-12 * std::max(std::abs(eta), 1e-9)) break;
    }
    C lam = lam_from_eta(eta);
    out.eta = eta;
    out.eta_ok = true;
    if (lam.imag() < 0) {
        lam = std::conj(lam); // landed on the mirror zero; flip back
        out.eta_ok = false;   // do not continue from a flipped branch
    }
    out.w = a * lam;
    out.ok = true;
    return out;
}

// Bulk-curve seed with index j: Newton in eta on the logarithmic form
//   F = -a eta^2/2 + log(-B) - (1/2) log(2 pi a) - 2 pi i (j+1).
Seed seed_log_form(double a, int j, const C* eta0) {
    Seed out;
    C eta = eta0 != nullptr
                ? *eta0
                : std::sqrt(C(2.0 * kPi * (2.0 * j + 2.0) / a, 0.0)) *
                      std::exp(C(0.0, 3.0 * kPi / 4.0));
    for (int it = 0; it < 80; ++it) {
        const C lam = lam_from_eta(eta);
        const C u = lam - 1.0;
        const C B = 1.0 / u -
                    (1.0 / (u * u * u) + 1.0 / (u * u) + 1.0 / (12.0 * u)) / a;
        const C F = -a * eta * eta * 0.5 + std::log(-B) -
                    0.5 * std::log(2.0 * kPi * a) -
                    C(0.0, kPi * (2.0 * j + 2.0));
        const C dlam = lam * eta / u;
        const C dB = (-1.0 / (u * u) +
                      (3.0 / (u * u * u * u) + 2.0 / (u * u * u) +
                       1.0 / (12.0 * u * u)) /
                          a) *
                     dlam;
        const C Fp = -a * eta + dB / B;
        C step = F / Fp;
        if (std::abs(step) > 0.5 * std::abs(eta))
            step *= 0.5 * std::abs(eta) / std::abs(step);
        eta -= step;
        if (std::abs(step) < 1e-12 * std::max(std::abs(eta), 1e-9)) break;
    }
    const C lam = lam_from_eta(eta);
    if (std::abs(std::arg(lam)) > kPi - 1e-9 || lam.imag() < -1e-12)
        return out; // walked off the branch
    out.w = a * lam;
    out.ok = true;
    out.eta = eta;
    out.eta_ok = true;
    return out;
}

// ----------------------------------------------------------------------------
// Complement-form evaluation and Newton polish at 60 significant digits.
// s_m(z) = e^z - T(z), T = sum_{j>m} z^j/j!; at a root the subtraction
// cancels only (1/2) ln(2 pi a) - ln|B| nats, so this fixed precision is
// degree-independent. The tail loop stops once the geometric remainder
// bound term * r/(1-r) drops below 1e-57 * |t0|.
// ----------------------------------------------------------------------------

struct WideEval {
    WC s;  // s_m(z)
    WC sp; // s_m'(z)
};

WideEval eval_complement(int m, const WC& z, const WR& lgam) {
    const WC ez = exp(z);
    const WC t0 = exp((m + 1) * log(z) - lgam); // z^(m+1)/(m+1)!
    static const WR kFloor = pow(WR(10), -57);
    WC term = t0;
    WC T(0);
    const WR floor_abs = kFloor * abs(t0);
    const WR zmod = abs(z);
    long long i = 1;
    const long long cap =
        10LL * (m + 50) + 4 * static_cast<long long>(zmod.convert_to<double>());
    while (true) {
        T += term;
        term = term * z / (m + 1 + i);
        const WR r = zmod / (m + 2 + i);
        if (r < 1 && abs(term) * r / (1 - r) < floor_abs) {
            T += term;
            break;
        }
        ++i;
        if (i > cap)
            throw NoConvergence(
                "tail summation failed to certify its remainder");
    }
    WideEval out;
    out.s = ez - T;
    out.sp = out.s - t0 * (m + 1) / z; // s' = s - z^m/m!
    return out;
}

// Newton polish; returns (root, final relative step). Callers gate on the
// step: accepted roots have rel < kAcceptRel.
std::pair<C, double> polish_complement(int m, C z0, int max_iters = 60) {
    const WR lgam = boost::math::lgamma(WR(m + 2)); // ln (m+1)!
    WC z(z0.real(), z0.imag());
    double rel = 1.0;
    for (int it = 0; it < max_iters; ++it) {
        const WideEval ev = eval_complement(m, z, lgam);
        if (ev.sp == 0) break;
        WC dz = ev.s / ev.sp;
        const WR lim = WR(0.25) * std::max(abs(z).convert_to<double>(),
                                           0.05 * m); // keep steps local
        if (abs(dz) > lim) dz *= lim / abs(dz);
        z -= dz;
        const WR zmod = abs(z);
        rel = (abs(dz) / (zmod > 0 ? zmod : WR(1e-300))).convert_to<double>();
        if (rel < 1e-48) break;
    }
    return {C(z.real().convert_to<double>(), z.imag().convert_to<double>()),
            rel};
}

// ----------------------------------------------------------------------------
// Walk bookkeeping: dedupe, gaps, closure.
// ----------------------------------------------------------------------------

std::vector<C> set_dedupe(std::vector<C> zs, double tol = 1e-4) {
    for (C& z : zs)
        if (z.imag() < 0) z = std::conj(z);
    std::sort(zs.begin(), zs.end(), [](C x, C y) {
        return x.real() != y.real() ? x.real() < y.real()
                                    : x.imag() < y.imag();
    });
    std::vector<C> out;
    for (C z : zs) {
        bool dup = false;
        for (C w : out)
            if (std::abs(z - w) < tol * std::max(1.0, std::abs(w))) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(z);
    }
    return out;
}

void sort_by_phase(std::vector<C>& zs) {
    std::sort(zs.begin(), zs.end(),
              [](C x, C y) { return std::arg(x) < std::arg(y); });
}

double typical_gap(const std::vector<C>& pol) {
    if (pol.size() < 2) return 1.0;
    std::vector<double> gaps(pol.size() - 1);
    for (std::size_t i = 0; i + 1 < pol.size(); ++i)
        gaps[i] = std::abs(pol[i + 1] - pol[i]);
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2,
                     gaps.end());
    return gaps[gaps.size() / 2];
}

// The single negative real root (odd m only), near -0.27846 m.
double real_root(int m, double* rel_out) {
    auto [z, rel] = polish_complement(m, C(-0.27846 * m, 0.0));
    if (!(rel < kAcceptRel) || !(std::abs(z.imag()) < 1e-20 * std::abs(z)))
        throw NoConvergence("negative real root polish failed");
    *rel_out = rel;
    return z.real();
}

// General-purpose route for small degrees, where the coefficient span is
// harmless; each root is re-polished in wide precision for uniform quality.
TruncExpRoots small_degree_roots(int m) {
    std::vector<double> coeffs(static_cast<std::size_t>(m) + 1);
    double f = 1.0;
    coeffs[0] = 1.0;
    for (int j = 1; j <= m; ++j) {
        f /= j;
        coeffs[static_cast<std::size_t>(j)] = f;
    }
    const RootSet rs = find_roots(Polynomial(coeffs), 1e-10);

    TruncExpRoots out;
    for (C z : rs.roots) {
        if (z.imag() < 0) continue; // mirror later
        auto [p, rel] = polish_complement(m, z);
        if (!(rel < kAcceptRel))
            throw NoConvergence("polish failed at degree " +
                                std::to_string(m));
        out.max_rel_step = std::max(out.max_rel_step, rel);
        if (z.imag() > 0) {
            out.roots.push_back(p);
            out.roots.push_back(std::conj(p));
        } else {
            out.roots.push_back(C(p.real(), 0.0));
        }
    }
    return out;
}

void check_newton_sums(const std::vector<C>& roots, int m) {
    if (static_cast<int>(roots.size()) != m)
        throw NoConvergence("found " + std::to_string(roots.size()) +
                            " of " + std::to_string(m) + " roots");
    C sw(0.0, 0.0), s1(0.0, 0.0), s2(0.0, 0.0);
    for (C w : roots) {
        sw += w;
        const C iw = 1.0 / w;
        s1 += iw;
        s2 += iw * iw;
    }
    const bool ok = std::abs(sw + static_cast<double>(m)) <=
                        kNewtonSumTol * m &&
                    std::abs(s1 + 1.0) <= kNewtonSumTol &&
                    std::abs(s2) <= kNewtonSumTol;
    if (!ok)
        throw NoConvergence(
            "root multiset fails the power-sum identity checks");
}

} // namespace

TruncExpRoots trunc_exp_roots(int m) {
    if (m < 1) throw DegreeZero("series order must be >= 1");
    if (m > 1000000) throw OutOfRange("series order too large");

    if (m < kSmallDegreeCutoff) {
        TruncExpRoots out = small_degree_roots(m);
        check_newton_sums(out.roots, m);
        std::sort(out.roots.begin(), out.roots.end(), [](C x, C y) {
            return x.real() != y.real() ? x.real() < y.real()
                                        : x.imag() < y.imag();
        });
        return out;
    }

    const double a = m + 1.0;
    const int npairs = m / 2;
    TruncExpRoots out;

    // Seed -> polish each index in order, continuing eta from the polished
    // (true) roots.
    std::vector<C> pol;
    pol.reserve(static_cast<std::size_t>(npairs));
    C eta_prev{};
    bool have_eta = false;
    for (int j = 0; j < npairs; ++j) {
        Seed sd;
        if (std::sqrt(kPi * (2.0 * j + 1.0)) < 5.0) {
            sd = seed_erfc_form(a, j);
        } else if (have_eta) {
            const C eta0 = eta_continue(eta_prev, a);
            sd = seed_log_form(a, j, &eta0);
        } else {
            sd = seed_log_form(a, j, nullptr);
        }
        if (!sd.ok) continue; // left to the gap-fill net
        auto [z, rel] = polish_complement(m, sd.w);
        if (rel < kAcceptRel && z.imag() > 1e-8 * std::abs(z)) {
            pol.push_back(z);
            out.max_rel_step = std::max(out.max_rel_step, rel);
            eta_prev = eta_from_w(z, a);
            have_eta = true;
        } else if (sd.eta_ok) {
            eta_prev = sd.eta; // best effort, keep walking
            have_eta = true;
        }
    }

    pol = set_dedupe(std::move(pol));
    sort_by_phase(pol);

    // Gap-fill net: midpoints of oversized curve gaps plus extrapolated end
    // points, polished and merged, until the count closes.
    while (static_cast<int>(pol.size()) < npairs && out.repair_passes < 12) {
        ++out.repair_passes;
        std::vector<C> fills;
        const double gap0 = typical_gap(pol);
        for (std::size_t i = 0; i + 1 < pol.size(); ++i)
            if (std::abs(pol[i + 1] - pol[i]) > 1.55 * gap0)
                fills.push_back(0.5 * (pol[i] + pol[i + 1]));
        if (pol.size() >= 2) {
            fills.push_back(pol.front() - (pol[1] - pol.front()));
            fills.push_back(pol.back() + (pol.back() - pol[pol.size() - 2]));
        }
        if (fills.empty()) break;
        std::vector<C> merged = pol;
        for (C z0 : fills) {
            auto [z, rel] = polish_complement(m, z0);
            if (rel < kAcceptRel && z.imag() > 1e-8 * std::abs(z)) {
                merged.push_back(z);
                out.max_rel_step = std::max(out.max_rel_step, rel);
            }
        }
        merged = set_dedupe(std::move(merged));
        sort_by_phase(merged);
        if (merged.size() == pol.size()) break;
        pol = std::move(merged);
    }

    out.roots.reserve(static_cast<std::size_t>(m));
    for (C z : pol) {
        out.roots.push_back(z);
        out.roots.push_back(std::conj(z));
    }
    if (m % 2 == 1) {
        double rel = 1.0;
        out.roots.push_back(C(real_root(m, &rel), 0.0));
        out.max_rel_step = std::max(out.max_rel_step, rel);
    }

    check_newton_sums(out.roots, m);
    std::sort(out.roots.begin(), out.roots.end(), [](C x, C y) {
        return x.real() != y.real() ? x.real() < y.real()
                                    : x.imag() < y.imag();
    });
    return out;
}

std::complex<double> trunc_exp_eval(int m, std::complex<double> z) {
    if (m < 0) throw OutOfRange("series order must be >= 0");
    if (z == C(0.0, 0.0)) return C(1.0, 0.0);
    if (m == 0) return C(1.0, 0.0);
    const WR lgam = boost::math::lgamma(WR(m + 2));
    const WC wz(z.real(), z.imag());
    const WideEval ev = eval_complement(m, wz, lgam);
    return C(ev.s.real().convert_to<double>(),
             ev.s.imag().convert_to<double>());
}

} // namespace pgfclt
