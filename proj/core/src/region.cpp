// SPDX-License-Identifier: MIT
#include "pgfclt/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pgfclt/errors.hpp"

namespace pgfclt {

namespace {

using C = std::complex<double>;

// Shared sign kernel: the defining inequality of S and the factored
// numerator of -m_2/2 are the same expression,
//   g(a,b) = a (1 + a^2 + b^2) - 2 (a^2 + b^2),
// which is what makes the membership/sign equivalence exact.
double region_kernel(double a, double b) {
    const double r2 = a * a + b * b;
    return a * (1.0 + r2) - 2.0 * r2;
}

bool is_positive_real(C z) { return z.imag() == 0.0 && z.real() > 0.0; }

// Boundary point at curve parameter r (upper branch):
// w(r) = r e^{i theta(r)}, cos theta(r) = 2r/(1+r^2).
C boundary_point(double r) {
    const double c = std::clamp(2.0 * r / (1.0 + r * r), -1.0, 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    return C(r * c, r * s);
}

double ipow(double x, int k) {
    double acc = 1.0;
    double base = x;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
    }
    return acc;
}

} // namespace

bool in_region_s(C z) { return region_kernel(z.real(), z.imag()) >= 0.0; }

double dist_to_region_s(C z, double tol) {
    if (!(tol > 0)) throw OutOfRange("distance tolerance must be > 0");
    if (in_region_s(z)) return 0.0;

    // The nearest point of the closed region lies on the boundary curve;
    // for Im z >= 0 it lies on the upper branch (mirror-symmetry argument),
    // so fold z into the upper half-plane first.
    const C p(z.real(), std::abs(z.imag()));
    auto dist_at = [&](double log_r) {
        return std::abs(p - boundary_point(std::exp(log_r)));
    };

    // Coarse log-spaced scan over r in [1e-6, 1e6] brackets every local
    // minimum of the one-parameter objective; golden-section refines each
    // bracket. (The curve starts at the origin and asymptotes to the
    // vertical line Re = 2.)
    constexpr int kScan = 600;
    const double lo = std::log(1e-6), hi = std::log(1e6);
    std::vector<double> d(kScan);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScan; ++i) {
        const double t = lo + (hi - lo) * i / (kScan - 1);
        d[static_cast<std::size_t>(i)] = dist_at(t);
        best = std::min(best, d[static_cast<std::size_t>(i)]);
    }
    const double step = (hi - lo) / (kScan - 1);
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 1; i + 1 < kScan; ++i) {
        if (!(d[i] <= d[i - 1] && d[i] <= d[i + 1])) continue;
        double a = lo + step * (i - 1), b = lo + step * (i + 1);
        double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
        double f1 = dist_at(x1), f2 = dist_at(x2);
        // tol is an absolute accuracy on the distance; the objective is
        // 1-Lipschitz in the boundary point, so shrink the r-bracket until
        // the boundary points move less than tol.
        while (std::abs(boundary_point(std::exp(a)) -
                        boundary_point(std::exp(b))) > 0.5 * tol) {
            if (f1 < f2) {
                b = x2, x2 = x1, f2 = f1;
                x1 = b - golden * (b - a);
                f1 = dist_at(x1);
            } else {
                a = x1, x1 = x2, f1 = f2;
                x2 = a + golden * (b - a);
                f2 = dist_at(x2);
            }
        }
        best = std::min({best, f1, f2});
    }
    return best;
}

QuadFactor quad_factor(C zeta) {
    if (is_positive_real(zeta))
        throw PositiveRealRoot("factor undefined on the positive real axis");
    QuadFactor f;
    if (zeta.imag() == 0.0) {
        const double r = -zeta.real(); // zeta = -r, r >= 0
        f.p2 = 0.0;
        f.p1 = 1.0 / (1.0 + r);
        f.p0 = r / (1.0 + r);
    } else {
        const double a = zeta.real(), b = zeta.imag();
        const double q = (1.0 - a) * (1.0 - a) + b * b;
        f.p2 = 1.0 / q;
        f.p1 = -2.0 * a / q;
        f.p0 = (a * a + b * b) / q;
    }
    f.mu = 2.0 * f.p2 + f.p1;
    return f;
}

double central_moment_mk(C zeta, int k) {
    if (k < 0) throw OutOfRange("moment order must be >= 0");
    const QuadFactor f = quad_factor(zeta);

    const double t2 = f.p2 * ipow(2.0 - f.mu, k);
    const double t1 = f.p1 * ipow(1.0 - f.mu, k);
    const double t0 = f.p0 * ipow(-f.mu, k);
    const double p_form = t2 + t1 + t0;

    if (zeta.imag() != 0.0) {
        const double a = zeta.real(), b = zeta.imag();
        const double r2 = a * a + b * b;
        const double q = (1.0 - a) * (1.0 - a) + b * b;
        const double closed = (ipow(2.0 * r2 - 2.0 * a, k) -
                               2.0 * a * ipow(r2 - 1.0, k) +
                               r2 * ipow(2.0 * a - 2.0, k)) /
                              ipow(q, k + 1);
        // The two routes are algebraically identical; beyond-roundoff
        // disagreement means an implementation defect, not bad input.
        const double term_scale =
            std::abs(t2) + std::abs(t1) + std::abs(t0);
        if (std::abs(p_form - closed) > 1e-9 * std::max(1e-12, term_scale))
            throw FormsDisagree(
                "factor-moment routes differ beyond roundoff at order " +
                std::to_string(k));
    }
    return p_form;
}

int m2_sign(C zeta) {
    if (is_positive_real(zeta))
        throw PositiveRealRoot("sign undefined on the positive real axis");
    const double g = region_kernel(zeta.real(), zeta.imag());
    if (g > 0.0) return -1; // m_2 = -2 g / q^2
    if (g < 0.0) return +1;
    return 0;
}

RegionReport count_near_s(const RootSet& rs, double delta) {
    if (!(delta > 0)) throw OutOfRange("census distance must be > 0");
    RegionReport report;
    report.delta = delta;

    auto add = [&](C root) {
        RegionReport::PerRoot row;
        row.root = root;
        row.in_S = in_region_s(root);
        row.dist_to_S = row.in_S ? 0.0 : dist_to_region_s(root, 1e-9);
        row.m2 = is_positive_real(root)
                     ? std::numeric_limits<double>::quiet_NaN()
                     : central_moment_mk(root, 2);
        if (row.dist_to_S <= delta) ++report.N_delta;
        report.per_root.push_back(row);
    };

    for (const C& root : rs.roots) add(root);
    for (int i = 0; i < rs.zero_root_count; ++i) add(C(0.0, 0.0));
    return report;
}

std::pair<double, bool> moment_bound_probe(C zeta, double delta, int k) {
    if (k < 2) throw OutOfRange("probe order must be >= 2");
    const double dist =
        in_region_s(zeta) ? 0.0 : dist_to_region_s(zeta, 1e-9);
    if (!(dist > delta)) return {0.0, false};
    const double m2 = central_moment_mk(zeta, 2);
    return {std::abs(central_moment_mk(zeta, k)) / m2, true};
}

} // namespace pgfclt
