// SPDX-License-Identifier: MIT
#include "pgfclt/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "pgfclt/errors.hpp"

namespace pgfclt {

namespace {

using C = std::complex<double>;

constexpr double kUnitCircleGuard = 1e-9;
constexpr double kPairingTol = 1e-8;
constexpr int kAberthMaxSweeps = 500;
constexpr int kCompanionMaxDegree = 800;

bool finite(C z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// One simultaneous-iteration stage. Returns true when every iterate meets
// the residual tolerance.
bool aberth_iterate(const Polynomial& poly, std::vector<C>& z, double tol) {
    const std::size_t d = z.size();
    std::vector<C> correction(d);
    for (int sweep = 0; sweep < kAberthMaxSweeps; ++sweep) {
        double max_step = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const C pj = poly.eval(z[j]);
            const C dj = poly.eval_derivative(z[j]);
            if (!finite(pj) || !finite(dj)) {
                // iterate escaped the representable range: pull it back in
                z[j] *= 0.5;
                max_step = std::numeric_limits<double>::infinity();
                continue;
            }
            if (pj == C(0.0, 0.0)) {
                correction[j] = C(0.0, 0.0);
                continue;
            }
            const C w = (dj == C(0.0, 0.0)) ? C(1e-12, 1e-12) : pj / dj;
            C repulsion(0.0, 0.0);
            for (std::size_t k = 0; k < d; ++k) {
                if (k == j) continue;
                const C diff = z[j] - z[k];
                if (diff == C(0.0, 0.0)) continue;
                repulsion += 1.0 / diff;
            }
            C step = w / (1.0 - w * repulsion);
            if (!finite(step)) step = w;
            correction[j] = step;
        }
        for (std::size_t j = 0; j < d; ++j) {
            z[j] -= correction[j];
            const double rel =
                std::abs(correction[j]) / std::max(1.0, std::abs(z[j]));
            max_step = std::max(max_step, rel);
        }
        if (max_step < 1e-14) break;
    }
    for (const C& root : z)
        if (!(poly.scaled_residual(root) <= tol)) return false;
    return true;
}

std::vector<C> companion_eigenvalues(const Polynomial& poly) {
    const int d = poly.degree();
    const auto& a = poly.coeffs();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) m(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) m(i, d - 1) = -a[i] / a[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    std::vector<C> z(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) z[static_cast<std::size_t>(i)] =
        solver.eigenvalues()(i);
    return z;
}

// A few Newton steps to sharpen eigensolver output.
void newton_polish(const Polynomial& poly, std::vector<C>& z) {
    for (C& root : z) {
        for (int it = 0; it < 5; ++it) {
            const C p = poly.eval(root);
            const C dp = poly.eval_derivative(root);
            if (dp == C(0.0, 0.0) || !finite(p) || !finite(dp)) break;
            const C step = p / dp;
            if (!finite(step)) break;
            root -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(root))) break;
        }
    }
}

// Enforces exact conjugate symmetry for real-coefficient inputs: flattens
// near-real roots, then greedily pairs upper-half roots with lower-half
// partners and replaces each pair by an exact conjugate pair.
void pair_conjugates(std::vector<C>& z) {
    std::vector<C> upper, lower, done;
    for (const C& root : z) {
        const double scale = 1.0 + std::abs(root);
        if (std::abs(root.imag()) <= kPairingTol * scale)
            done.emplace_back(root.real(), 0.0);
        else if (root.imag() > 0)
            upper.push_back(root);
        else
            lower.push_back(root);
    }
    std::vector<bool> used(lower.size(), false);
    for (const C& up : upper) {
        std::size_t best = lower.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < lower.size(); ++i) {
            if (used[i]) continue;
            const double dist = std::abs(std::conj(up) - lower[i]);
            if (dist < best_dist) {
                best_dist = dist;
                best = i;
            }
        }
        if (best < lower.size() &&
            best_dist <= kPairingTol * (1.0 + std::abs(up)) * 2.0) {
            used[best] = true;
            const C mean = 0.5 * (up + std::conj(lower[best]));
            done.push_back(mean);
            done.push_back(std::conj(mean));
        } else {
            done.push_back(up); // unpaired: keep as computed
        }
    }
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (!used[i]) done.push_back(lower[i]);
    z = std::move(done);
}

} // namespace

RootSet find_roots(const Polynomial& poly, double tol) {
    if (!(tol > 0)) throw OutOfRange("root residual tolerance must be > 0");

    // Factor roots at exactly 0 out of the low end.
    std::vector<C> coeffs = poly.coeffs();
    int zero_roots = 0;
    while (coeffs.size() > 1 && coeffs.front() == C(0.0, 0.0)) {
        coeffs.erase(coeffs.begin());
        ++zero_roots;
    }
    const Polynomial work(std::move(coeffs));
    const int d = work.degree();
    if (d < 1 && zero_roots == 0)
        throw DegreeZero("constant polynomial has no roots");

    RootSet rs;
    rs.zero_root_count = zero_roots;
    if (d < 1) return rs;

    std::vector<C> z;
    if (d == 1) {
        z.push_back(-work.coeffs()[0] / work.coeffs()[1]);
    } else {
        const double ratio = std::abs(work.coeffs()[0] / work.coeffs()[d]);
        double radius = std::pow(ratio, 1.0 / d);
        if (!std::isfinite(radius) || radius == 0.0) radius = 1.0;
        // golden-angle spacing avoids the symmetric stalls of uniform grids
        const double golden =
            2.0 * std::numbers::pi * (1.0 - 2.0 / (1.0 + std::sqrt(5.0)));
        z.resize(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j)
            z[static_cast<std::size_t>(j)] =
                std::polar(radius, golden * j + 0.20258);
        if (!aberth_iterate(work, z, tol)) {
            if (d > kCompanionMaxDegree)
                throw NoConvergence(
                    "simultaneous iteration stalled at degree " +
                    std::to_string(d) +
                    ", beyond the companion-matrix fallback limit");
            z = companion_eigenvalues(work);
            newton_polish(work, z);
        }
    }

    if (work.real_coeffs()) pair_conjugates(z);

    rs.roots = std::move(z);
    rs.residuals.resize(rs.roots.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
        rs.residuals[i] = work.scaled_residual(rs.roots[i]);
        worst = std::max(worst, rs.residuals[i]);
    }
    if (!(worst <= tol))
        throw NoConvergence("worst scaled residual " + std::to_string(worst) +
                            " exceeds tolerance");
    return rs;
}

std::vector<C> newton_power_sums(const Polynomial& poly, int K) {
    if (poly.degree() < 1) throw DegreeZero("power sums need degree >= 1");
    if (K < 1) throw OutOfRange("power-sum order must be >= 1");
    const int d = poly.degree();
    const auto& a = poly.coeffs();

    // e_i = (-1)^i a_{d-i} / a_d, elementary symmetric functions
    std::vector<C> e(static_cast<std::size_t>(d) + 1);
    e[0] = C(1.0, 0.0);
    double sign = -1.0;
    for (int i = 1; i <= d; ++i) {
        e[static_cast<std::size_t>(i)] = sign * a[d - i] / a[d];
        sign = -sign;
    }

    // p_k = (-1)^{k-1} k e_k + sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i}
    std::vector<C> p(static_cast<std::size_t>(K) + 1);
    for (int k = 1; k <= K; ++k) {
        C acc(0.0, 0.0);
        if (k <= d)
            acc = ((k % 2 == 1) ? 1.0 : -1.0) * static_cast<double>(k) *
                  e[static_cast<std::size_t>(k)];
        for (int i = 1; i < k; ++i) {
            if (i > d) break;
            const double s = (i % 2 == 1) ? 1.0 : -1.0;
            acc += s * e[static_cast<std::size_t>(i)] *
                   p[static_cast<std::size_t>(k - i)];
        }
        p[static_cast<std::size_t>(k)] = acc;
    }
    return {p.begin() + 1, p.end()};
}

RootProfile root_profile(const RootSet& rs, int K) {
    if (K < 2) throw OutOfRange("profile truncation order must be >= 2");
    for (const C& zeta : rs.roots) {
        const double m = std::abs(zeta);
        if (std::abs(m - 1.0) <= kUnitCircleGuard)
            throw RootOnUnitCircle(
                "root with |zeta| = " + std::to_string(m) +
                " inside the split guard band; reweight (tilt) first");
    }

    RootProfile prof;
    prof.K = K;
    prof.T.assign(static_cast<std::size_t>(K), C(0.0, 0.0));
    prof.S.assign(static_cast<std::size_t>(K), C(0.0, 0.0));
    prof.Tstar.assign(static_cast<std::size_t>(K), 0.0);
    prof.R = rs.zero_root_count; // roots at 0 are inside roots

    for (const C& zeta : rs.roots) {
        const double m = std::abs(zeta);
        if (m > 1.0) {
            const C inv = 1.0 / zeta;
            C pw = inv;
            for (int k = 0; k < K; ++k) {
                prof.T[static_cast<std::size_t>(k)] += pw;
                pw *= inv;
            }
        } else {
            ++prof.R;
            C pw = zeta;
            for (int k = 0; k < K; ++k) {
                prof.S[static_cast<std::size_t>(k)] += pw;
                pw *= zeta;
            }
        }
        const double invm = 1.0 / m;
        double mp = invm;
        for (int k = 0; k < K; ++k) {
            prof.Tstar[static_cast<std::size_t>(k)] += mp;
            mp *= invm;
        }
    }
    if (rs.zero_root_count > 0)
        std::fill(prof.Tstar.begin(), prof.Tstar.end(),
                  std::numeric_limits<double>::infinity());
    return prof;
}

double min_dist_to_one(const RootSet& rs) {
    if (rs.roots.empty() && rs.zero_root_count == 0)
        throw OutOfRange("empty root set");
    double best = std::numeric_limits<double>::infinity();
    for (const C& zeta : rs.roots)
        best = std::min(best, std::abs(C(1.0, 0.0) - zeta));
    if (rs.zero_root_count > 0) best = std::min(best, 1.0);
    return best;
}

int default_profile_truncation(double alpha, double tail) {
    if (!(alpha > 1.0) || !(tail > 0.0) || !(tail < 1.0)) return 64;
    const double k = 8.0 * std::ceil(std::log(1.0 / tail) / std::log(alpha));
    return static_cast<int>(std::min(std::max(64.0, k), 1048576.0));
}

} // namespace pgfclt
