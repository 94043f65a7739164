// SPDX-License-Identifier: MIT
#include "pgfclt/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>

#include <nlohmann/json.hpp>

#include "pgfclt/multiprec.hpp"

namespace pgfclt {

namespace {

// Divides by the extended-precision sum, then shifts the rounding residue of
// the double-rounded vector onto its largest entry so the stored doubles sum
// to 1 up to one ulp of that entry (the class invariant is 1e-12).
std::vector<double> normalized(const std::vector<double>& w) {
    Real50 sum = 0;
    for (double x : w) sum += x;
    std::vector<double> out(w.size());
    std::size_t largest = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        out[i] = static_cast<double>(Real50(w[i]) / sum);
        if (out[i] > out[largest]) largest = i;
    }
    Real50 rounded_sum = 0;
    for (double x : out) rounded_sum += x;
    out[largest] -= static_cast<double>(rounded_sum - 1);
    return out;
}

} // namespace

Pmf Pmf::from_weights(const std::vector<double>& weights) {
    if (weights.empty()) throw AllZero("empty weight vector");
    bool any_positive = false;
    for (double x : weights) {
        if (!std::isfinite(x)) throw NonFinite("weight is not finite");
        if (x < 0) throw NegativeWeight("weight " + std::to_string(x));
        if (x > 0) any_positive = true;
    }
    if (!any_positive) throw AllZero("all weights are zero");
    return Pmf(normalized(weights));
}

Pmf Pmf::from_probs(const std::vector<double>& probs) {
    if (probs.empty()) throw AllZero("empty probability vector");
    double sum = 0;
    for (double x : probs) {
        if (!std::isfinite(x)) throw NonFinite("probability is not finite");
        if (x < 0) throw NegativeWeight("probability " + std::to_string(x));
        sum += x;
    }
    if (sum == 0) throw AllZero("all probabilities are zero");
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidPmf("probabilities sum to " + std::to_string(sum) +
                         ", more than 1e-9 away from 1");
    return Pmf(normalized(probs));
}

std::pair<double, double> Pmf::mean_var() const {
    Real50 m1 = 0, m2 = 0;
    for (std::size_t k = 0; k < probs_.size(); ++k) {
        Real50 kk(static_cast<double>(k));
        m1 += kk * probs_[k];
        m2 += kk * kk * probs_[k];
    }
    Real50 var = m2 - m1 * m1;
    if (var < 0) var = 0; // roundoff guard for degenerate distributions
    return {static_cast<double>(m1), static_cast<double>(var)};
}

CumulantVector cumulants_from_pmf(const Pmf& pmf, int M) {
    if (M < 1) throw OutOfRange("cumulant order must be >= 1");
    if (M > 20)
        throw MTooLarge("cumulant order " + std::to_string(M) +
                        " exceeds the supported limit 20");

    // Raw moments mu'_j = sum_k k^j p_k, j = 0..M, at 50 digits.
    std::vector<Real50> mu(static_cast<std::size_t>(M) + 1, Real50(0));
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (pmf[k] == 0) continue;
        Real50 p(pmf[k]);
        Real50 pw(1);
        Real50 kk(static_cast<double>(k));
        for (int j = 0; j <= M; ++j) {
            mu[static_cast<std::size_t>(j)] += pw * p;
            pw *= kk;
        }
    }

    // Pascal triangle up to M-1 (exact in extended precision).
    std::vector<std::vector<Real50>> binom(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) {
        binom[i].assign(static_cast<std::size_t>(i) + 1, Real50(1));
        for (int j = 1; j < i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
    }

    // kappa_m = mu'_m - sum_{j=1}^{m-1} C(m-1, j-1) kappa_j mu'_{m-j}.
    std::vector<Real50> kappa(static_cast<std::size_t>(M) + 1, Real50(0));
    CumulantVector out;
    out.source = CumulantVector::Source::coefficient_oracle;
    out.values.resize(static_cast<std::size_t>(M));
    for (int m = 1; m <= M; ++m) {
        Real50 acc = mu[static_cast<std::size_t>(m)];
        for (int j = 1; j < m; ++j)
            acc -= binom[m - 1][j - 1] * kappa[static_cast<std::size_t>(j)] *
                   mu[static_cast<std::size_t>(m - j)];
        kappa[static_cast<std::size_t>(m)] = acc;
        out.values[static_cast<std::size_t>(m) - 1] = static_cast<double>(acc);
    }
    return out;
}

Pmf convolve(const Pmf& a, const Pmf& b) {
    std::vector<long double> acc(a.size() + b.size() - 1, 0.0L);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        long double ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += ai * b[j];
    }
    std::vector<double> out(acc.begin(), acc.end());
    return Pmf::from_weights(out);
}

Pmf tilt(const Pmf& pmf, double r) {
    if (!(r > 0) || !std::isfinite(r))
        throw NonPositiveR("tilt factor " + std::to_string(r));
    // Work in log space: r^k p_k may overflow doubles for large supports.
    const double logr = std::log(r);
    double max_log = -std::numeric_limits<double>::infinity();
    std::vector<double> logs(pmf.size(),
                             -std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (pmf[k] == 0) continue;
        logs[k] = static_cast<double>(k) * logr + std::log(pmf[k]);
        max_log = std::max(max_log, logs[k]);
    }
    std::vector<double> w(pmf.size(), 0.0);
    for (std::size_t k = 0; k < pmf.size(); ++k)
        if (std::isfinite(logs[k])) w[k] = std::exp(logs[k] - max_log);
    return Pmf::from_weights(w);
}

namespace {

Pmf pmf_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw ParseError("top-level JSON value must be an object");
    const bool has_p = j.contains("p");
    const bool has_w = j.contains("weights");
    if (has_p == has_w)
        throw ParseError(
            "expected exactly one of the keys \"p\" or \"weights\"");
    const auto& arr = has_p ? j.at("p") : j.at("weights");
    if (!arr.is_array() || arr.empty())
        throw ParseError("probability entries must form a nonempty array");
    std::vector<double> v;
    v.reserve(arr.size());
    for (const auto& x : arr) {
        if (!x.is_number())
            throw ParseError("probability entries must be numbers");
        v.push_back(x.get<double>());
    }
    return has_p ? Pmf::from_probs(v) : Pmf::from_weights(v);
}

} // namespace

Pmf load_pmf_json(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
    return pmf_from_json(j);
}

Pmf load_pmf_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open PMF file: " + path);
    return load_pmf_json(in);
}

} // namespace pgfclt
