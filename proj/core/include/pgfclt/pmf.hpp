// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pgfclt/errors.hpp"

namespace pgfclt {

// Finite nonnegative probability vector on {0, ..., n}. Stored renormalized
// (entries sum to 1 within 1e-12); trailing zeros are retained, they define
// the support bound n. Immutable after construction: all operations on Pmf
// are pure functions and safe for concurrent use.
class Pmf {
public:
    // Normalizes arbitrary nonnegative weights. Trailing zeros retained.
    // Throws NegativeWeight / AllZero / NonFinite.
    static Pmf from_weights(const std::vector<double>& weights);

    // Accepts an already-normalized vector. Deviations of the sum from 1 up
    // to 1e-9 are silently renormalized (forgiving file ingestion); worse
    // deviations throw InvalidPmf (corrupt data).
    static Pmf from_probs(const std::vector<double>& probs);

    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }
    // Support bound n (degree of the generating polynomial before trimming).
    std::size_t n() const noexcept { return probs_.size() - 1; }
    double operator[](std::size_t k) const { return probs_[k]; }

    // Mean and variance via extended-precision accumulation:
    // mean = sum k*p_k, variance = sum k^2*p_k - mean^2.
    std::pair<double, double> mean_var() const;

private:
    explicit Pmf(std::vector<double> probs) : probs_(std::move(probs)) {}
    std::vector<double> probs_;
};

// kappa_1..kappa_M with a provenance flag: computed from the coefficient
// side (raw-moment recurrence, the oracle) or from root power sums.
struct CumulantVector {
    enum class Source { coefficient_oracle, root_based };
    std::vector<double> values; // values[m-1] = kappa_m
    Source source = Source::coefficient_oracle;
};

// Coefficient-side cumulants via the raw-moment -> cumulant recurrence
//   kappa_m = mu'_m - sum_{j=1}^{m-1} C(m-1, j-1) kappa_j mu'_{m-j},
// with raw moments mu'_j = sum_k k^j p_k accumulated at >= 50 decimal
// digits to control cancellation. kappa_1 = mean, kappa_2 = variance.
// Requires 1 <= M <= 20 (beyond that the recurrence amplifies coefficient
// noise past any useful accuracy); throws MTooLarge.
CumulantVector cumulants_from_pmf(const Pmf& pmf, int M);

// Distribution of the independent sum: discrete convolution, support bound
// n_a + n_b.
Pmf convolve(const Pmf& a, const Pmf& b);

// Exponential reweighting p~_k = r^k p_k / sum_j r^j p_j (r > 0, else
// NonPositiveR). The roots of the reweighted generating polynomial are the
// original roots divided by r; used to push roots off the unit circle.
Pmf tilt(const Pmf& pmf, double r);

// Loads {"p": [p_0, ..., p_n]} (normalized within 1e-9) or
// {"weights": [...]} (arbitrary nonnegative, normalized on load).
// Throws ParseError on malformed input.
Pmf load_pmf_json(std::istream& in);
Pmf load_pmf_json_file(const std::string& path);

} // namespace pgfclt
