// SPDX-License-Identifier: MIT
#include "pgfclt/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pgfclt {

void Polynomial::finish_init() {
    while (coeffs_.size() > 1 && coeffs_.back() == C(0.0, 0.0))
        coeffs_.pop_back();
    height_ = 0.0;
    real_ = true;
    for (const C& c : coeffs_) {
        height_ = std::max(height_, std::abs(c));
        if (c.imag() != 0.0) real_ = false;
    }
}

Polynomial::Polynomial(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(C(0.0, 0.0));
    finish_init();
}

Polynomial::Polynomial(const std::vector<double>& coeffs) {
    coeffs_.reserve(coeffs.size());
    for (double c : coeffs) coeffs_.emplace_back(c, 0.0);
    if (coeffs_.empty()) coeffs_.push_back(C(0.0, 0.0));
    finish_init();
}

Polynomial Polynomial::from_pmf(const Pmf& pmf, int* zero_roots) {
    const auto& p = pmf.probs();
    std::size_t lead = 0;
    while (lead < p.size() - 1 && p[lead] == 0.0) ++lead;
    if (zero_roots) *zero_roots = static_cast<int>(lead);
    std::vector<double> c(p.begin() + static_cast<std::ptrdiff_t>(lead),
                          p.end());
    return Polynomial(c);
}

Polynomial::C Polynomial::eval(C z) const {
    C acc(0.0, 0.0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
}

Polynomial::C Polynomial::eval_derivative(C z) const {
    C acc(0.0, 0.0);
    for (std::size_t i = coeffs_.size(); i-- > 1;)
        acc = acc * z + coeffs_[i] * static_cast<double>(i);
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial(std::vector<C>{C(0.0, 0.0)});
    std::vector<C> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
}

double Polynomial::scaled_residual(C z) const {
    if (height_ == 0.0) return 0.0;
    // log space: max(1,|z|)^degree overflows doubles at high degree
    const double az = std::max(1.0, std::abs(z));
    const double log_scale = std::log(height_) + degree() * std::log(az);
    const C value = eval(z);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        return std::numeric_limits<double>::infinity();
    if (value == C(0.0, 0.0)) return 0.0;
    return std::exp(std::log(std::abs(value)) - log_scale);
}

} // namespace pgfclt
