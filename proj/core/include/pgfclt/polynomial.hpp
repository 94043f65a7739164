// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <vector>

#include "pgfclt/pmf.hpp"

namespace pgfclt {

// Dense polynomial, coefficients ascending by degree, leading coefficient
// nonzero after trimming. Immutable; all methods are const and thread-safe.
class Polynomial {
public:
    using C = std::complex<double>;

    // Trims trailing zero coefficients (degree drop). Degree-0 polynomials
    // are representable; only root finding rejects them.
    explicit Polynomial(std::vector<C> coeffs);
    explicit Polynomial(const std::vector<double>& coeffs);

    // Generating polynomial of a PMF with zero-coefficient bookkeeping:
    // leading (low-order) zero probabilities factor out as roots at exactly
    // 0 and are stripped; their count is returned through zero_roots so the
    // inside-root count R stays exact. Trailing zeros are trimmed (degree
    // drop).
    static Polynomial from_pmf(const Pmf& pmf, int* zero_roots = nullptr);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<C>& coeffs() const noexcept { return coeffs_; }
    bool real_coeffs() const noexcept { return real_; }
    // max |c_j|, the scale used for relative residuals
    double height() const noexcept { return height_; }

    C eval(C z) const;                 // Horner
    C eval_derivative(C z) const;
    Polynomial derivative() const;

    // |P(z)| / (height * max(1,|z|)^degree): scale-free backward-error
    // style residual used by the root-finder acceptance test.
    double scaled_residual(C z) const;

private:
    std::vector<C> coeffs_;
    double height_ = 0.0;
    bool real_ = true;
    void finish_init();
};

} // namespace pgfclt
