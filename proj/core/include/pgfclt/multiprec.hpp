// SPDX-License-Identifier: MIT
#pragma once

// Extended-precision scalar types. Coefficient-side computations (moments,
// cumulants, the truncated-exponential root solver) need >= 50 significant
// decimal digits because raw-moment cancellation destroys doubles for large
// supports. cpp_bin_float has compile-time precision (thread-safe, no global
// state) and a binary exponent range of roughly 10^(+-6*10^8), wide enough
// for intermediates like z^m/m! at m ~ 10^4.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace pgfclt {

using Real50 = boost::multiprecision::cpp_bin_float_50;
using Complex50 = boost::multiprecision::cpp_complex_50;
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

} // namespace pgfclt
