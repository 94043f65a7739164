// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace pgfclt {

// Exit-code conventions shared by the library and the CLI:
//   0 success, 2 invalid input/configuration, 3 numerical failure,
//   4 property-suite failure.
enum class ErrorKind { config = 2, numerical = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

#define PGFCLT_DEFINE_ERROR(NAME, KIND)                              \
    class NAME : public Error {                                      \
    public:                                                          \
        explicit NAME(const std::string& what)                       \
            : Error(ErrorKind::KIND, std::string(#NAME ": ") + what) \
        {}                                                           \
    };

// Invalid input / configuration (exit 2).
PGFCLT_DEFINE_ERROR(NegativeWeight, config)
PGFCLT_DEFINE_ERROR(AllZero, config)
PGFCLT_DEFINE_ERROR(NonFinite, config)
PGFCLT_DEFINE_ERROR(InvalidPmf, config)
PGFCLT_DEFINE_ERROR(MTooLarge, config)
PGFCLT_DEFINE_ERROR(NonPositiveR, config)
PGFCLT_DEFINE_ERROR(DegreeZero, config)
PGFCLT_DEFINE_ERROR(OutOfRange, config)
PGFCLT_DEFINE_ERROR(ThetaTooLarge, config)
PGFCLT_DEFINE_ERROR(PositiveRealRoot, config)
PGFCLT_DEFINE_ERROR(ZeroVariance, config)
PGFCLT_DEFINE_ERROR(KTooLarge, config)
PGFCLT_DEFINE_ERROR(NTooSmall, config)
PGFCLT_DEFINE_ERROR(BadEpsilon, config)
PGFCLT_DEFINE_ERROR(ParseError, config)

// Numerical failures (exit 3).
PGFCLT_DEFINE_ERROR(NoConvergence, numerical)
PGFCLT_DEFINE_ERROR(RootOnUnitCircle, numerical)
PGFCLT_DEFINE_ERROR(TruncationInsufficient, numerical)
PGFCLT_DEFINE_ERROR(OutsideDomain, numerical)
PGFCLT_DEFINE_ERROR(FormsDisagree, numerical)

#undef PGFCLT_DEFINE_ERROR

} // namespace pgfclt
