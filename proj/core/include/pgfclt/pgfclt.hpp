// SPDX-License-Identifier: MIT
#pragma once

// Umbrella header for the pgfclt library: analysis of bounded discrete
// random variables through the complex roots of their probability
// generating functions — root power sums, cumulants, root-geometry
// normality conditions, counterexample families, and normality metrics.

#include "pgfclt/cumulants.hpp"
#include "pgfclt/diagnostics.hpp"
#include "pgfclt/errors.hpp"
#include "pgfclt/families.hpp"
#include "pgfclt/pmf.hpp"
#include "pgfclt/polynomial.hpp"
#include "pgfclt/region.hpp"
#include "pgfclt/report.hpp"
#include "pgfclt/roots.hpp"
#include "pgfclt/trunc_exp.hpp"
#include "pgfclt/verify.hpp"
#include "pgfclt/version.hpp"
