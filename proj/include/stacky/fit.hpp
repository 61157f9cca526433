#pragma once

#include <optional>
#include <vector>

#include "stacky/counting.hpp"

namespace stacky {

struct FitResult {
    double alpha = 0;         // exponent of B
    double log_exponent = 0;  // exponent of log B
    double constant = 0;      // leading constant C
    double residual = 0;      // rms residual of log N
    bool fixed_alpha = false;
};

// Least-squares fit of log N = log C + alpha log B + beta log log B over the
// samples. With fix_alpha set, alpha is substituted and only (C, beta) are
// fitted. Needs >= 4 samples with B >= e^2 and positive counts.
FitResult fit_exponents(const CountSeries& series, std::optional<double> fix_alpha = {});

}  // namespace stacky
