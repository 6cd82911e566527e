#pragma once

#include "ltvnorm/options.hpp"
#include "ltvnorm/rde.hpp"
#include "ltvnorm/system.hpp"

namespace ltvnorm {

// Certified gain computation by interleaving cheap power iterations with
// single certifying RDE integrations. Each outer pass runs the power
// iteration at tolerance tol / 5 to get a lower bound gamma*, then integrates
// the RDE once at gamma* + tol: a bounded solution closes the bounds at width
// tol; a blow-up promotes gamma* + tol to the new lower bound, whose witness
// disturbance seeds the next pass. Typically finishes in one or two RDE
// integrations against the ~log2(gap / tol) a bisection needs.
//
// Returns converged == false with the best bounds when max_outer passes were
// not enough. Propagates DegenerateDirectionError from the power iteration.
GainBounds combined_gain(const LtvSystem& sys, double tol,
                         const AnalysisOptions& opts = {}, int max_outer = 10);

}  // namespace ltvnorm
