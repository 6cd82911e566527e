#pragma once

#include <cstdint>
#include <vector>

#include "ltvnorm/system.hpp"

namespace ltvnorm {

// Knobs shared by every analysis. `steps == 0` picks a step count from the
// horizon and the coefficient scale: max(2000, ceil(40 * T * rate)) where
// rate is the largest infinity norm of A(t) seen on a coarse scan, i.e. at
// least 40 steps per characteristic time of the fastest dynamics.
struct AnalysisOptions {
    int steps = 0;
    double divergence_threshold = 1e9;
    std::uint64_t seed = 1;
    int max_power_iterations = 50;
};

int default_step_count(const LtvSystem& sys);

// Uniform grid over [0, horizon] with opts.steps intervals (steps + 1 points).
std::vector<double> analysis_grid(const LtvSystem& sys, const AnalysisOptions& opts);

}  // namespace ltvnorm
