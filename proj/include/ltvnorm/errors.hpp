#pragma once

#include <stdexcept>
#include <string>

namespace ltvnorm {

// The iteration produced an exactly-zero adjoint output: the system maps the
// current disturbance to nothing, so the caller should re-seed.
struct DegenerateDirectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No finite upper bound was found below the search cap.
struct UnboundedGainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A constructed lower-bound disturbance failed its mandatory simulation
// check; `achieved_gain` is the gain it actually reached.
struct ConstructionFailedError : std::runtime_error {
    ConstructionFailedError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_gain(achieved) {}
    double achieved_gain;
};

}  // namespace ltvnorm
