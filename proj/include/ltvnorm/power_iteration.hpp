#pragma once

#include <utility>
#include <vector>

#include "ltvnorm/signal.hpp"
#include "ltvnorm/system.hpp"

namespace ltvnorm {

struct ForwardResult {
    double gamma_f = 0.0;           // sqrt(|e_E(T)|^2 + ||e_I||^2)
    Signal e_I;                     // running output on the disturbance grid
    std::vector<double> e_E_T;      // terminal output
};

// Simulates the plant from x(0) = 0 under disturbance d (piecewise linear on
// its grid) and returns the mixed output performance. gamma_f equals the
// induced gain achieved by d when d has unit norm.
ForwardResult forward_gain(const LtvSystem& sys, const Signal& d,
                           double divergence_threshold = 1e9);

// One pass of the dual plant: backward simulation from
// p(T) = C_E(T)^T * terminal_weight with running input q, returning
// r(t) = B(t)^T p(t) + D_I(t)^T q(t) on q's grid. This is the adjoint map
// paired with forward_gain under  <(w, q), (e_E(T), e_I)> = w^T e_E(T) + <q, e_I>.
Signal adjoint_output(const LtvSystem& sys, const std::vector<double>& terminal_weight,
                      const Signal& q, double divergence_threshold = 1e9);

enum class PowerIterTermination { tolerance_met, max_iters, nonmonotone_detected };

struct PowerIterResult {
    double gamma_star = 0.0;  // final forward performance (a valid lower bound)
    Signal d_star;            // unit-norm disturbance achieving ~gamma_star
    // one (gamma_f, gamma) pair per iteration; gamma is the adjoint output
    // norm, which climbs toward the squared induced norm
    std::vector<std::pair<double, double>> history;
    int iterations = 0;
    PowerIterTermination termination = PowerIterTermination::max_iters;
};

// Alternates forward and adjoint simulation with the alignment step
// d <- r / ||r||, stopping when the gamma sequence gains less than tol, the
// iteration cap is hit, or gamma decreases beyond integration slack (which
// signals integration error and is reported, not hidden). d1 is normalized
// internally; its grid is the analysis grid for the whole run. Throws
// DegenerateDirectionError when the adjoint output vanishes.
PowerIterResult power_iterate(const LtvSystem& sys, const Signal& d1, int max_iters,
                              double tol, double divergence_threshold = 1e9);

}  // namespace ltvnorm
