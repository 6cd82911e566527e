#pragma once

#include <span>
#include <vector>

#include "ltvnorm/matrix.hpp"
#include "ltvnorm/signal.hpp"
#include "ltvnorm/system.hpp"

namespace ltvnorm {

// Forward sweep of the controllability Lyapunov differential equation
//
//   X'(t) = A(t) X(t) + X(t) A(t)^T + B(t) B(t)^T,   X(0) = 0
//
// with the output Gramian Y(t) = C_E(t) X(t) C_E(t)^T and its top eigenpair
// recorded at every grid point. One sweep prices the L2-to-Euclidean gain at
// every intermediate horizon simultaneously.
struct GramianTrace {
    std::vector<double> times;
    std::vector<Matrix> state_gramians;   // X(t), exactly symmetric
    std::vector<Matrix> output_gramians;  // Y(t)
    std::vector<double> lambda1;          // largest eigenvalue of Y(t)
    std::vector<std::vector<double>> v1;  // matching unit eigenvector
    std::size_t l2_dim = 0;               // carried for the gain query's scope check
};

// Requires at least one terminal output channel.
GramianTrace solve_lde(const LtvSystem& sys, std::span<const double> grid);

struct L2eGain {
    double gain = 0.0;
    std::vector<double> v1;
    double tau = 0.0;  // snapped to the nearest grid point
    std::size_t grid_index = 0;
};

// gain = sqrt(lambda1(Y(tau))). Only defined when the system has no running
// output channel (l2_dim == 0); throws std::invalid_argument otherwise.
// tau snaps to the nearest grid point.
L2eGain l2e_gain(const GramianTrace& trace, double tau);

// The unit-norm disturbance that drives e_E(tau) to the gain bound:
// backward-integrate p' = -A^T p from p(tau) = C_E(tau)^T v1 / sqrt(lambda1)
// and emit d(t) = B(t)^T p(t) on [0, tau], zero afterwards. Throws
// std::runtime_error when lambda1(Y(tau)) <= 1e-12 (output unreachable).
Signal wc_disturbance_l2e(const LtvSystem& sys, const GramianTrace& trace, double tau);

}  // namespace ltvnorm
