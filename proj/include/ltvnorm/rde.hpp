#pragma once

#include <limits>
#include <optional>
#include <span>
#include <utility>

#include "ltvnorm/matrix.hpp"
#include "ltvnorm/ode.hpp"
#include "ltvnorm/options.hpp"
#include "ltvnorm/signal.hpp"
#include "ltvnorm/system.hpp"

namespace ltvnorm {

// Coefficients of the gain-certificate Riccati differential equation at
// level gamma:
//
//   Q = C_I^T C_I,  S = C_I^T D_I,  R = D_I^T D_I - gamma^2 I,
//   F = C_E(T)^T C_E(T)
//
//   P' = -(A^T P + P A + Q - (P B + S) R^{-1} (P B + S)^T),  P(T) = F.
//
// A bounded backward solution on [0, T] together with R(t) < 0 certifies
// that the induced norm is below gamma; blow-up certifies it is at least
// gamma.
struct RdeCoefficients {
    double gamma = 0.0;
    bool feasible = false;  // R(t) < 0 held at every scanned grid point
    std::optional<double> first_infeasible_time;

    Matrix Q(double t) const;
    Matrix S(double t) const;
    Matrix R(double t) const;
    const Matrix& F() const { return terminal_cost; }

    TvMatrixFn c_i;
    TvMatrixFn d_i;
    Matrix terminal_cost;
};

// Assembles coefficients and scans R(t) on the grid for negative
// definiteness. Infeasibility is a flag here, not an error.
RdeCoefficients rde_coefficients(const LtvSystem& sys, double gamma,
                                 std::span<const double> grid);

struct RdeSolution {
    OdeTrace trace;  // packed upper triangles, stored from T downward
    bool exists = false;
    std::optional<double> t_star;
    double gamma = 0.0;
    std::size_t state_dim = 0;

    Matrix value_at(std::size_t trace_index) const;
    // Trace index of the stored value at grid time t (exact match expected).
    std::optional<std::size_t> index_of_time(double t) const;
};

// Backward integration of the certificate RDE from P(T) = F. Throws
// std::runtime_error naming the first offending grid time when R(t) is not
// negative definite on the grid (use rde_coefficients to pre-check).
RdeSolution solve_rde(const LtvSystem& sys, double gamma, std::span<const double> grid,
                      double divergence_threshold = 1e9);

// Lower bound from the feedthrough (max over grid of the largest singular
// value of D_I(t)); upper bound by doubling from max(2 * lb, 1) until the
// certificate holds. Throws UnboundedGainError past the search cap. When
// `rde_solves` is non-null the number of integrations is added to it.
std::pair<double, double> initial_bounds(const LtvSystem& sys, std::span<const double> grid,
                                         double divergence_threshold = 1e9,
                                         int* rde_solves = nullptr);

struct GainBounds {
    double gamma_lb = 0.0;
    double gamma_ub = std::numeric_limits<double>::infinity();
    std::optional<Signal> d_lb;  // unit norm when present
    int rde_solves = 0;
    int bisections = 0;
    int power_iterations = 0;
    int outer_iterations = 0;
    double wall_time_s = 0.0;
    bool converged = true;
};

// Bisection between certified bounds until gamma_ub - gamma_lb <= tol.
// With `fixed_bounds` the loop runs on exactly those bounds (no discovery
// integrations), which makes the solve count ceil(log2(gap / tol)). When the
// final lower bound came from a blown-up integration, a witness disturbance
// is attached if its mandatory simulation check passes.
GainBounds bisect(const LtvSystem& sys, double tol, const AnalysisOptions& opts = {},
                  std::optional<std::pair<double, double>> fixed_bounds = std::nullopt);

// Builds a unit-norm disturbance witnessing gamma <= induced norm from a
// blown-up RDE solution: pick t0 a few steps past the blow-up time, align the
// state with the top eigenvector of P(t0), run the worst-case feedback loop
//
//   x' = (A - B R^{-1} (P B + S)^T) x,   d = -R^{-1} (P B + S)^T x
//
// on [t0, T], zero-fill [0, t0), and normalize. The result must reproduce at
// least sol.gamma - 10 * tol through forward_gain; otherwise the start point
// is backed further off the blow-up and, failing that, ConstructionFailedError
// carries the best gain achieved.
Signal disturbance_from_incomplete_rde(const LtvSystem& sys, const RdeSolution& sol,
                                       std::span<const double> grid, double tol,
                                       double divergence_threshold = 1e9);

}  // namespace ltvnorm
