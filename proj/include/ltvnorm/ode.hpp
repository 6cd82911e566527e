#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ltvnorm/matrix.hpp"

namespace ltvnorm {

enum class Direction { forward, backward };

// Trace of a fixed-step integration. `times` and `states` are stored in
// integration order: increasing for forward runs, decreasing for backward
// runs. When divergence was declared, `states` stops at the last accepted
// step (all stored entries are finite and below the threshold) and `t_star`
// holds the grid time of the rejected step.
struct OdeTrace {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    bool diverged = false;
    std::optional<double> t_star;
};

using VectorRhs = std::function<std::vector<double>(double, const std::vector<double>&)>;
using MatrixRhs = std::function<Matrix(double, const Matrix&)>;

// Classical 4th-order Runge-Kutta over the given strictly increasing grid.
// Backward runs start from grid.back() and step toward grid.front() with the
// same formula and negative step. A step is rejected (divergence) when the
// new state has a non-finite entry or max-abs entry above the threshold.
// A non-finite derivative at the initial point throws std::runtime_error,
// which is distinct from mid-trajectory divergence.
OdeTrace rk4_integrate(const VectorRhs& rhs, const std::vector<double>& x0,
                       std::span<const double> grid, Direction direction,
                       double divergence_threshold);

// Symmetric-matrix ODE driver. Only the upper triangle (n(n+1)/2 scalars) is
// integrated; the derivative returned by `rhs` is symmetrized into packed
// form, so every matrix reconstructed from the trace is exactly symmetric.
OdeTrace integrate_matrix(const MatrixRhs& rhs, const Matrix& value_at_start,
                          std::span<const double> grid, Direction direction,
                          double divergence_threshold);

// Packed upper-triangle storage used by integrate_matrix.
std::vector<double> pack_symmetric(const Matrix& m);
Matrix unpack_symmetric(const std::vector<double>& packed, std::size_t n);

}  // namespace ltvnorm
