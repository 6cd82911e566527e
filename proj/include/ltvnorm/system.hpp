#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ltvnorm/matrix.hpp"
#include "ltvnorm/tv_matrix.hpp"

namespace ltvnorm {

// Finite-horizon linear time-varying plant
//
//   x'(t)  = A(t) x(t) + B(t) d(t),        x(0) = 0
//   e_I(t) = C_I(t) x(t) + D_I(t) d(t)
//   e_E(t) = C_E(t) x(t)
//
// on [0, horizon]. e_I is the running (L2-penalized) output, e_E the
// terminal (Euclidean-penalized) output. There is deliberately no
// feedthrough term from d to e_E. Either output channel may have zero
// dimension, but not both. Instances are immutable in practice: analyses
// never mutate a system, so sharing one across threads is safe.
struct LtvSystem {
    TvMatrixFn A;
    TvMatrixFn B;
    TvMatrixFn C_I;
    TvMatrixFn D_I;
    TvMatrixFn C_E;
    double horizon = 0.0;

    std::size_t state_dim = 0;     // n_x
    std::size_t input_dim = 0;     // n_d
    std::size_t l2_dim = 0;        // n_I
    std::size_t terminal_dim = 0;  // n_E
};

struct SystemMatrices {
    Matrix A;
    Matrix B;
    Matrix C_I;
    Matrix D_I;
    Matrix C_E;
};

// The dual plant run backward in time:
//
//   p'(t) = -A(t)^T p(t) - C_I(t)^T q(t),   p(T) = terminal_map * e_E(T)
//   r(t)  =  B(t)^T p(t) + D_I(t)^T q(t)
//
// Sources share the parent's time grid, so parent and adjoint evaluate to
// exactly transposed/negated matrices at equal t.
struct AdjointSystem {
    TvMatrixFn state_matrix;   // -A^T
    TvMatrixFn input_matrix;   // -C_I^T
    TvMatrixFn output_matrix;  // B^T
    TvMatrixFn feedthrough;    // D_I^T
    Matrix terminal_map;       // C_E(T)^T
    double horizon = 0.0;
    std::size_t state_dim = 0;
    std::size_t input_dim = 0;   // n_I
    std::size_t output_dim = 0;  // n_d
};

// Convenience constructor for systems with constant matrices. Dimensions are
// taken from the matrix shapes. The result is validated; a description of
// the first violation is thrown as std::invalid_argument.
LtvSystem make_lti_system(const Matrix& a, const Matrix& b, const Matrix& c_i,
                          const Matrix& d_i, const Matrix& c_e, double horizon);

// Evaluates all five sources at t. Throws std::domain_error for t outside
// [0, horizon].
SystemMatrices eval(const LtvSystem& sys, double t);

// Reports every invariant violation with a path to the offending field;
// empty means the system is well-posed.
std::vector<std::string> validate(const LtvSystem& sys);

AdjointSystem adjoint(const LtvSystem& sys);

}  // namespace ltvnorm
