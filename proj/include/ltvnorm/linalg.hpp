#pragma once

#include <vector>

#include "ltvnorm/matrix.hpp"

namespace ltvnorm {

struct SymEig {
    std::vector<double> eigenvalues;  // descending
    Matrix eigenvectors;              // column i pairs with eigenvalues[i]
};

// Symmetric eigendecomposition by cyclic Jacobi sweeps. Sweeps run until the
// off-diagonal Frobenius mass drops below 1e-12 * ||M||_F. Eigenvector signs
// are fixed so the first nonzero component is positive, which keeps results
// reproducible across runs. Throws std::invalid_argument if M is not square
// or not symmetric within 1e-10 * max|M|.
SymEig sym_eig(const Matrix& m);

// Largest singular value, computed as sqrt(lambda_max(M^T M)).
double max_singular_value(const Matrix& m);

// Solves M X = rhs by Gaussian elimination with partial pivoting. Throws
// std::runtime_error when a pivot falls below 1e-12 * max|M|.
Matrix solve(const Matrix& m, const Matrix& rhs);

}  // namespace ltvnorm
