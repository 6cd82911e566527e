#include "ltvnorm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ltvnorm {

namespace {

double off_diagonal_norm(const Matrix& m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i != j) {
                acc += m(i, j) * m(i, j);
            }
        }
    }
    return std::sqrt(acc);
}

}  // namespace

SymEig sym_eig(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("sym_eig requires a square matrix");
    }
    const std::size_t n = m.rows();
    const double scale = m.max_abs();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > 1e-10 * std::max(scale, 1e-300)) {
                throw std::invalid_argument("sym_eig requires a symmetric matrix");
            }
        }
    }

    Matrix a = m;
    Matrix v = Matrix::identity(n);
    const double frob = std::max(a.frobenius_norm(), 1e-300);
    const double target = 1e-12 * frob;
    const int max_sweeps = 50;

    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) {
                    continue;
                }
                // Classic Jacobi rotation zeroing a(p,q).
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    SymEig result;
    result.eigenvalues.resize(n);
    result.eigenvectors = Matrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        result.eigenvalues[col] = a(src, src);
        double sign = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(v(k, src)) > 1e-12) {
                sign = v(k, src) > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            result.eigenvectors(k, col) = sign * v(k, src);
        }
    }
    return result;
}

double max_singular_value(const Matrix& m) {
    if (m.empty()) {
        return 0.0;
    }
    const Matrix gram = m.transpose() * m;
    const SymEig eig = sym_eig(gram);
    return std::sqrt(std::max(0.0, eig.eigenvalues.front()));
}

Matrix solve(const Matrix& m, const Matrix& rhs) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("solve requires a square matrix");
    }
    if (rhs.rows() != m.rows()) {
        throw std::invalid_argument("solve: right-hand side row count mismatch");
    }
    const std::size_t n = m.rows();
    const std::size_t k = rhs.cols();
    Matrix a = m;
    Matrix x = rhs;
    const double pivot_floor = 1e-12 * std::max(m.max_abs(), 1e-300);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        double pivot_mag = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > pivot_mag) {
                pivot_mag = std::abs(a(r, col));
                pivot_row = r;
            }
        }
        if (pivot_mag < pivot_floor) {
            throw std::runtime_error("solve: matrix is singular to working precision");
        }
        if (pivot_row != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(col, j), a(pivot_row, j));
            }
            for (std::size_t j = 0; j < k; ++j) {
                std::swap(x(col, j), x(pivot_row, j));
            }
        }
        const double inv_pivot = 1.0 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) * inv_pivot;
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t j = col; j < n; ++j) {
                a(r, j) -= factor * a(col, j);
            }
            for (std::size_t j = 0; j < k; ++j) {
                x(r, j) -= factor * x(col, j);
            }
        }
    }

    for (std::size_t col = n; col-- > 0;) {
        const double inv_pivot = 1.0 / a(col, col);
        for (std::size_t j = 0; j < k; ++j) {
            double acc = x(col, j);
            for (std::size_t c = col + 1; c < n; ++c) {
                acc -= a(col, c) * x(c, j);
            }
            x(col, j) = acc * inv_pivot;
        }
    }
    return x;
}

}  // namespace ltvnorm
