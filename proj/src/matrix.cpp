#include "ltvnorm/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace ltvnorm {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n_rows = rows.size();
    const std::size_t n_cols = n_rows == 0 ? 0 : rows.front().size();
    Matrix m(n_rows, n_cols);
    for (std::size_t i = 0; i < n_rows; ++i) {
        if (rows[i].size() != n_cols) {
            throw std::invalid_argument("matrix rows have inconsistent lengths");
        }
        for (std::size_t j = 0; j < n_cols; ++j) {
            if (!std::isfinite(rows[i][j])) {
                throw std::invalid_argument("matrix entry is not finite");
            }
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix shape mismatch in addition");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += other.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix shape mismatch in subtraction");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator*=(double scalar) {
    for (double& x : data_) {
        x *= scalar;
    }
    return *this;
}

std::vector<double> Matrix::operator*(const std::vector<double>& v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("matrix-vector shape mismatch");
    }
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double acc = 0.0;
        const double* row = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) {
            acc += row[j] * v[j];
        }
        out[i] = acc;
    }
    return out;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double Matrix::frobenius_norm() const {
    double acc = 0.0;
    for (double x : data_) {
        acc += x * x;
    }
    return std::sqrt(acc);
}

double Matrix::trace() const {
    double acc = 0.0;
    const std::size_t n = std::min(rows_, cols_);
    for (std::size_t i = 0; i < n; ++i) {
        acc += (*this)(i, i);
    }
    return acc;
}

bool Matrix::all_finite() const {
    for (double x : data_) {
        if (!std::isfinite(x)) {
            return false;
        }
    }
    return true;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) {
    lhs += rhs;
    return lhs;
}

Matrix operator-(Matrix lhs, const Matrix& rhs) {
    lhs -= rhs;
    return lhs;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols() != rhs.rows()) {
        throw std::invalid_argument("matrix shape mismatch in multiplication");
    }
    Matrix out(lhs.rows(), rhs.cols());
    // i-k-j order keeps the inner loop contiguous in both operands.
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        double* out_row = out.data().data() + i * out.cols();
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const double a = lhs(i, k);
            if (a == 0.0) {
                continue;
            }
            const double* rhs_row = rhs.data().data() + k * rhs.cols();
            for (std::size_t j = 0; j < rhs.cols(); ++j) {
                out_row[j] += a * rhs_row[j];
            }
        }
    }
    return out;
}

Matrix operator*(double scalar, Matrix m) {
    m *= scalar;
    return m;
}

}  // namespace ltvnorm
