#pragma once

#include <cstddef>
#include <vector>

namespace ltvnorm {

// Dense row-major matrix of doubles. Zero rows or columns are legal and
// represent an absent channel (e.g. a system with no terminal output).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const std::vector<double>& entries);

    // Builds from nested rows; throws std::invalid_argument on ragged input
    // or non-finite entries. This is the checked entry point for user data.
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    Matrix transpose() const;
    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double scalar);

    std::vector<double> operator*(const std::vector<double>& v) const;

    double max_abs() const;
    double frobenius_norm() const;
    double trace() const;
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(double scalar, Matrix m);

}  // namespace ltvnorm
