#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace randproj::linalg {

using Vector = std::vector<double>;

/// Dense real matrix stored row-major.
///
/// Zero-sized dimensions are permitted so that empty bases (k = 0) can be
/// represented; every other shape is the usual m x n carrier. Constructors
/// that take explicit data reject NaN and Inf entries.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);
    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    const std::vector<double>& data() const noexcept { return data_; }

    Vector column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const double> values);

    Matrix transpose() const;
    Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
    Matrix left_cols(std::size_t k) const { return block(0, 0, rows_, k); }
    Matrix select_columns(std::span<const std::size_t> indices) const;
    Matrix select_rows(std::span<const std::size_t> indices) const;

    /// Throws std::invalid_argument if any entry is NaN or infinite.
    void check_finite() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s) noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);

/// A * B
Matrix matmul(const Matrix& a, const Matrix& b);
/// A^T * B
Matrix matmul_tn(const Matrix& a, const Matrix& b);
/// A * B^T
Matrix matmul_nt(const Matrix& a, const Matrix& b);
/// A * A^T, computed on one triangle and mirrored so the result is exactly symmetric.
Matrix gram_rows(const Matrix& a);

Vector matvec(const Matrix& a, std::span<const double> x);
Vector matvec_t(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

/// sqrt(sum a_ij^2)
double frobenius_norm(const Matrix& a);

/// ||Q^T Q - I||_F
double orthonormality_error(const Matrix& q);

/// [A | B]
Matrix hstack(const Matrix& a, const Matrix& b);

}  // namespace randproj::linalg
