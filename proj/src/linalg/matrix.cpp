#include "randproj/linalg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace randproj::linalg {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (!std::isfinite(fill)) throw std::invalid_argument("Matrix: non-finite fill value");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument("Matrix: data length " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(rows_) + "x" +
                                    std::to_string(cols_));
    }
    check_finite();
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<std::vector<double>> copy;
    copy.reserve(rows.size());
    for (const auto& r : rows) copy.emplace_back(r);
    return from_rows(copy);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    std::vector<double> data;
    data.reserve(m * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("Matrix::from_rows: ragged rows");
        data.insert(data.end(), r.begin(), r.end());
    }
    return Matrix(m, n, std::move(data));
}

Matrix Matrix::identity(std::size_t n) {
    Matrix eye(n, n);
    for (std::size_t i = 0; i < n; ++i) eye(i, i) = 1.0;
    return eye;
}

Matrix Matrix::diagonal(std::span<const double> values) {
    Matrix d(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) d(i, i) = values[i];
    d.check_finite();
    return d;
}

Vector Matrix::column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

void Matrix::set_column(std::size_t j, std::span<const double> values) {
    if (values.size() != rows_) throw std::invalid_argument("Matrix::set_column: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                     std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) {
        throw std::invalid_argument("Matrix::block: out of range");
    }
    Matrix b(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row0 + i, col0 + j);
    return b;
}

Matrix Matrix::select_columns(std::span<const std::size_t> indices) const {
    Matrix out(rows_, indices.size());
    for (std::size_t c = 0; c < indices.size(); ++c) {
        if (indices[c] >= cols_) throw std::invalid_argument("select_columns: index out of range");
        for (std::size_t i = 0; i < rows_; ++i) out(i, c) = (*this)(i, indices[c]);
    }
    return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t r = 0; r < indices.size(); ++r) {
        if (indices[r] >= rows_) throw std::invalid_argument("select_rows: index out of range");
        auto src = row(indices[r]);
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

void Matrix::check_finite() const {
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!std::isfinite(data_[k])) {
            throw std::invalid_argument("Matrix: non-finite entry at (" +
                                        std::to_string(k / cols_) + ", " +
                                        std::to_string(k % cols_) + ")");
        }
    }
}

Matrix& Matrix::operator+=(const Matrix& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
    for (auto& v : data_) v *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto crow = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("matmul_tn: row count mismatch");
    Matrix c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        auto arow = a.row(k);
        auto brow = b.row(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = arow[i];
            if (aki == 0.0) continue;
            auto crow = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aki * brow[j];
        }
    }
    return c;
}

namespace {

// c(i, j) = dot(a.row(i), b.row(j)) for a 4 x 4 tile. Each entry is still
// accumulated in index order, so the values equal dot() bit for bit; the
// sixteen independent sums just keep more arithmetic in flight.
void dot_tile4(const Matrix& a, const Matrix& b, Matrix& c, std::size_t i, std::size_t j) {
    const std::size_t n = a.cols();
    const double* a0 = a.row(i).data();
    const double* a1 = a.row(i + 1).data();
    const double* a2 = a.row(i + 2).data();
    const double* a3 = a.row(i + 3).data();
    const double* b0 = b.row(j).data();
    const double* b1 = b.row(j + 1).data();
    const double* b2 = b.row(j + 2).data();
    const double* b3 = b.row(j + 3).data();
    double s[4][4] = {};
    for (std::size_t k = 0; k < n; ++k) {
        const double x[4] = {a0[k], a1[k], a2[k], a3[k]};
        const double y[4] = {b0[k], b1[k], b2[k], b3[k]};
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) s[p][q] += x[p] * y[q];
    }
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) c(i + p, j + q) = s[p][q];
}

// Row-by-row dot products of a and b; only tiles touching the lower
// triangle when `lower_only` is set.
void row_dots(const Matrix& a, const Matrix& b, Matrix& c, bool lower_only) {
    const std::size_t m = a.rows();
    const std::size_t n = b.rows();
    const std::size_t m4 = m - m % 4;
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < m4; i += 4) {
        const std::size_t j_end = lower_only ? std::min(n4, i + 4) : n4;
        for (std::size_t j = 0; j < j_end; j += 4) dot_tile4(a, b, c, i, j);
        for (std::size_t ii = i; ii < i + 4; ++ii) {
            const std::size_t last = lower_only ? std::min(n, ii + 1) : n;
            for (std::size_t jj = j_end; jj < last; ++jj) c(ii, jj) = dot(a.row(ii), b.row(jj));
        }
    }
    for (std::size_t i = m4; i < m; ++i) {
        const std::size_t last = lower_only ? std::min(n, i + 1) : n;
        for (std::size_t j = 0; j < last; ++j) c(i, j) = dot(a.row(i), b.row(j));
    }
}

}  // namespace

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("matmul_nt: column count mismatch");
    Matrix c(a.rows(), b.rows());
    row_dots(a, b, c, false);
    return c;
}

Matrix gram_rows(const Matrix& a) {
    const std::size_t n = a.rows();
    Matrix g(n, n);
    row_dots(a, a, g, true);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i);
    return g;
}

Vector matvec(const Matrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
    return y;
}

Vector matvec_t(const Matrix& a, std::span<const double> x) {
    if (a.rows() != x.size()) throw std::invalid_argument("matvec_t: dimension mismatch");
    Vector y(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto arow = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += arow[j] * x[i];
    }
    return y;
}

double dot(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(std::span<const double> x) {
    // Scaled accumulation avoids overflow for very large entries.
    double scale = 0.0;
    for (double v : x) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) {
        const double t = v / scale;
        s += t * t;
    }
    return scale * std::sqrt(s);
}

double frobenius_norm(const Matrix& a) { return norm2(a.data()); }

double orthonormality_error(const Matrix& q) {
    Matrix g = matmul_tn(q, q);
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    return frobenius_norm(g);
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row count mismatch");
    Matrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = c.row(i);
        auto ra = a.row(i);
        auto rb = b.row(i);
        std::copy(ra.begin(), ra.end(), dst.begin());
        std::copy(rb.begin(), rb.end(), dst.begin() + static_cast<std::ptrdiff_t>(a.cols()));
    }
    return c;
}

}  // namespace randproj::linalg
