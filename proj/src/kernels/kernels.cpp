#include "randproj/kernels/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace randproj::kernels {

namespace {

void validate(const KernelSpec& spec) {
    if (spec.kind == KernelKind::rbf && !(spec.gamma > 0.0)) {
        throw std::invalid_argument("KernelSpec: gamma must be positive");
    }
    if (spec.kind == KernelKind::polynomial && spec.degree < 1) {
        throw std::invalid_argument("KernelSpec: degree must be at least 1");
    }
}

double evaluate(std::span<const double> x, std::span<const double> y, const KernelSpec& spec) {
    if (spec.kind == KernelKind::rbf) {
        double sq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) sq += (x[i] - y[i]) * (x[i] - y[i]);
        return std::exp(-spec.gamma * sq);
    }
    return std::pow(linalg::dot(x, y) + spec.coef0, spec.degree);
}

}  // namespace

Matrix exact_kernel_matrix(const Matrix& x, const Matrix& y, const KernelSpec& spec) {
    validate(spec);
    if (x.cols() != y.cols()) {
        throw std::invalid_argument("exact_kernel_matrix: dimension mismatch (" +
                                    std::to_string(x.cols()) + " vs " + std::to_string(y.cols()) + ")");
    }
    Matrix k(x.rows(), y.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < y.rows(); ++j) k(i, j) = evaluate(x.row(i), y.row(j), spec);
    return k;
}

Matrix exact_kernel_matrix(const Matrix& x, const KernelSpec& spec) {
    validate(spec);
    const std::size_t n = x.rows();
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = evaluate(x.row(i), x.row(j), spec);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

Matrix center_kernel_matrix(const Matrix& k) {
    const std::size_t n = k.rows();
    if (k.cols() != n) throw std::invalid_argument("center_kernel_matrix: matrix must be square");
    if (linalg::frobenius_norm(k - k.transpose()) > 1e-10) {
        throw std::invalid_argument("center_kernel_matrix: matrix is not symmetric");
    }
    linalg::Vector row_mean(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) row_mean[i] += k(i, j);
        total += row_mean[i];
        row_mean[i] /= static_cast<double>(n);
    }
    total /= static_cast<double>(n) * static_cast<double>(n);
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c(i, j) = 0.5 * (k(i, j) + k(j, i)) - row_mean[i] - row_mean[j] + total;
    return c;
}

}  // namespace randproj::kernels
