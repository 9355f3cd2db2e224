#include "randproj/models/pca.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "randproj/kernels/kernels.hpp"
#include "randproj/linalg/decompositions.hpp"

namespace randproj::models {

PcaModel pca_fit(const Matrix& x, std::size_t k) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (n < 2) throw std::invalid_argument("pca_fit: need at least two samples");
    if (k == 0 || k > std::min(n, d)) {
        throw std::invalid_argument("pca_fit: k = " + std::to_string(k) + " outside [1, min(n, d) = " +
                                    std::to_string(std::min(n, d)) + "]");
    }
    PcaModel model;
    model.mean.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) model.mean[j] += x(i, j);
    for (double& m : model.mean) m /= static_cast<double>(n);

    Matrix centered = x;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) centered(i, j) -= model.mean[j];
    Matrix cov = linalg::matmul_tn(centered, centered) * (1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j) cov(j, i) = cov(i, j);

    const linalg::EigFactors eig = linalg::sym_eig(cov);
    model.components = eig.vectors.left_cols(k);
    model.explained_variance.assign(eig.values.begin(), eig.values.begin() + static_cast<std::ptrdiff_t>(k));
    for (double& v : model.explained_variance) v = std::max(v, 0.0);
    return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& x) {
    if (x.cols() != model.mean.size()) {
        throw std::invalid_argument("pca_transform: expected " + std::to_string(model.mean.size()) +
                                    " columns, got " + std::to_string(x.cols()));
    }
    Matrix centered = x;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) centered(i, j) -= model.mean[j];
    return linalg::matmul(centered, model.components);
}

KernelPcaResult kernel_pca(const Matrix& gram, std::size_t k) {
    const std::size_t n = gram.rows();
    if (gram.cols() != n) throw std::invalid_argument("kernel_pca: Gram matrix must be square");
    if (k == 0 || k > n) throw std::invalid_argument("kernel_pca: k outside [1, n]");

    const linalg::EigFactors eig = linalg::sym_eig(kernels::center_kernel_matrix(gram));
    if (eig.values.back() < -1e-8 * std::max(1.0, std::abs(eig.values.front()))) {
        throw std::invalid_argument("kernel_pca: Gram matrix is not positive semidefinite");
    }
    // Eigenvalues below this are numerically zero (centering always leaves one).
    const double floor = 1e-12 * std::max(1.0, eig.values.front()) * static_cast<double>(n);

    KernelPcaResult out{Matrix(n, k), Vector(k, 0.0), false};
    for (std::size_t j = 0; j < k; ++j) {
        out.eigenvalues[j] = eig.values[j];
        if (eig.values[j] <= floor) {
            out.zero_filled = true;
            continue;
        }
        const double scale = std::sqrt(eig.values[j]);
        for (std::size_t i = 0; i < n; ++i) out.embedding(i, j) = eig.vectors(i, j) * scale;
    }
    return out;
}

}  // namespace randproj::models
