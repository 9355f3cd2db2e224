#pragma once

#include <cstddef>

#include "randproj/linalg/matrix.hpp"

namespace randproj::models {

using linalg::Matrix;
using linalg::Vector;

struct PcaModel {
    Vector mean;                 ///< length d
    Matrix components;           ///< d x k, orthonormal columns
    Vector explained_variance;   ///< length k, non-increasing, >= 0
};

/// Eigendecomposition of the covariance (1/n) X0^T X0 of the column-centered
/// data; keeps the k leading eigenvectors.
PcaModel pca_fit(const Matrix& x, std::size_t k);

/// (X - mean) * components
Matrix pca_transform(const PcaModel& model, const Matrix& x);

struct KernelPcaResult {
    Matrix embedding;   ///< n x k; column j = eigenvector_j * sqrt(lambda_j)
    Vector eigenvalues; ///< leading k eigenvalues of the centered Gram matrix
    /// Set when fewer than k eigenvalues were positive; the surplus columns are zero.
    bool zero_filled = false;
};

/// Centers K in feature space, eigendecomposes it, and scales each kept
/// eigenvector by the square root of its eigenvalue.
KernelPcaResult kernel_pca(const Matrix& gram, std::size_t k);

}  // namespace randproj::models
