#pragma once

#include "randproj/linalg/matrix.hpp"

namespace randproj::kernels {

using linalg::Matrix;

enum class KernelKind { rbf, polynomial };

struct KernelSpec {
    KernelKind kind = KernelKind::rbf;
    double gamma = 1.0;  ///< rbf: exp(-gamma ||x - y||^2)
    int degree = 2;      ///< polynomial: (x.y + coef0)^degree
    double coef0 = 1.0;

    static KernelSpec rbf(double gamma) { return {KernelKind::rbf, gamma, 2, 1.0}; }
    static KernelSpec polynomial(int degree, double coef0) {
        return {KernelKind::polynomial, 1.0, degree, coef0};
    }
};

/// K_ij = k(x_i, y_j) for rows x_i of X and y_j of Y.
Matrix exact_kernel_matrix(const Matrix& x, const Matrix& y, const KernelSpec& spec);

/// K(X, X); exactly symmetric with an exact unit diagonal for the RBF kernel.
Matrix exact_kernel_matrix(const Matrix& x, const KernelSpec& spec);

/// Feature-space centering K - 1K - K1 + 1K1 with 1 the constant 1/n matrix.
Matrix center_kernel_matrix(const Matrix& k);

}  // namespace randproj::kernels
