#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "randproj/linalg/matrix.hpp"

namespace randproj::linalg {

// Sign convention shared by every factorization below: the largest-magnitude
// entry of each Q / U / eigenvector column is made nonnegative (first index
// wins on ties). For QR the matching row of R is negated; for the SVD the
// matching column of V is negated, so U is the side that is normalized.

struct QrFactors {
    Matrix q;  ///< m x r, orthonormal columns
    Matrix r;  ///< r x n, upper triangular
    /// Column permutation: column j of Q*R equals column perm[j] of A.
    std::optional<std::vector<std::size_t>> perm;
};

struct SvdFactors {
    Matrix u;  ///< m x r, orthonormal columns
    Vector s;  ///< length r, nonnegative, non-increasing
    Matrix v;  ///< n x r, orthonormal columns
};

struct EigFactors {
    Vector values;   ///< non-increasing
    Matrix vectors;  ///< orthonormal eigenvector columns
};

/// Thin Householder QR of an m x n matrix with m >= n: Q is m x n, R is n x n.
QrFactors householder_qr(const Matrix& a);

/// Householder QR with greedy column pivoting (largest remaining column norm
/// first, lowest index on ties). Q is m x min(m,n), R is min(m,n) x n, and
/// |R_00| >= |R_11| >= ... .
QrFactors column_pivoted_qr(const Matrix& a);

/// Thin SVD by Golub-Kahan bidiagonalization followed by implicit-shift QR
/// sweeps. U is m x min(m,n), V is n x min(m,n).
///
/// Throws ConvergenceError after 100 * min(m,n) QR sweeps without deflation.
SvdFactors svd(const Matrix& a);

/// Eigendecomposition of a symmetric matrix via Householder tridiagonalization
/// and implicit Wilkinson-shift QR. Rejects input with ||S - S^T||_F > 1e-10.
EigFactors sym_eig(const Matrix& s);

/// U * diag(S) * V^T
Matrix reconstruct(const SvdFactors& f);

/// Q * R with the permutation undone, i.e. an approximation of A itself.
Matrix reconstruct(const QrFactors& f);

/// Solves R x = b for upper-triangular square R by back substitution.
Vector back_substitute(const Matrix& r, std::span<const double> b);

}  // namespace randproj::linalg
