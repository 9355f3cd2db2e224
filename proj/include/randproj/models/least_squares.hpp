#pragma once

#include <cstddef>

#include "randproj/linalg/matrix.hpp"
#include "randproj/linalg/random.hpp"

namespace randproj::models {

using linalg::Matrix;
using linalg::Vector;

/// min ||Ax - b||_2 through a Householder QR: x = R^{-1} Q^T b by back
/// substitution. Rejects m < n and numerically rank-deficient A
/// (min |R_ii| <= 1e-12 max |R_ii|).
Vector ls_solve_qr(const Matrix& a, const Vector& b);

struct RandomSearchResult {
    Vector x;
    double residual = 0.0;  ///< ||A x - b||_2
    std::size_t best_index = 0;
};

/// Draws k standard-normal candidates consecutively from one stream seeded by
/// `seed` and keeps the one with the smallest residual (first on ties). The
/// first k candidates for a given seed never depend on k.
RandomSearchResult ls_random_search(const Matrix& a, const Vector& b, std::size_t k, linalg::Seed seed);

/// ||A x - b||_2
double ls_residual(const Matrix& a, const Vector& x, const Vector& b);

}  // namespace randproj::models
