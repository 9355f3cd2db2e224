#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "randproj/linalg/matrix.hpp"
#include "randproj/linalg/random.hpp"

namespace randproj::testing {

using linalg::Matrix;
using linalg::Seed;

/// Exactly rank-r matrix built as a product of Gaussian factors.
inline Matrix random_rank_matrix(std::size_t m, std::size_t n, std::size_t r, std::uint64_t seed) {
    const Matrix left = linalg::gaussian_matrix(m, r, Seed{seed});
    const Matrix right = linalg::gaussian_matrix(r, n, linalg::derive_seed(Seed{seed}, 1));
    return linalg::matmul(left, right);
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    return worst;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace randproj::testing
