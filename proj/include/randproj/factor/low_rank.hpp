#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "randproj/linalg/decompositions.hpp"
#include "randproj/linalg/matrix.hpp"
#include "randproj/linalg/random.hpp"

namespace randproj::factor {

using linalg::Matrix;
using linalg::Seed;
using linalg::SvdFactors;

/// Interpolative-decomposition output: A ~ basis * basis^T * A.
struct IdResult {
    Matrix basis;                              ///< m x k, orthonormal columns
    std::vector<std::size_t> selected_columns; ///< k distinct column indices of A
    std::size_t approximation_rank = 0;
};

struct RsvdConfig {
    std::size_t rank = 1;          ///< k
    std::size_t power = 1;         ///< q
    std::size_t oversampling = 10; ///< l; sketch width p = k + l, clamped to min(m, n)
    Seed seed{};
    /// Apply (A A^T)^q A Omega without intermediate re-orthonormalization.
    bool raw_power = false;
};

struct ErrorReport {
    double absolute_deterministic = 0.0;  ///< ad = ||det - A||_F
    double absolute_random = 0.0;         ///< ar = ||rand - A||_F
    double relative = 0.0;                ///< (ar - ad) / ad
    double elapsed_det_seconds = 0.0;
    double elapsed_rand_seconds = 0.0;
};

struct Timings {
    double det_seconds = 0.0;
    double rand_seconds = 0.0;
};

struct FixedPrecisionBound {
    double bound = 0.0;     ///< 24 n^3 ln(n) / (3 eps^4 n - 2 eps^6)
    double min_rank = 0.0;  ///< floor(bound) + 1, kept in floating point since it can exceed 2^64
    bool vacuous = false;   ///< min_rank >= n: no compression is guaranteed
};

struct AdaptiveRankResult {
    Matrix basis;
    std::size_t rank = 0;
    double error = 0.0;  ///< ||A - Q Q^T A||_F for the returned basis
};

/// Rank-k randomized SVD.
///
/// Omega (n x p) Gaussian -> Y = A Omega -> q power steps Y <- A (A^T Y), each
/// application followed by thin-QR re-orthonormalization -> Q = qr(Y).q ->
/// B = Q^T A -> svd(B) -> U = Q U_B; all factors truncated to k.
SvdFactors randomized_svd(const Matrix& a, const RsvdConfig& cfg);

/// Rank-k truncation of the exact SVD.
SvdFactors truncated_svd(const Matrix& a, std::size_t k);

/// Column-pivoted QR on all of A; the first k columns of Q form the basis.
IdResult deterministic_id(const Matrix& a, std::size_t k);

/// Samples p = k + oversampling distinct columns uniformly, runs column-pivoted
/// QR on that submatrix, and keeps the first k columns of its Q. The sampled
/// indices are sorted before pivoting, so p = n reproduces deterministic_id.
IdResult randomized_id(const Matrix& a, std::size_t k, std::size_t oversampling, Seed seed);

/// ||A - Q Q^T A||_F. Rejects a basis with ||Q^T Q - I||_F > 1e-10.
double projection_error(const Matrix& a, const Matrix& basis);

/// Q Q^T A
Matrix project_onto(const Matrix& a, const Matrix& basis);

/// Smallest k strictly above 24 n^3 ln(n) / (3 eps^4 n - 2 eps^6).
FixedPrecisionBound fixed_precision_bound(std::uint64_t n, double epsilon);

/// Grows a Gaussian range basis `step` columns at a time until
/// projection_error <= epsilon or the width reaches min(m, n).
AdaptiveRankResult adaptive_rank(const Matrix& a, double epsilon, std::size_t step, Seed seed);

/// ad, ar and (ar - ad) / ad. ad = 0 with ar > 0 gives +infinity; ad = ar = 0 gives 0.
ErrorReport compare_decompositions(const Matrix& a, const Matrix& det_approx,
                                   const Matrix& rand_approx, const Timings& timings = {});

}  // namespace randproj::factor
