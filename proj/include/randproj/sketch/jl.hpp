#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "randproj/linalg/matrix.hpp"
#include "randproj/linalg/random.hpp"

namespace randproj::sketch {

using linalg::Matrix;
using linalg::Seed;

struct JlParams {
    std::uint64_t n_points = 2;
    double epsilon = 0.5;
    double constant = 24.0;
};

/// Per-trial squared-norm errors ||v||^2 - ||u||^2 and their summary.
/// stdev uses the population convention (divide by trial_count).
struct NormErrorStats {
    double mean = 0.0;
    double stdev = 0.0;
    std::vector<double> samples;
    std::size_t trial_count = 0;
};

/// Smallest integer k with k > C ln(n) / eps^2 (natural log, strict).
std::uint64_t jl_min_dimension(const JlParams& params);

/// Projects the rows of `points` (n x d) to k dimensions: points * R^T / sqrt(k)
/// with R = gaussian_matrix(k, d, seed).
Matrix jl_project(const Matrix& points, std::size_t k, Seed seed);

/// Draws one random unit vector u in R^d, then for each trial an independent
/// k x d Gaussian R, recording ||R u||^2 / k - 1.
///
/// u comes from derive_seed(seed, 0) and trial t uses derive_seed(seed, t + 1),
/// so the samples are identical for any thread count.
NormErrorStats norm_preservation_experiment(std::size_t d, std::size_t k, std::size_t trials,
                                            Seed seed, std::size_t threads = 1);

/// Fraction of point pairs whose squared distance after projection leaves
/// [(1 - eps) ||x_i - x_j||^2, (1 + eps) ||x_i - x_j||^2].
double pairwise_distortion_failure_rate(const Matrix& points, const Matrix& projected,
                                        double epsilon);

}  // namespace randproj::sketch
