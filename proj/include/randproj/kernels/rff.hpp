#pragma once

#include <cstddef>

#include "randproj/linalg/matrix.hpp"
#include "randproj/linalg/random.hpp"

namespace randproj::kernels {

using linalg::Matrix;
using linalg::Seed;

/// `paper`: z(x) = cos(Wx + b) and K^ = Z Z^T / D, whose expectation is K / 2.
/// `corrected`: features scaled by sqrt(2) so that E[K^] = K.
enum class NormalizationMode { paper, corrected };

/// Frozen random Fourier feature map for the RBF kernel family.
///
/// Row s*m + i of `frequencies` belongs to group s and was drawn from
/// N(0, 2 gamma_s I). Plain RFF is the single-group case.
struct RffMap {
    Matrix frequencies;          ///< total_features x d
    linalg::Vector phases;       ///< total_features entries in [0, 2 pi)
    std::size_t feature_count = 0;  ///< m, features per group
    std::size_t group_count = 1;    ///< q
    double gamma_lo = 1.0;          ///< equals gamma_hi for a scalar gamma
    double gamma_hi = 1.0;
    linalg::Vector group_gammas;    ///< gamma_s actually drawn for each group
    NormalizationMode mode = NormalizationMode::corrected;

    std::size_t total_features() const noexcept { return feature_count * group_count; }
    std::size_t input_dimension() const noexcept { return frequencies.cols(); }
};

// Seed layout shared by both samplers (the reason lo == hi reproduces
// sample_rff bit for bit):
//   derive_seed(seed, 0): frequency normals, row-major, group after group
//   derive_seed(seed, 1): phases, one uniform per feature
//   derive_seed(seed, 2): group gammas, one uniform per group

/// m features approximating exp(-gamma ||x - y||^2).
RffMap sample_rff(std::size_t d, std::size_t m, double gamma, Seed seed,
                  NormalizationMode mode = NormalizationMode::corrected);

/// q groups of m features; gamma_s ~ Uniform[lo, hi] per group, then
/// frequencies from N(0, 2 gamma_s I) and an independent phase per feature.
RffMap sample_range_rff(std::size_t d, std::size_t m, std::size_t q, double gamma_lo,
                        double gamma_hi, Seed seed,
                        NormalizationMode mode = NormalizationMode::corrected);

/// Z = cos(X W^T + b), times sqrt(2) in corrected mode. n x total_features.
Matrix rff_features(const RffMap& map, const Matrix& x);

/// K^ = Z_X Z_Y^T / total_features.
Matrix rff_kernel_matrix(const RffMap& map, const Matrix& x, const Matrix& y);

/// K^(X, X), exactly symmetric.
Matrix rff_kernel_matrix(const RffMap& map, const Matrix& x);

/// Kernel value averaged over gamma ~ Uniform[lo, hi]:
/// (exp(-lo r^2) - exp(-hi r^2)) / ((hi - lo) r^2), with the r -> 0 and lo == hi limits.
double range_averaged_rbf(double squared_distance, double gamma_lo, double gamma_hi);

}  // namespace randproj::kernels
