#include "randproj/kernels/rff.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace randproj::kernels {

RffMap sample_rff(std::size_t d, std::size_t m, double gamma, Seed seed, NormalizationMode mode) {
    if (!(gamma > 0.0)) throw std::invalid_argument("sample_rff: gamma must be positive");
    return sample_range_rff(d, m, 1, gamma, gamma, seed, mode);
}

RffMap sample_range_rff(std::size_t d, std::size_t m, std::size_t q, double gamma_lo,
                        double gamma_hi, Seed seed, NormalizationMode mode) {
    if (d == 0) throw std::invalid_argument("sample_range_rff: d must be positive");
    if (m == 0 || q == 0) throw std::invalid_argument("sample_range_rff: m and q must be positive");
    if (!(gamma_lo > 0.0) || !(gamma_lo <= gamma_hi) || !std::isfinite(gamma_hi)) {
        throw std::invalid_argument("sample_range_rff: invalid gamma interval [" +
                                    std::to_string(gamma_lo) + ", " + std::to_string(gamma_hi) + "]");
    }

    RffMap map;
    map.feature_count = m;
    map.group_count = q;
    map.gamma_lo = gamma_lo;
    map.gamma_hi = gamma_hi;
    map.mode = mode;

    linalg::RandomStream gamma_rng(linalg::derive_seed(seed, 2));
    map.group_gammas.resize(q);
    for (double& g : map.group_gammas) g = gamma_rng.uniform(gamma_lo, gamma_hi);

    linalg::RandomStream freq_rng(linalg::derive_seed(seed, 0));
    map.frequencies = Matrix(m * q, d);
    for (std::size_t s = 0; s < q; ++s) {
        const double scale = std::sqrt(2.0 * map.group_gammas[s]);
        for (std::size_t i = 0; i < m; ++i)
            for (double& w : map.frequencies.row(s * m + i)) w = scale * freq_rng.normal();
    }

    linalg::RandomStream phase_rng(linalg::derive_seed(seed, 1));
    map.phases.resize(m * q);
    for (double& b : map.phases) b = phase_rng.uniform(0.0, 2.0 * std::numbers::pi);
    return map;
}

Matrix rff_features(const RffMap& map, const Matrix& x) {
    if (x.cols() != map.input_dimension()) {
        throw std::invalid_argument("rff_features: input has " + std::to_string(x.cols()) +
                                    " columns, map expects " + std::to_string(map.input_dimension()));
    }
    Matrix z = linalg::matmul_nt(x, map.frequencies);
    const double scale = map.mode == NormalizationMode::corrected ? std::sqrt(2.0) : 1.0;
    for (std::size_t i = 0; i < z.rows(); ++i) {
        auto row = z.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = scale * std::cos(row[j] + map.phases[j]);
    }
    return z;
}

Matrix rff_kernel_matrix(const RffMap& map, const Matrix& x, const Matrix& y) {
    const Matrix zx = rff_features(map, x);
    const Matrix zy = rff_features(map, y);
    return linalg::matmul_nt(zx, zy) * (1.0 / static_cast<double>(map.total_features()));
}

Matrix rff_kernel_matrix(const RffMap& map, const Matrix& x) {
    return linalg::gram_rows(rff_features(map, x)) * (1.0 / static_cast<double>(map.total_features()));
}

double range_averaged_rbf(double squared_distance, double gamma_lo, double gamma_hi) {
    const double r2 = squared_distance;
    const double width = gamma_hi - gamma_lo;
    if (r2 == 0.0) return 1.0;
    if (width == 0.0) return std::exp(-gamma_lo * r2);
    // exp(-lo r2) (1 - exp(-width r2)) / (width r2), via expm1 for small width r2.
    return std::exp(-gamma_lo * r2) * (-std::expm1(-width * r2)) / (width * r2);
}

}  // namespace randproj::kernels
