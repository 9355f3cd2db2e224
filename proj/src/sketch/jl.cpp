#include "randproj/sketch/jl.hpp"

#include <cmath>
#include <stdexcept>

#include "randproj/parallel.hpp"

namespace randproj::sketch {

std::uint64_t jl_min_dimension(const JlParams& params) {
    if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) {
        throw std::invalid_argument("jl_min_dimension: epsilon must lie in (0, 1)");
    }
    if (params.n_points < 2) throw std::invalid_argument("jl_min_dimension: need n_points >= 2");
    if (!(params.constant > 0.0)) throw std::invalid_argument("jl_min_dimension: constant must be positive");
    const double bound = params.constant * std::log(static_cast<double>(params.n_points)) /
                         (params.epsilon * params.epsilon);
    return static_cast<std::uint64_t>(std::floor(bound)) + 1;
}

Matrix jl_project(const Matrix& points, std::size_t k, Seed seed) {
    if (k == 0) throw std::invalid_argument("jl_project: k must be positive");
    const Matrix r = linalg::gaussian_matrix(k, points.cols(), seed);
    return linalg::matmul_nt(points, r) * (1.0 / std::sqrt(static_cast<double>(k)));
}

NormErrorStats norm_preservation_experiment(std::size_t d, std::size_t k, std::size_t trials,
                                            Seed seed, std::size_t threads) {
    if (d == 0 || k == 0) throw std::invalid_argument("norm_preservation_experiment: d and k must be positive");
    if (trials == 0) throw std::invalid_argument("norm_preservation_experiment: trials must be positive");

    linalg::Vector u = linalg::gaussian_matrix(d, 1, linalg::derive_seed(seed, 0)).column(0);
    const double unorm = linalg::norm2(u);
    for (double& x : u) x /= unorm;

    NormErrorStats stats;
    stats.samples.assign(trials, 0.0);
    stats.trial_count = trials;
    const double inv_k = 1.0 / static_cast<double>(k);
    parallel_for(trials, threads, [&](std::size_t t) {
        // Row i of R dotted with u, streamed so R is never materialized.
        linalg::RandomStream rng(linalg::derive_seed(seed, t + 1));
        double sq = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double vi = 0.0;
            for (std::size_t j = 0; j < d; ++j) vi += rng.normal() * u[j];
            sq += vi * vi;
        }
        stats.samples[t] = sq * inv_k - 1.0;
    });

    double sum = 0.0;
    for (double s : stats.samples) sum += s;
    stats.mean = sum / static_cast<double>(trials);
    double var = 0.0;
    for (double s : stats.samples) var += (s - stats.mean) * (s - stats.mean);
    stats.stdev = std::sqrt(var / static_cast<double>(trials));
    return stats;
}

double pairwise_distortion_failure_rate(const Matrix& points, const Matrix& projected,
                                        double epsilon) {
    if (points.rows() != projected.rows()) {
        throw std::invalid_argument("pairwise_distortion_failure_rate: row count mismatch");
    }
    auto sqdist = [](std::span<const double> a, std::span<const double> b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return s;
    };
    const std::size_t n = points.rows();
    std::size_t failures = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double before = sqdist(points.row(i), points.row(j));
            const double after = sqdist(projected.row(i), projected.row(j));
            ++pairs;
            if (after < (1.0 - epsilon) * before || after > (1.0 + epsilon) * before) ++failures;
        }
    }
    return pairs == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(pairs);
}

}  // namespace randproj::sketch
