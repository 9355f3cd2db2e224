#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "randproj/kernels/rff.hpp"
#include "randproj/linalg/matrix.hpp"
#include "randproj/linalg/random.hpp"
#include "randproj/models/svm.hpp"

namespace randproj::models {

enum class GridMode { deterministic, random_serial, random_parallel };

std::string to_string(GridMode mode);
GridMode grid_mode_from_string(const std::string& name);

struct GridSearchRow {
    double gamma = 0.0;
    double mean_cv_accuracy = 0.0;
    double elapsed_seconds = 0.0;
    GridMode mode = GridMode::deterministic;
};

struct GridSearchReport {
    std::vector<GridSearchRow> rows;  ///< grouped by mode, gammas in input order
    /// Wall time per requested mode, same order as GridSearchConfig::modes.
    std::vector<double> mode_wall_seconds;
};

struct GridSearchConfig {
    std::vector<double> gammas;
    std::size_t folds = 3;
    std::vector<GridMode> modes{GridMode::deterministic, GridMode::random_serial};
    std::size_t features = 350;  ///< m for the random modes
    linalg::Seed seed{};
    std::size_t threads = 2;     ///< workers for random_parallel
    SvmOptions svm{};
    kernels::NormalizationMode normalization = kernels::NormalizationMode::corrected;
};

/// Stratified assignment of sample indices to folds. Each class is shuffled
/// with a stream derived from `seed` and dealt round-robin, continuing the
/// fold counter across classes. Requires folds <= smallest class size.
std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<int>& labels,
                                                       std::size_t folds, linalg::Seed seed);

/// Mean one-vs-one test accuracy over the given folds of a precomputed Gram matrix.
double cross_validate(const Matrix& gram, const std::vector<int>& labels,
                      const std::vector<std::vector<std::size_t>>& folds, const SvmOptions& svm);

/// Per-gamma stratified k-fold accuracy with an exact RBF Gram matrix
/// (deterministic) or an RFF Gram matrix from sample_rff(d, m, gamma,
/// derive_seed(seed, gamma index)) (random modes). random_parallel runs the
/// gamma tasks on a thread pool and yields the same accuracies as random_serial.
GridSearchReport grid_search_cv(const Matrix& x, const std::vector<int>& labels,
                                const GridSearchConfig& config);

}  // namespace randproj::models
