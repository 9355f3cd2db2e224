#include "randproj/models/grid_search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

#include "randproj/kernels/kernels.hpp"
#include "randproj/parallel.hpp"

namespace randproj::models {

namespace {

constexpr std::uint64_t kFoldStream = 0xF01D5ULL;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(GridMode mode) {
    switch (mode) {
        case GridMode::deterministic: return "deterministic";
        case GridMode::random_serial: return "random-serial";
        case GridMode::random_parallel: return "random-parallel";
    }
    return "unknown";
}

GridMode grid_mode_from_string(const std::string& name) {
    if (name == "deterministic") return GridMode::deterministic;
    if (name == "random-serial") return GridMode::random_serial;
    if (name == "random-parallel") return GridMode::random_parallel;
    throw std::invalid_argument("unknown grid-search mode '" + name + "'");
}

std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<int>& labels,
                                                       std::size_t folds, linalg::Seed seed) {
    if (folds < 2) throw std::invalid_argument("stratified_folds: need at least two folds");
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
    for (const auto& [label, members] : by_class) {
        if (members.size() < folds) {
            throw std::invalid_argument("stratified_folds: class " + std::to_string(label) + " has " +
                                        std::to_string(members.size()) + " samples, fewer than " +
                                        std::to_string(folds) + " folds");
        }
    }
    linalg::RandomStream rng(linalg::derive_seed(seed, kFoldStream));
    std::vector<std::vector<std::size_t>> out(folds);
    std::size_t slot = 0;
    for (auto& [label, members] : by_class) {
        for (std::size_t i = members.size(); i > 1; --i) {
            std::swap(members[i - 1], members[static_cast<std::size_t>(rng.uniform_index(i))]);
        }
        for (std::size_t idx : members) out[slot++ % folds].push_back(idx);
    }
    for (auto& f : out) std::sort(f.begin(), f.end());
    return out;
}

double cross_validate(const Matrix& gram, const std::vector<int>& labels,
                      const std::vector<std::vector<std::size_t>>& folds, const SvmOptions& svm) {
    int max_label = 0;
    for (int l : labels) max_label = std::max(max_label, l);
    const std::size_t classes = static_cast<std::size_t>(max_label + 1);

    double total = 0.0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<std::size_t> train;
        for (std::size_t g = 0; g < folds.size(); ++g)
            if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
        std::sort(train.begin(), train.end());
        const std::vector<std::size_t>& test = folds[f];

        std::vector<int> train_labels, test_labels;
        for (std::size_t i : train) train_labels.push_back(labels[i]);
        for (std::size_t i : test) test_labels.push_back(labels[i]);

        const Matrix k_train = gram.select_rows(train).select_columns(train);
        const Matrix k_test = gram.select_rows(test).select_columns(train);
        const OneVsOneModel model = one_vs_one_train(k_train, train_labels, svm, classes);
        total += accuracy(one_vs_one_predict(model, k_test), test_labels);
    }
    return total / static_cast<double>(folds.size());
}

GridSearchReport grid_search_cv(const Matrix& x, const std::vector<int>& labels,
                                const GridSearchConfig& config) {
    if (config.gammas.empty()) throw std::invalid_argument("grid_search_cv: gamma list is empty");
    if (x.rows() != labels.size()) throw std::invalid_argument("grid_search_cv: label count mismatch");
    if (config.features == 0) throw std::invalid_argument("grid_search_cv: feature count must be positive");
    const auto folds = stratified_folds(labels, config.folds, config.seed);
    const std::size_t count = config.gammas.size();

    auto run_task = [&](GridMode mode, std::size_t g) {
        const auto start = std::chrono::steady_clock::now();
        const double gamma = config.gammas[g];
        Matrix gram;
        if (mode == GridMode::deterministic) {
            gram = kernels::exact_kernel_matrix(x, kernels::KernelSpec::rbf(gamma));
        } else {
            const kernels::RffMap map = kernels::sample_rff(
                x.cols(), config.features, gamma, linalg::derive_seed(config.seed, g), config.normalization);
            gram = kernels::rff_kernel_matrix(map, x);
        }
        GridSearchRow row;
        row.gamma = gamma;
        row.mode = mode;
        row.mean_cv_accuracy = cross_validate(gram, labels, folds, config.svm);
        row.elapsed_seconds = seconds_since(start);
        return row;
    };

    GridSearchReport report;
    for (GridMode mode : config.modes) {
        std::vector<GridSearchRow> rows(count);
        const auto start = std::chrono::steady_clock::now();
        const std::size_t threads = mode == GridMode::random_parallel ? config.threads : 1;
        parallel_for(count, threads, [&](std::size_t g) { rows[g] = run_task(mode, g); });
        report.mode_wall_seconds.push_back(seconds_since(start));
        report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
    return report;
}

}  // namespace randproj::models
