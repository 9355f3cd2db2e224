#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "randproj/linalg/matrix.hpp"

namespace randproj::models {

using linalg::Matrix;
using linalg::Vector;

struct SvmOptions {
    double box = 1.0;    ///< C
    double tol = 1e-3;   ///< stop once the maximal KKT violation m(a) - M(a) < tol
    /// 0 selects max(10^6, 100 n).
    std::size_t max_iterations = 0;
};

/// Binary soft-margin SVM in dual form. Decision value for a point with
/// kernel row k: f = sum_i alpha_i y_i k_i + bias.
struct SvmModel {
    Vector dual_coefficients;              ///< alpha, length n; 0 <= alpha_i <= box
    std::vector<int> labels;               ///< training labels in {-1, +1}
    double bias = 0.0;
    std::vector<std::size_t> support_indices;  ///< i with alpha_i > 0
    std::string gram_source;               ///< free-form description of the kernel used
    double box = 1.0;
    std::size_t iterations = 0;
};

/// SMO with the maximal-violating-pair working set on a precomputed Gram matrix.
/// Throws ConvergenceError (carrying the remaining KKT gap) at the iteration cap.
SvmModel svm_train(const Matrix& gram, const std::vector<int>& labels, const SvmOptions& options = {},
                   std::string gram_source = "precomputed");

/// Decision values for test rows; k_test is n_test x n_train.
Vector svm_decision(const SvmModel& model, const Matrix& k_test);

/// Sign of the decision value; an exact zero is assigned +1.
std::vector<int> svm_predict(const SvmModel& model, const Matrix& k_test);

/// Largest violation of the soft-margin complementarity conditions on the
/// training Gram matrix: alpha = 0 needs y f >= 1, 0 < alpha < C needs y f = 1,
/// alpha = C needs y f <= 1.
double kkt_violation(const SvmModel& model, const Matrix& gram);

/// c (c - 1) / 2 pairwise classifiers. Pair (a, b) with a < b maps class a to
/// +1 and class b to -1.
struct OneVsOneModel {
    std::size_t class_count = 0;
    struct Pair {
        int positive = 0;
        int negative = 0;
        std::vector<std::size_t> train_indices;  ///< rows of the full training set
        SvmModel model;
    };
    std::vector<Pair> pairs;
};

/// Labels in {0, ..., c - 1}; every class needs at least one sample.
/// class_count = 0 infers c as max label + 1.
OneVsOneModel one_vs_one_train(const Matrix& gram, const std::vector<int>& labels,
                               const SvmOptions& options = {}, std::size_t class_count = 0);

/// Plurality vote over all pairs; ties go to the smallest class index.
/// k_test is n_test x n_train against the full training set.
std::vector<int> one_vs_one_predict(const OneVsOneModel& model, const Matrix& k_test);

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

}  // namespace randproj::models
