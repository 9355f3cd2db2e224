#include "randproj/models/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "randproj/error.hpp"

namespace randproj::models {

namespace {

constexpr double kTau = 1e-12;

}  // namespace

SvmModel svm_train(const Matrix& gram, const std::vector<int>& labels, const SvmOptions& options,
                   std::string gram_source) {
    const std::size_t n = labels.size();
    if (gram.rows() != n || gram.cols() != n) {
        throw std::invalid_argument("svm_train: Gram matrix must be n x n with n = label count");
    }
    if (n < 2) throw std::invalid_argument("svm_train: need at least two samples");
    for (int y : labels) {
        if (y != 1 && y != -1) throw std::invalid_argument("svm_train: labels must be -1 or +1");
    }
    if (std::count(labels.begin(), labels.end(), 1) == 0 ||
        std::count(labels.begin(), labels.end(), -1) == 0) {
        throw std::invalid_argument("svm_train: both classes must be present");
    }
    if (!(options.box > 0.0) || !(options.tol > 0.0)) {
        throw std::invalid_argument("svm_train: box and tol must be positive");
    }
    const double c = options.box;
    const std::size_t cap =
        options.max_iterations ? options.max_iterations : std::max<std::size_t>(1000000, 100 * n);

    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = labels[i];
    Vector alpha(n, 0.0);
    Vector grad(n, -1.0);  // gradient of 1/2 a^T Q a - e^T a, Q_ij = y_i y_j K_ij

    auto in_up = [&](std::size_t t) { return (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0); };
    auto in_low = [&](std::size_t t) { return (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c); };

    std::size_t iter = 0;
    double gap = 0.0;
    for (;;) {
        // Maximal violating pair: i maximizes -y G over I_up, j minimizes it over I_low.
        std::size_t i = n, j = n;
        double g_max = -std::numeric_limits<double>::infinity();
        double g_min = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double f = -y[t] * grad[t];
            if (in_up(t) && f > g_max) {
                g_max = f;
                i = t;
            }
            if (in_low(t) && f < g_min) {
                g_min = f;
                j = t;
            }
        }
        gap = g_max - g_min;
        if (i == n || j == n || gap < options.tol) break;
        if (++iter > cap) {
            throw ConvergenceError("svm_train: KKT gap " + std::to_string(gap) + " after " +
                                       std::to_string(cap) + " iterations",
                                   iter, gap);
        }

        const double kii = gram(i, i), kjj = gram(j, j), kij = gram(i, j);
        const double old_ai = alpha[i], old_aj = alpha[j];
        if (y[i] != y[j]) {
            double quad = kii + kjj - 2.0 * kij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if (diff > 0.0) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if (alpha[j] > c) {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            double quad = kii + kjj - 2.0 * kij;
            if (quad <= 0.0) quad = kTau;
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > c) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if (alpha[j] < 0.0) {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if (sum > c) {
                if (alpha[j] > c) {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        const double dai = alpha[i] - old_ai;
        const double daj = alpha[j] - old_aj;
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += y[t] * (y[i] * gram(t, i) * dai + y[j] * gram(t, j) * daj);
        }
    }

    // Bias: mean of -y G over free vectors, else the midpoint of the feasible interval.
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double f = -y[t] * grad[t];
        if (alpha[t] > 0.0 && alpha[t] < c) {
            free_sum += f;
            ++free_count;
        } else if (in_up(t)) {
            lb = std::max(lb, f);
        } else {
            ub = std::min(ub, f);
        }
    }

    SvmModel model;
    if (free_count > 0) {
        model.bias = free_sum / static_cast<double>(free_count);
    } else if (std::isfinite(ub) && std::isfinite(lb)) {
        model.bias = 0.5 * (ub + lb);
    } else {
        model.bias = std::isfinite(ub) ? ub : lb;
    }
    model.dual_coefficients = std::move(alpha);
    model.labels = labels;
    model.gram_source = std::move(gram_source);
    model.box = c;
    model.iterations = iter;
    for (std::size_t t = 0; t < n; ++t)
        if (model.dual_coefficients[t] > 0.0) model.support_indices.push_back(t);
    return model;
}

Vector svm_decision(const SvmModel& model, const Matrix& k_test) {
    if (k_test.cols() != model.labels.size()) {
        throw std::invalid_argument("svm_decision: kernel has " + std::to_string(k_test.cols()) +
                                    " columns, model has " + std::to_string(model.labels.size()) +
                                    " training points");
    }
    Vector f(k_test.rows(), model.bias);
    for (std::size_t r = 0; r < k_test.rows(); ++r) {
        for (std::size_t i : model.support_indices) {
            f[r] += model.dual_coefficients[i] * model.labels[i] * k_test(r, i);
        }
    }
    return f;
}

std::vector<int> svm_predict(const SvmModel& model, const Matrix& k_test) {
    const Vector f = svm_decision(model, k_test);
    std::vector<int> out(f.size());
    for (std::size_t r = 0; r < f.size(); ++r) out[r] = f[r] >= 0.0 ? 1 : -1;
    return out;
}

double kkt_violation(const SvmModel& model, const Matrix& gram) {
    const Vector f = svm_decision(model, gram);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double margin = model.labels[i] * f[i];
        const double a = model.dual_coefficients[i];
        double v = 0.0;
        if (a <= 0.0) {
            v = std::max(0.0, 1.0 - margin);
        } else if (a >= model.box) {
            v = std::max(0.0, margin - 1.0);
        } else {
            v = std::abs(margin - 1.0);
        }
        worst = std::max(worst, v);
    }
    return worst;
}

OneVsOneModel one_vs_one_train(const Matrix& gram, const std::vector<int>& labels,
                               const SvmOptions& options, std::size_t class_count) {
    if (gram.rows() != labels.size() || gram.cols() != labels.size()) {
        throw std::invalid_argument("one_vs_one_train: Gram matrix must be n x n with n = label count");
    }
    int max_label = -1;
    for (int l : labels) {
        if (l < 0) throw std::invalid_argument("one_vs_one_train: labels must be nonnegative");
        max_label = std::max(max_label, l);
    }
    const std::size_t c = class_count ? class_count : static_cast<std::size_t>(max_label + 1);
    if (c < 2) throw std::invalid_argument("one_vs_one_train: need at least two classes");
    if (static_cast<std::size_t>(max_label) >= c) {
        throw std::invalid_argument("one_vs_one_train: label exceeds class count");
    }
    std::vector<std::vector<std::size_t>> members(c);
    for (std::size_t i = 0; i < labels.size(); ++i) members[static_cast<std::size_t>(labels[i])].push_back(i);
    for (std::size_t k = 0; k < c; ++k) {
        if (members[k].empty()) {
            throw std::invalid_argument("one_vs_one_train: class " + std::to_string(k) + " has no samples");
        }
    }

    OneVsOneModel model;
    model.class_count = c;
    for (std::size_t a = 0; a < c; ++a) {
        for (std::size_t b = a + 1; b < c; ++b) {
            OneVsOneModel::Pair pair;
            pair.positive = static_cast<int>(a);
            pair.negative = static_cast<int>(b);
            std::merge(members[a].begin(), members[a].end(), members[b].begin(), members[b].end(),
                       std::back_inserter(pair.train_indices));
            std::vector<int> y;
            y.reserve(pair.train_indices.size());
            for (std::size_t i : pair.train_indices) y.push_back(labels[i] == pair.positive ? 1 : -1);
            const Matrix sub = gram.select_rows(pair.train_indices).select_columns(pair.train_indices);
            pair.model = svm_train(sub, y, options,
                                   "pair " + std::to_string(a) + " vs " + std::to_string(b));
            model.pairs.push_back(std::move(pair));
        }
    }
    return model;
}

std::vector<int> one_vs_one_predict(const OneVsOneModel& model, const Matrix& k_test) {
    const std::size_t n_test = k_test.rows();
    std::vector<std::vector<int>> votes(n_test, std::vector<int>(model.class_count, 0));
    for (const auto& pair : model.pairs) {
        const Matrix sub = k_test.select_columns(pair.train_indices);
        const std::vector<int> pred = svm_predict(pair.model, sub);
        for (std::size_t r = 0; r < n_test; ++r) {
            ++votes[r][static_cast<std::size_t>(pred[r] > 0 ? pair.positive : pair.negative)];
        }
    }
    std::vector<int> out(n_test);
    for (std::size_t r = 0; r < n_test; ++r) {
        // max_element returns the first maximum, i.e. the smallest class index.
        out[r] = static_cast<int>(std::max_element(votes[r].begin(), votes[r].end()) - votes[r].begin());
    }
    return out;
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size() || truth.empty()) {
        throw std::invalid_argument("accuracy: label vectors must be nonempty and equal length");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace randproj::models
