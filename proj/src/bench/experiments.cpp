#include "randproj/bench/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <utility>

#include "randproj/bench/dataset.hpp"
#include "randproj/factor/low_rank.hpp"
#include "randproj/kernels/kernels.hpp"
#include "randproj/kernels/rff.hpp"
#include "randproj/models/eigenfaces.hpp"
#include "randproj/models/grid_search.hpp"
#include "randproj/models/least_squares.hpp"
#include "randproj/models/pca.hpp"
#include "randproj/sketch/jl.hpp"

#ifndef RANDPROJ_DEFAULT_FACES_DIR
#define RANDPROJ_DEFAULT_FACES_DIR "assets/faces"
#endif

namespace randproj::bench {

namespace {

using Defaults = std::vector<std::pair<std::string, std::string>>;

// Empty default: the key is optional and has no value unless given.
const std::map<std::string, Defaults>& key_table() {
    static const std::map<std::string, Defaults> table{
        {"jl", {{"seed", "42"}, {"rank", "10"}, {"dimension", "1000"}, {"trials", "10000"}}},
        {"factor-bench",
         {{"seed", "42"}, {"rank", "5,10,20,40"}, {"oversampling", "10"}, {"power", "1"}, {"data", ""},
          {"rows", "400"}, {"cols", "200"}, {"data_rank", "10"}, {"noise", "0.001"}, {"decay", "0.7"}}},
        {"eigenfaces",
         {{"seed", "42"}, {"rank", "1,2,3,5,8,12"}, {"oversampling", "10"}, {"power", "1"},
          {"data", RANDPROJ_DEFAULT_FACES_DIR}}},
        {"kpca",
         {{"seed", "42"}, {"gamma", "1"}, {"gamma_lo", ""}, {"gamma_hi", ""}, {"groups", "1"},
          {"features", "0,20,2000"}, {"mode", "paper"}, {"n", "100"}, {"noise", "0.05"}}},
        {"svm-grid",
         {{"seed", "42"}, {"gamma", ""}, {"gamma_lo", "0.0001"}, {"gamma_hi", "0.1"}, {"gamma_count", "10"},
          {"features", "350"}, {"folds", "3"}, {"parallel", "0"}, {"mode", "paper"}, {"n", "60"},
          {"dimension", "64"}, {"classes", "10"}, {"data", ""}, {"box", "1"}, {"max_iterations", "0"}}},
        {"ls-bench", {{"seed", "42"}, {"dimension", "2,5,10,20,50"}, {"rows", "200"}, {"candidates", "1000"}}},
    };
    return table;
}

class Settings {
public:
    Settings(const std::string& experiment, const ExperimentConfig& config) {
        const auto it = key_table().find(experiment);
        if (it == key_table().end()) {
            std::string names;
            for (const auto& n : experiment_names()) names += (names.empty() ? "" : ", ") + n;
            throw std::invalid_argument("unknown experiment '" + experiment + "' (expected one of: " + names + ")");
        }
        std::set<std::string> known;
        for (const auto& [key, value] : it->second) {
            known.insert(key);
            if (!value.empty()) values_[key] = value;
        }
        std::vector<std::string> unknown;
        for (const auto& [key, value] : config) {
            if (!known.count(key)) {
                unknown.push_back(key);
            } else {
                values_[key] = value;
                given_.insert(key);
            }
        }
        if (!unknown.empty()) {
            std::string list;
            for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
            std::string accepted;
            for (const auto& k : known) accepted += (accepted.empty() ? "" : ", ") + k;
            throw std::invalid_argument("experiment '" + experiment + "' does not accept key(s): " + list +
                                        " (accepted: " + accepted + ")");
        }
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    bool given(const std::string& key) const { return given_.count(key) > 0; }
    const std::string& text(const std::string& key) const { return values_.at(key); }
    const std::map<std::string, std::string>& all() const { return values_; }

    std::size_t size(const std::string& key) const { return parse_size(key, text(key)); }
    double real(const std::string& key) const { return parse_real(key, text(key)); }
    std::uint64_t seed() const {
        std::uint64_t v = 0;
        const std::string& s = text("seed");
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
            throw std::invalid_argument("key 'seed': expected a non-negative integer, got '" + s + "'");
        return v;
    }
    std::vector<std::size_t> sizes(const std::string& key) const {
        std::vector<std::size_t> out;
        for (const auto& cell : split(key)) out.push_back(parse_size(key, cell));
        return out;
    }
    std::vector<double> reals(const std::string& key) const {
        std::vector<double> out;
        for (const auto& cell : split(key)) out.push_back(parse_real(key, cell));
        return out;
    }

private:
    std::vector<std::string> split(const std::string& key) const {
        std::vector<std::string> out;
        const std::string& s = text(key);
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = s.find(',', start);
            out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return out;
    }

    static std::size_t parse_size(const std::string& key, const std::string& s) {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
            throw std::invalid_argument("key '" + key + "': expected a non-negative integer, got '" + s + "'");
        return v;
    }

    static double parse_real(const std::string& key, const std::string& s) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
            throw std::invalid_argument("key '" + key + "': expected a finite number, got '" + s + "'");
        return v;
    }

    std::map<std::string, std::string> values_;
    std::set<std::string> given_;
};

ExperimentReport make_report(const std::string& name, const Settings& s, std::string sweep,
                             std::vector<std::string> metrics) {
    ExperimentReport r;
    r.experiment_name = name;
    r.parameters = s.all();
    r.seed = linalg::Seed{s.seed()};
    r.timestamp = utc_timestamp();
    r.sweep_name = std::move(sweep);
    r.metric_names = std::move(metrics);
    return r;
}

/// Median wall time of three runs after one discarded warm-up run; `out`
/// receives the result of the last run.
template <class F, class R>
double median_time(F&& fn, R& out) {
    out = fn();
    double t[3];
    for (double& v : t) {
        const auto start = std::chrono::steady_clock::now();
        out = fn();
        v = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    std::sort(t, t + 3);
    return t[1];
}

kernels::NormalizationMode parse_mode(const std::string& s) {
    if (s == "paper") return kernels::NormalizationMode::paper;
    if (s == "corrected") return kernels::NormalizationMode::corrected;
    throw std::invalid_argument("key 'mode': expected paper or corrected, got '" + s + "'");
}

ExperimentReport run_jl(const Settings& s) {
    auto r = make_report("jl", s, "k", {"mean", "stdev", "abs_mean", "trials"});
    const std::size_t d = s.size("dimension");
    const std::size_t trials = s.size("trials");
    for (std::size_t k : s.sizes("rank")) {
        const auto stats = sketch::norm_preservation_experiment(d, k, trials, r.seed);
        r.add_row(static_cast<double>(k),
                  {stats.mean, stats.stdev, std::abs(stats.mean), static_cast<double>(stats.trial_count)});
    }
    return r;
}

ExperimentReport run_factor_bench(const Settings& s) {
    auto r = make_report("factor-bench", s, "k",
                         {"svd_error", "rsvd_error", "rsvd_relative", "svd_seconds", "rsvd_seconds", "id_error",
                          "rid_error", "rid_relative", "id_seconds", "rid_seconds"});
    linalg::Matrix a;
    if (s.has("data")) {
        DatasetSpec spec;
        spec.kind = DatasetKind::csv_file;
        spec.path = s.text("data");
        a = generate_dataset(spec, r.seed).x;
    } else {
        const auto spec = DatasetSpec::low_rank_plus_noise(s.size("rows"), s.size("cols"), s.size("data_rank"),
                                                           s.real("noise"));
        DatasetSpec tuned = spec;
        tuned.decay = s.real("decay");
        a = generate_dataset(tuned, r.seed).x;
    }
    const std::size_t oversampling = s.size("oversampling");
    const std::size_t power = s.size("power");
    const std::size_t limit = std::min(a.rows(), a.cols());

    for (std::size_t k : s.sizes("rank")) {
        if (k == 0 || k > limit)
            throw std::invalid_argument("key 'rank': " + std::to_string(k) + " outside [1, " + std::to_string(limit) + "]");
        const linalg::Seed seed = linalg::derive_seed(r.seed, k);

        linalg::SvdFactors svd_f, rsvd_f;
        factor::Timings svd_t;
        svd_t.det_seconds = median_time([&] { return factor::truncated_svd(a, k); }, svd_f);
        svd_t.rand_seconds = median_time(
            [&] { return factor::randomized_svd(a, {k, power, oversampling, seed, false}); }, rsvd_f);
        const auto svd_report =
            factor::compare_decompositions(a, linalg::reconstruct(svd_f), linalg::reconstruct(rsvd_f), svd_t);

        factor::IdResult id_f, rid_f;
        factor::Timings id_t;
        id_t.det_seconds = median_time([&] { return factor::deterministic_id(a, k); }, id_f);
        id_t.rand_seconds = median_time([&] { return factor::randomized_id(a, k, oversampling, seed); }, rid_f);
        const auto id_report = factor::compare_decompositions(a, factor::project_onto(a, id_f.basis),
                                                              factor::project_onto(a, rid_f.basis), id_t);

        r.add_row(static_cast<double>(k),
                  {svd_report.absolute_deterministic, svd_report.absolute_random, svd_report.relative,
                   svd_report.elapsed_det_seconds, svd_report.elapsed_rand_seconds, id_report.absolute_deterministic,
                   id_report.absolute_random, id_report.relative, id_report.elapsed_det_seconds,
                   id_report.elapsed_rand_seconds});
    }
    return r;
}

ExperimentReport run_eigenfaces(const Settings& s) {
    auto r = make_report("eigenfaces", s, "k",
                         {"det_error", "rand_error", "det_seconds", "rand_seconds", "max_angle_degrees"});
    DatasetSpec spec;
    spec.kind = DatasetKind::pgm_dir;
    spec.path = s.text("data");
    const linalg::Matrix images = generate_dataset(spec, r.seed).x;
    const linalg::Matrix centered = models::center_images(images, models::mean_image(images));
    const std::size_t oversampling = s.size("oversampling");
    const std::size_t power = s.size("power");

    for (std::size_t k : s.sizes("rank")) {
        const factor::RsvdConfig cfg{k, power, oversampling, linalg::derive_seed(r.seed, k), false};
        models::EigenfacesResult det, rnd;
        const double det_s =
            median_time([&] { return models::eigenfaces(images, k, models::FaceMethod::deterministic); }, det);
        const double rnd_s =
            median_time([&] { return models::eigenfaces(images, k, models::FaceMethod::randomized, cfg); }, rnd);
        const auto angles = models::principal_angles_degrees(det.basis, rnd.basis);
        r.add_row(static_cast<double>(k),
                  {factor::projection_error(centered, det.basis), factor::projection_error(centered, rnd.basis),
                   det_s, rnd_s, angles.back()});
    }
    return r;
}

ExperimentReport run_kpca(const Settings& s) {
    auto r = make_report("kpca", s, "point",
                         {"gamma_lo", "gamma_hi", "features", "label", "component_1", "component_2"});
    const bool ranged = s.given("gamma_lo") || s.given("gamma_hi");
    if (ranged && !(s.has("gamma_lo") && s.has("gamma_hi")))
        throw std::invalid_argument("keys 'gamma_lo' and 'gamma_hi' must be given together");
    if (ranged && s.given("gamma")) throw std::invalid_argument("keys 'gamma' and 'gamma_lo'/'gamma_hi' are exclusive");

    std::vector<std::pair<double, double>> ranges;
    if (ranged) {
        ranges.emplace_back(s.real("gamma_lo"), s.real("gamma_hi"));
    } else {
        for (double g : s.reals("gamma")) ranges.emplace_back(g, g);
    }
    const auto mode = parse_mode(s.text("mode"));
    const std::size_t groups = s.size("groups");
    const auto data = generate_dataset(DatasetSpec::circle_cloud(s.size("n"), s.real("noise")), r.seed);
    const linalg::Matrix& x = data.x;
    const std::vector<int>& labels = *data.labels;

    std::uint64_t config_index = 0;
    for (const auto& [lo, hi] : ranges) {
        if (!(lo > 0.0) || hi < lo) throw std::invalid_argument("gamma values must be positive with lo <= hi");
        for (std::size_t m : s.sizes("features")) {
            linalg::Matrix gram;
            if (m == 0) {
                if (lo == hi) {
                    gram = kernels::exact_kernel_matrix(x, kernels::KernelSpec::rbf(lo));
                } else {
                    gram = linalg::Matrix(x.rows(), x.rows());
                    for (std::size_t i = 0; i < x.rows(); ++i)
                        for (std::size_t j = 0; j < x.rows(); ++j) {
                            const double dx = x(i, 0) - x(j, 0);
                            const double dy = x(i, 1) - x(j, 1);
                            gram(i, j) = kernels::range_averaged_rbf(dx * dx + dy * dy, lo, hi);
                        }
                }
            } else {
                const auto map = kernels::sample_range_rff(x.cols(), m, groups, lo, hi,
                                                           linalg::derive_seed(r.seed, ++config_index), mode);
                gram = kernels::rff_kernel_matrix(map, x);
            }
            const auto kp = models::kernel_pca(gram, 2);
            for (std::size_t i = 0; i < x.rows(); ++i) {
                r.add_row(static_cast<double>(i), {lo, hi, static_cast<double>(m), static_cast<double>(labels[i]),
                                                   kp.embedding(i, 0), kp.embedding(i, 1)});
            }
        }
    }
    return r;
}

ExperimentReport run_svm_grid(const Settings& s) {
    auto r = make_report("svm-grid", s, "gamma",
                         {"accuracy_deterministic", "accuracy_random", "seconds_deterministic", "seconds_random"});
    models::GridSearchConfig cfg;
    if (s.given("gamma")) {
        if (s.given("gamma_lo") || s.given("gamma_hi"))
            throw std::invalid_argument("keys 'gamma' and 'gamma_lo'/'gamma_hi' are exclusive");
        cfg.gammas = s.reals("gamma");
    } else {
        const double lo = s.real("gamma_lo");
        const double hi = s.real("gamma_hi");
        const std::size_t count = s.size("gamma_count");
        if (!(lo > 0.0) || hi < lo || count == 0)
            throw std::invalid_argument("gamma range needs 0 < gamma_lo <= gamma_hi and gamma_count >= 1");
        for (std::size_t i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
            cfg.gammas.push_back(lo * std::pow(hi / lo, t));
        }
    }
    for (double g : cfg.gammas)
        if (!(g > 0.0)) throw std::invalid_argument("key 'gamma': values must be positive");

    Dataset data;
    if (s.has("data")) {
        DatasetSpec spec;
        spec.kind = DatasetKind::csv_file;
        spec.path = s.text("data");
        spec.label_column = true;
        data = generate_dataset(spec, r.seed);
    } else {
        DatasetSpec spec = DatasetSpec::digit_blobs(s.size("n"), s.size("dimension"));
        spec.class_count = s.size("classes");
        data = generate_dataset(spec, r.seed);
    }

    const std::size_t threads = s.size("parallel");
    cfg.folds = s.size("folds");
    cfg.features = s.size("features");
    cfg.seed = r.seed;
    cfg.threads = std::max<std::size_t>(1, threads);
    cfg.normalization = parse_mode(s.text("mode"));
    cfg.svm.box = s.real("box");
    cfg.svm.max_iterations = s.size("max_iterations");  // 0 keeps the solver default
    cfg.modes = {models::GridMode::deterministic,
                 threads > 0 ? models::GridMode::random_parallel : models::GridMode::random_serial};
    r.parameters["random_mode"] = models::to_string(cfg.modes[1]);

    const auto report = models::grid_search_cv(data.x, *data.labels, cfg);
    const std::size_t n = cfg.gammas.size();
    for (std::size_t g = 0; g < n; ++g) {
        const auto& det = report.rows[g];
        const auto& rnd = report.rows[n + g];
        r.add_row(cfg.gammas[g], {det.mean_cv_accuracy, rnd.mean_cv_accuracy, det.elapsed_seconds, rnd.elapsed_seconds});
    }
    return r;
}

ExperimentReport run_ls_bench(const Settings& s) {
    auto r = make_report("ls-bench", s, "dimension",
                         {"residual_qr", "residual_random", "normal_residual", "seconds_qr", "seconds_random"});
    const std::size_t rows = s.size("rows");
    const std::size_t candidates = s.size("candidates");
    std::uint64_t stream = 0;
    for (std::size_t n : s.sizes("dimension")) {
        if (n == 0 || n > rows)
            throw std::invalid_argument("key 'dimension': " + std::to_string(n) + " outside [1, rows]");
        const linalg::Matrix a = linalg::gaussian_matrix(rows, n, linalg::derive_seed(r.seed, stream++));
        const linalg::Matrix bm = linalg::gaussian_matrix(rows, 1, linalg::derive_seed(r.seed, stream++));
        const linalg::Vector b = bm.column(0);
        const linalg::Seed search_seed = linalg::derive_seed(r.seed, stream++);

        linalg::Vector x;
        models::RandomSearchResult best;
        const double qr_s = median_time([&] { return models::ls_solve_qr(a, b); }, x);
        const double rnd_s = median_time([&] { return models::ls_random_search(a, b, candidates, search_seed); }, best);

        linalg::Vector resid = linalg::matvec(a, x);
        for (std::size_t i = 0; i < rows; ++i) resid[i] -= b[i];
        const double normal = linalg::norm2(linalg::matvec_t(a, resid));
        r.add_row(static_cast<double>(n), {linalg::norm2(resid), best.residual, normal, qr_s, rnd_s});
    }
    return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"jl", "factor-bench", "eigenfaces", "kpca", "svm-grid", "ls-bench"};
    return names;
}

std::vector<std::string> experiment_keys(const std::string& name) {
    const auto it = key_table().find(name);
    if (it == key_table().end()) throw std::invalid_argument("unknown experiment '" + name + "'");
    std::vector<std::string> keys;
    for (const auto& [key, value] : it->second) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    return keys;
}

ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& config) {
    const Settings s(name, config);
    if (name == "jl") return run_jl(s);
    if (name == "factor-bench") return run_factor_bench(s);
    if (name == "eigenfaces") return run_eigenfaces(s);
    if (name == "kpca") return run_kpca(s);
    if (name == "svm-grid") return run_svm_grid(s);
    return run_ls_bench(s);
}

}  // namespace randproj::bench
