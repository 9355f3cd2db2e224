#include "randproj/bench/dataset.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "randproj/bench/io.hpp"
#include "randproj/error.hpp"
#include "randproj/linalg/decompositions.hpp"

namespace randproj::bench {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("generate_dataset: " + what);
}

Dataset circle_cloud(const DatasetSpec& spec, Seed seed) {
    require(spec.n_per_class >= 1, "need at least one point per class");
    require(spec.noise >= 0.0 && std::isfinite(spec.noise), "noise must be finite and >= 0");
    require(spec.cloud_std >= 0.0 && std::isfinite(spec.cloud_std), "cloud_std must be finite and >= 0");
    require(spec.radius > 0.0 && std::isfinite(spec.radius), "radius must be positive");
    const std::size_t n = spec.n_per_class;
    Dataset out{Matrix(2 * n, 2), std::vector<int>(2 * n, 0)};

    linalg::RandomStream ring(linalg::derive_seed(seed, 0));
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = 2.0 * std::numbers::pi * ring.uniform();
        const double r = spec.radius + spec.noise * ring.normal();
        out.x(i, 0) = r * std::cos(angle);
        out.x(i, 1) = r * std::sin(angle);
    }
    linalg::RandomStream cloud(linalg::derive_seed(seed, 1));
    for (std::size_t i = n; i < 2 * n; ++i) {
        out.x(i, 0) = spec.cloud_std * cloud.normal();
        out.x(i, 1) = spec.cloud_std * cloud.normal();
        (*out.labels)[i] = 1;
    }
    return out;
}

Dataset gaussian_blobs(const DatasetSpec& spec, Seed seed) {
    require(spec.n_per_class >= 1, "need at least one point per class");
    require(spec.class_count >= 2, "need at least two classes");
    require(spec.dimension >= 1, "dimension must be positive");
    require(spec.blob_std >= 0.0 && std::isfinite(spec.blob_std), "blob_std must be finite and >= 0");
    require(spec.center_scale >= 0.0 && std::isfinite(spec.center_scale), "center_scale must be finite and >= 0");
    const std::size_t c = spec.class_count;
    const std::size_t d = spec.dimension;
    const std::size_t n = spec.n_per_class * c;

    const Matrix centers = spec.center_scale * linalg::gaussian_matrix(c, d, linalg::derive_seed(seed, 0));
    Dataset out{Matrix(n, d), std::vector<int>(n)};
    linalg::RandomStream rng(linalg::derive_seed(seed, 1));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t label = i % c;
        (*out.labels)[i] = static_cast<int>(label);
        for (std::size_t j = 0; j < d; ++j) out.x(i, j) = centers(label, j) + spec.blob_std * rng.normal();
    }
    return out;
}

Dataset low_rank_plus_noise(const DatasetSpec& spec, Seed seed) {
    require(spec.rows >= 1 && spec.cols >= 1, "rows and cols must be positive");
    require(spec.rank >= 1 && spec.rank <= std::min(spec.rows, spec.cols), "rank must lie in [1, min(rows, cols)]");
    require(spec.noise >= 0.0 && std::isfinite(spec.noise), "noise must be finite and >= 0");
    require(spec.decay > 0.0 && spec.decay <= 1.0, "decay must lie in (0, 1]");
    const std::size_t r = spec.rank;

    Matrix u = linalg::householder_qr(linalg::gaussian_matrix(spec.rows, r, linalg::derive_seed(seed, 0))).q;
    const Matrix v = linalg::householder_qr(linalg::gaussian_matrix(spec.cols, r, linalg::derive_seed(seed, 1))).q;
    for (std::size_t j = 0; j < r; ++j) {
        const double s = std::pow(spec.decay, static_cast<double>(j));
        for (std::size_t i = 0; i < spec.rows; ++i) u(i, j) *= s;
    }
    Matrix a = linalg::matmul_nt(u, v);
    if (spec.noise > 0.0) a += spec.noise * linalg::gaussian_matrix(spec.rows, spec.cols, linalg::derive_seed(seed, 2));
    return {std::move(a), std::nullopt};
}

Dataset csv_file(const DatasetSpec& spec) {
    Matrix m = load_matrix_csv(spec.path, spec.has_header);
    if (!spec.label_column) return {std::move(m), std::nullopt};
    if (m.cols() < 2) throw DataError(spec.path + ": label column requested but file has fewer than two columns");
    const std::size_t d = m.cols() - 1;
    Dataset out{Matrix(m.rows(), d), std::vector<int>(m.rows())};
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < d; ++j) out.x(i, j) = m(i, j);
        const double label = m(i, d);
        if (label != std::floor(label) || label < 0.0 || label > 1e6) {
            throw DataError(spec.path + ": line " + std::to_string(i + 1 + (spec.has_header ? 1 : 0)) +
                            ": label must be a non-negative integer");
        }
        (*out.labels)[i] = static_cast<int>(label);
    }
    return out;
}

}  // namespace

std::string to_string(DatasetKind kind) {
    switch (kind) {
        case DatasetKind::circle_cloud: return "circle-cloud";
        case DatasetKind::gaussian_blobs: return "gaussian-blobs";
        case DatasetKind::low_rank_plus_noise: return "low-rank-plus-noise";
        case DatasetKind::csv_file: return "csv-file";
        case DatasetKind::pgm_dir: return "pgm-dir";
    }
    return "unknown";
}

DatasetKind dataset_kind_from_string(const std::string& name) {
    for (auto kind : {DatasetKind::circle_cloud, DatasetKind::gaussian_blobs, DatasetKind::low_rank_plus_noise,
                      DatasetKind::csv_file, DatasetKind::pgm_dir}) {
        if (to_string(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown dataset kind '" + name + "'");
}

DatasetSpec DatasetSpec::circle_cloud(std::size_t n_per_class, double noise) {
    DatasetSpec s;
    s.kind = DatasetKind::circle_cloud;
    s.n_per_class = n_per_class;
    s.noise = noise;
    return s;
}

DatasetSpec DatasetSpec::digit_blobs(std::size_t n_per_class, std::size_t dimension) {
    DatasetSpec s;
    s.kind = DatasetKind::gaussian_blobs;
    s.n_per_class = n_per_class;
    s.dimension = dimension;
    s.class_count = 10;
    return s;
}

DatasetSpec DatasetSpec::low_rank_plus_noise(std::size_t rows, std::size_t cols, std::size_t rank, double noise) {
    DatasetSpec s;
    s.kind = DatasetKind::low_rank_plus_noise;
    s.rows = rows;
    s.cols = cols;
    s.rank = rank;
    s.noise = noise;
    return s;
}

Dataset generate_dataset(const DatasetSpec& spec, Seed seed) {
    switch (spec.kind) {
        case DatasetKind::circle_cloud: return circle_cloud(spec, seed);
        case DatasetKind::gaussian_blobs: return gaussian_blobs(spec, seed);
        case DatasetKind::low_rank_plus_noise: return low_rank_plus_noise(spec, seed);
        case DatasetKind::csv_file: return csv_file(spec);
        case DatasetKind::pgm_dir: return {load_pgm_dir(spec.path), std::nullopt};
    }
    throw std::invalid_argument("generate_dataset: unknown kind");
}

}  // namespace randproj::bench
