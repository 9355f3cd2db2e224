#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "randproj/linalg/matrix.hpp"
#include "randproj/linalg/random.hpp"

namespace randproj::bench {

using linalg::Matrix;
using linalg::Seed;

enum class DatasetKind { circle_cloud, gaussian_blobs, low_rank_plus_noise, csv_file, pgm_dir };

std::string to_string(DatasetKind kind);
DatasetKind dataset_kind_from_string(const std::string& name);

/// Parameters for every dataset kind; each kind reads only the fields listed
/// next to it.
///
/// circle-cloud (points in R^2, rows 0..n-1 are class 0, then class 1):
///   class 0 at radius `radius` plus N(0, noise^2) radial jitter, uniform angle;
///   class 1 isotropic N(0, cloud_std^2 I) at the origin. n_per_class points each.
/// gaussian-blobs ("digit-blob" preset: 10 classes in R^64): class_count centers
///   drawn N(0, center_scale^2 I); point i belongs to class i mod class_count and
///   equals its center plus N(0, blob_std^2 I). n_per_class * class_count rows.
/// low-rank-plus-noise: rows x cols matrix U_r V_r^T + noise * G, where
///   U_r = Q_U diag(decay^0, ..., decay^{rank-1}) and Q_U, V_r have orthonormal
///   columns from QR of Gaussian matrices. No labels.
/// csv-file: load_matrix_csv(path, has_header); with label_column set the last
///   column is split off as integer labels.
/// pgm-dir: load_pgm_dir(path), pixels x n_images. No labels.
struct DatasetSpec {
    DatasetKind kind = DatasetKind::circle_cloud;
    std::size_t n_per_class = 100;
    std::size_t dimension = 64;
    std::size_t class_count = 10;
    double radius = 0.5;
    double noise = 0.05;
    double cloud_std = 0.125;
    double center_scale = 1.0;
    double blob_std = 2.0;
    std::size_t rows = 400;
    std::size_t cols = 200;
    std::size_t rank = 10;
    double decay = 0.7;
    std::string path;
    bool has_header = false;
    bool label_column = false;

    static DatasetSpec circle_cloud(std::size_t n_per_class, double noise);
    static DatasetSpec digit_blobs(std::size_t n_per_class = 60, std::size_t dimension = 64);
    static DatasetSpec low_rank_plus_noise(std::size_t rows, std::size_t cols, std::size_t rank,
                                           double noise);
};

struct Dataset {
    Matrix x;
    std::optional<std::vector<int>> labels;
};

/// Pure function of (spec, seed) for the generated kinds. Invalid parameters
/// throw std::invalid_argument; file problems throw DataError.
Dataset generate_dataset(const DatasetSpec& spec, Seed seed);

}  // namespace randproj::bench
