#pragma once

#include <cstddef>

#include "randproj/factor/low_rank.hpp"
#include "randproj/linalg/matrix.hpp"

namespace randproj::models {

using linalg::Matrix;
using linalg::Vector;

enum class FaceMethod { deterministic, randomized };

struct EigenfacesResult {
    Vector mean_face;        ///< length pixels
    Matrix basis;            ///< pixels x k, orthonormal eigenfaces
    Vector singular_values;  ///< length k, non-increasing
};

/// Subtracts the mean face from every image column, then takes the k leading
/// left singular vectors of the centered matrix via svd or randomized_svd
/// (cfg.rank is overridden by k). Needs at least two images and k <= n_images;
/// throws DataError when all images are identical.
EigenfacesResult eigenfaces(const Matrix& images, std::size_t k, FaceMethod method,
                            const factor::RsvdConfig& cfg = {});

/// images with the mean face subtracted from every column.
Matrix center_images(const Matrix& images, const Vector& mean_face);

/// Per-pixel mean over the image columns.
Vector mean_image(const Matrix& images);

/// Principal angles in degrees between the column spaces of two matrices with
/// orthonormal columns, in increasing order.
Vector principal_angles_degrees(const Matrix& q1, const Matrix& q2);

}  // namespace randproj::models
