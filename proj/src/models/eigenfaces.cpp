#include "randproj/models/eigenfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "randproj/error.hpp"
#include "randproj/linalg/decompositions.hpp"

namespace randproj::models {

Vector mean_image(const Matrix& images) {
    Vector mean(images.rows(), 0.0);
    if (images.cols() == 0) return mean;
    for (std::size_t p = 0; p < images.rows(); ++p) {
        double s = 0.0;
        for (std::size_t j = 0; j < images.cols(); ++j) s += images(p, j);
        mean[p] = s / static_cast<double>(images.cols());
    }
    return mean;
}

Matrix center_images(const Matrix& images, const Vector& mean_face) {
    if (mean_face.size() != images.rows()) throw std::invalid_argument("center_images: mean length mismatch");
    Matrix out = images;
    for (std::size_t p = 0; p < out.rows(); ++p)
        for (std::size_t j = 0; j < out.cols(); ++j) out(p, j) -= mean_face[p];
    return out;
}

EigenfacesResult eigenfaces(const Matrix& images, std::size_t k, FaceMethod method,
                            const factor::RsvdConfig& cfg) {
    const std::size_t n = images.cols();
    if (n < 2) throw std::invalid_argument("eigenfaces: need at least two images");
    if (k == 0 || k > n) throw std::invalid_argument("eigenfaces: k must lie in [1, number of images]");
    if (k > images.rows()) throw std::invalid_argument("eigenfaces: k exceeds the pixel count");

    EigenfacesResult result;
    result.mean_face = mean_image(images);
    const Matrix centered = center_images(images, result.mean_face);
    const double scale = std::max(1.0, linalg::frobenius_norm(images));
    if (linalg::frobenius_norm(centered) <= 1e-12 * scale) {
        throw DataError("eigenfaces: all images are identical, the centered matrix is zero");
    }

    linalg::SvdFactors f;
    if (method == FaceMethod::deterministic) {
        f = factor::truncated_svd(centered, k);
    } else {
        factor::RsvdConfig c = cfg;
        c.rank = k;
        f = factor::randomized_svd(centered, c);
    }
    result.basis = f.u.left_cols(k);
    result.singular_values.assign(f.s.begin(), f.s.begin() + static_cast<std::ptrdiff_t>(k));
    return result;
}

Vector principal_angles_degrees(const Matrix& q1, const Matrix& q2) {
    if (q1.rows() != q2.rows()) throw std::invalid_argument("principal_angles_degrees: row mismatch");
    const Matrix c = linalg::matmul_tn(q1, q2);
    const linalg::SvdFactors f = linalg::svd(c);
    Vector angles;
    angles.reserve(f.s.size());
    for (double s : f.s) angles.push_back(std::acos(std::clamp(s, -1.0, 1.0)) * 180.0 / std::numbers::pi);
    std::sort(angles.begin(), angles.end());
    return angles;
}

}  // namespace randproj::models
