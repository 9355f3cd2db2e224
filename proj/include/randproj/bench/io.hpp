#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "randproj/linalg/matrix.hpp"

namespace randproj::bench {

using linalg::Matrix;

/// Comma-separated decimal floats, one matrix row per line. With has_header
/// the first line is skipped. Empty files, malformed or non-finite cells
/// (reported with 1-based line and column) and ragged rows throw DataError.
Matrix load_matrix_csv(const std::string& path, bool has_header = false);

/// Writes `m` with 17 significant digits so that loading returns the same values.
void save_matrix_csv(const Matrix& m, const std::string& path);

struct PgmImage {
    std::size_t width = 0;
    std::size_t height = 0;
    unsigned max_value = 255;
    std::vector<std::uint8_t> pixels;  ///< row-major, width * height
};

/// Binary 8-bit grayscale ("P5") reader; header comments are allowed.
PgmImage read_pgm(const std::string& path);
void write_pgm(const std::string& path, const PgmImage& image);

/// Every *.pgm file in `dir`, in lexicographic filename order, flattened
/// row-major into one column each and scaled by 1 / max_value into [0, 1].
/// Result is pixels x n_images. Mixed dimensions are rejected.
Matrix load_pgm_dir(const std::string& dir);

}  // namespace randproj::bench
