#include "randproj/bench/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "randproj/error.hpp"

namespace randproj::bench {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void csv_error(const std::string& path, std::size_t line, std::size_t col, const std::string& what) {
    std::ostringstream msg;
    msg << path << ": line " << line;
    if (col > 0) msg << ", column " << col;
    msg << ": " << what;
    throw DataError(msg.str());
}

}  // namespace

Matrix load_matrix_csv(const std::string& path, bool has_header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(path + ": cannot open file");

    std::vector<double> values;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (has_header && line_no == 1) continue;
        const std::string_view text = trim(line);
        if (text.empty()) {
            // Tolerate blank lines only at the end of the file.
            std::string rest;
            while (std::getline(in, rest)) {
                if (!trim(rest).empty()) csv_error(path, line_no, 0, "empty row");
            }
            break;
        }
        std::size_t col = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = text.find(',', start);
            const std::string_view cell =
                trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            ++col;
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
                csv_error(path, line_no, col, "malformed number '" + std::string(cell) + "'");
            }
            if (!std::isfinite(v)) csv_error(path, line_no, col, "non-finite value");
            values.push_back(v);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (rows == 0) {
            cols = col;
        } else if (col != cols) {
            csv_error(path, line_no, 0,
                      "row has " + std::to_string(col) + " columns, expected " + std::to_string(cols));
        }
        ++rows;
    }
    if (rows == 0) throw DataError(path + ": no data rows");
    return Matrix(rows, cols, std::move(values));
}

void save_matrix_csv(const Matrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(path + ": cannot open file for writing");
    char buf[32];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            if (j > 0) out << ',';
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw DataError(path + ": write failed");
}

PgmImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(path + ": cannot open file");
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::size_t pos = 0;
    auto fail = [&](const std::string& what) -> void { throw DataError(path + ": " + what); };
    auto skip_space = [&] {
        while (pos < bytes.size()) {
            const char c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_uint = [&](const char* field) {
        skip_space();
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(bytes.data() + pos, bytes.data() + bytes.size(), value);
        if (ec != std::errc()) fail(std::string("bad header field '") + field + "'");
        pos = static_cast<std::size_t>(ptr - bytes.data());
        return value;
    };

    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') fail("not a binary PGM (expected magic P5)");
    pos = 2;
    PgmImage img;
    img.width = read_uint("width");
    img.height = read_uint("height");
    const std::size_t maxval = read_uint("maxval");
    if (img.width == 0 || img.height == 0) fail("zero image dimension");
    if (maxval == 0 || maxval > 255) fail("maxval must lie in [1, 255] for 8-bit images");
    img.max_value = static_cast<unsigned>(maxval);
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) fail("missing whitespace after header");
    ++pos;
    const std::size_t count = img.width * img.height;
    if (bytes.size() - pos < count) fail("truncated pixel data");
    img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                      bytes.begin() + static_cast<std::ptrdiff_t>(pos + count));
    return img;
}

void write_pgm(const std::string& path, const PgmImage& image) {
    if (image.pixels.size() != image.width * image.height) throw std::invalid_argument("write_pgm: pixel count mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(path + ": cannot open file for writing");
    out << "P5\n" << image.width << ' ' << image.height << '\n' << image.max_value << '\n';
    out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw DataError(path + ": write failed");
}

Matrix load_pgm_dir(const std::string& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw DataError(dir + ": not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
    }
    if (files.empty()) throw DataError(dir + ": no .pgm files");
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

    Matrix out;
    std::size_t width = 0;
    std::size_t height = 0;
    for (std::size_t j = 0; j < files.size(); ++j) {
        const PgmImage img = read_pgm(files[j].string());
        if (j == 0) {
            width = img.width;
            height = img.height;
            out = Matrix(width * height, files.size());
        } else if (img.width != width || img.height != height) {
            throw DataError(files[j].string() + ": image is " + std::to_string(img.width) + "x" +
                            std::to_string(img.height) + ", expected " + std::to_string(width) + "x" +
                            std::to_string(height));
        }
        const double scale = 1.0 / static_cast<double>(img.max_value);
        for (std::size_t p = 0; p < img.pixels.size(); ++p) out(p, j) = std::min(1.0, img.pixels[p] * scale);
    }
    return out;
}

}  // namespace randproj::bench
