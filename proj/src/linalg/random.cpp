#include "randproj/linalg/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace randproj::linalg {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

Seed derive_seed(Seed master, std::uint64_t stream) {
    return Seed{mix64(master.value ^ mix64(stream + 0xD1B54A32D192ED03ULL))};
}

std::uint64_t RandomStream::next_u64() noexcept {
    ++counter_;
    return mix64(seed_ + counter_ * kGoldenGamma);
}

double RandomStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::uniform_index(std::uint64_t bound) noexcept {
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % bound;
}

double RandomStream::normal() noexcept {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Seed seed) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("gaussian_matrix: rows and cols must be positive");
    }
    RandomStream rng(seed);
    Matrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (double& v : g.row(i)) v = rng.normal();
    return g;
}

}  // namespace randproj::linalg
