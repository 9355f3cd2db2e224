#pragma once

#include <cstddef>
#include <cstdint>

#include "randproj/linalg/matrix.hpp"

namespace randproj::linalg {

/// Master seed. Every random quantity in the library is a pure function of a
/// Seed and the order of draws made from it.
struct Seed {
    std::uint64_t value = 0;

    friend bool operator==(Seed, Seed) = default;
};

/// Sub-seed for an independent stream, e.g. one per trial or per task.
/// derive_seed(s, i) != derive_seed(s, j) for i != j with overwhelming probability.
Seed derive_seed(Seed master, std::uint64_t stream);

/// Counter-based SplitMix64 generator.
///
/// The n-th 64-bit output is mix(seed + n * 0x9E3779B97F4A7C15), so the stream
/// is fully determined by (seed, counter) and independent of platform or
/// standard-library implementation. Normals use the Box-Muller transform on
/// consecutive uniform pairs; the sine branch is cached for the next call.
class RandomStream {
public:
    explicit RandomStream(Seed seed) noexcept : seed_(seed.value) {}

    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Uniform integer on [0, bound). bound must be positive.
    std::uint64_t uniform_index(std::uint64_t bound) noexcept;
    double normal() noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

/// rows x cols matrix of i.i.d. standard normals, filled row-major from RandomStream(seed).
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Seed seed);

}  // namespace randproj::linalg
