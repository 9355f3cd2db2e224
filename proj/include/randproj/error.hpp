#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace randproj {

// Precondition violations throw std::invalid_argument. The two classes below
// cover failures that are not the caller's fault in the same sense.

/// Malformed or unreadable input data (files, datasets).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative solver hit its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::size_t iterations, double residual = 0.0)
        : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

    std::size_t iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
};

}  // namespace randproj
