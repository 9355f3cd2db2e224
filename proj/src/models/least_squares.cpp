#include "randproj/models/least_squares.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "randproj/linalg/decompositions.hpp"

namespace randproj::models {

double ls_residual(const Matrix& a, const Vector& x, const Vector& b) {
    Vector r = linalg::matvec(a, x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return linalg::norm2(r);
}

Vector ls_solve_qr(const Matrix& a, const Vector& b) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (n == 0) throw std::invalid_argument("ls_solve_qr: A has no columns");
    if (m < n) throw std::invalid_argument("ls_solve_qr: need rows >= columns");
    if (b.size() != m) throw std::invalid_argument("ls_solve_qr: b length does not match rows of A");
    for (double v : b)
        if (!std::isfinite(v)) throw std::invalid_argument("ls_solve_qr: b has non-finite entries");

    const linalg::QrFactors f = linalg::householder_qr(a);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(f.r(i, i));
        if (d < lo) {
            lo = d;
            worst = i;
        }
        hi = std::max(hi, d);
    }
    if (!(lo > 1e-12 * hi)) {
        std::ostringstream msg;
        msg << "ls_solve_qr: A is numerically rank deficient (|R[" << worst << "," << worst
            << "]| = " << lo << ", max |R_ii| = " << hi << ")";
        throw std::invalid_argument(msg.str());
    }
    return linalg::back_substitute(f.r, linalg::matvec_t(f.q, b));
}

RandomSearchResult ls_random_search(const Matrix& a, const Vector& b, std::size_t k, linalg::Seed seed) {
    if (k == 0) throw std::invalid_argument("ls_random_search: need at least one candidate");
    if (b.size() != a.rows()) throw std::invalid_argument("ls_random_search: b length does not match rows of A");
    linalg::RandomStream rng(seed);
    RandomSearchResult best;
    best.residual = std::numeric_limits<double>::infinity();
    Vector x(a.cols());
    for (std::size_t c = 0; c < k; ++c) {
        for (double& v : x) v = rng.normal();
        const double r = ls_residual(a, x, b);
        if (r < best.residual) {
            best.residual = r;
            best.x = x;
            best.best_index = c;
        }
    }
    return best;
}

}  // namespace randproj::models
