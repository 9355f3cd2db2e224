#include "randproj/factor/low_rank.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace randproj::factor {

using linalg::column_pivoted_qr;
using linalg::householder_qr;
using linalg::matmul;
using linalg::matmul_tn;

namespace {

SvdFactors truncate(SvdFactors f, std::size_t k) {
    f.u = f.u.left_cols(k);
    f.v = f.v.left_cols(k);
    f.s.resize(k);
    return f;
}

IdResult id_from_pivoted_qr(const linalg::QrFactors& qr, std::size_t k,
                            const std::vector<std::size_t>& column_map) {
    IdResult out;
    out.basis = qr.q.left_cols(k);
    out.approximation_rank = k;
    out.selected_columns.reserve(k);
    for (std::size_t j = 0; j < k; ++j) out.selected_columns.push_back(column_map[(*qr.perm)[j]]);
    return out;
}

/// Removes the components of y along the columns of the orthonormal `basis`.
void orthogonalize_against(Matrix& y, const Matrix& basis) {
    if (basis.cols() == 0) return;
    y -= matmul(basis, matmul_tn(basis, y));
}

}  // namespace

SvdFactors randomized_svd(const Matrix& a, const RsvdConfig& cfg) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t k = cfg.rank;
    if (k == 0 || k > std::min(m, n)) {
        throw std::invalid_argument("randomized_svd: rank " + std::to_string(k) +
                                    " outside [1, min(m, n) = " + std::to_string(std::min(m, n)) + "]");
    }
    const std::size_t p = std::min(k + cfg.oversampling, std::min(m, n));

    const Matrix omega = linalg::gaussian_matrix(n, p, cfg.seed);
    Matrix y = matmul(a, omega);
    for (std::size_t i = 0; i < cfg.power; ++i) {
        if (cfg.raw_power) {
            y = matmul(a, matmul_tn(a, y));
        } else {
            const Matrix q = householder_qr(y).q;
            const Matrix z = householder_qr(matmul_tn(a, q)).q;
            y = matmul(a, z);
        }
    }
    const Matrix q = householder_qr(y).q;
    const Matrix b = matmul_tn(q, a);
    SvdFactors small = linalg::svd(b);
    SvdFactors out{matmul(q, small.u), std::move(small.s), std::move(small.v)};
    return truncate(std::move(out), k);
}

SvdFactors truncated_svd(const Matrix& a, std::size_t k) {
    if (k == 0 || k > std::min(a.rows(), a.cols())) {
        throw std::invalid_argument("truncated_svd: rank outside [1, min(m, n)]");
    }
    return truncate(linalg::svd(a), k);
}

IdResult deterministic_id(const Matrix& a, std::size_t k) {
    if (k == 0 || k > std::min(a.rows(), a.cols())) {
        throw std::invalid_argument("deterministic_id: k = " + std::to_string(k) +
                                    " outside [1, min(m, n) = " +
                                    std::to_string(std::min(a.rows(), a.cols())) + "]");
    }
    std::vector<std::size_t> identity(a.cols());
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    return id_from_pivoted_qr(column_pivoted_qr(a), k, identity);
}

IdResult randomized_id(const Matrix& a, std::size_t k, std::size_t oversampling, Seed seed) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t p = k + oversampling;
    if (k == 0) throw std::invalid_argument("randomized_id: k must be positive");
    if (p > n) {
        throw std::invalid_argument("randomized_id: sample size p = " + std::to_string(p) +
                                    " exceeds column count " + std::to_string(n));
    }
    if (k > m) throw std::invalid_argument("randomized_id: k exceeds row count");

    // Partial Fisher-Yates shuffle: the first p entries are a uniform sample
    // without replacement.
    std::vector<std::size_t> cols(n);
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    linalg::RandomStream rng(seed);
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
        std::swap(cols[i], cols[j]);
    }
    cols.resize(p);
    std::sort(cols.begin(), cols.end());

    return id_from_pivoted_qr(column_pivoted_qr(a.select_columns(cols)), k, cols);
}

Matrix project_onto(const Matrix& a, const Matrix& basis) {
    if (basis.rows() != a.rows()) throw std::invalid_argument("project_onto: row count mismatch");
    if (basis.cols() == 0) return Matrix(a.rows(), a.cols());
    return matmul(basis, matmul_tn(basis, a));
}

double projection_error(const Matrix& a, const Matrix& basis) {
    if (basis.rows() != a.rows()) {
        throw std::invalid_argument("projection_error: basis has " + std::to_string(basis.rows()) +
                                    " rows, matrix has " + std::to_string(a.rows()));
    }
    if (basis.cols() == 0) return linalg::frobenius_norm(a);
    if (linalg::orthonormality_error(basis) > 1e-10) {
        throw std::invalid_argument("projection_error: basis columns are not orthonormal");
    }
    return linalg::frobenius_norm(a - project_onto(a, basis));
}

FixedPrecisionBound fixed_precision_bound(std::uint64_t n, double epsilon) {
    if (n == 0) throw std::invalid_argument("fixed_precision_bound: n must be positive");
    if (!(epsilon > 0.0)) throw std::invalid_argument("fixed_precision_bound: epsilon must be positive");
    const double nd = static_cast<double>(n);
    const double e2 = epsilon * epsilon;
    const double lead = 3.0 * e2 * e2 * nd;
    const double denom = lead - 2.0 * e2 * e2 * e2;
    // Anything within a few ulps of cancellation is treated as zero.
    if (!(denom > 64.0 * DBL_EPSILON * lead)) {
        throw std::invalid_argument(
            "fixed_precision_bound: denominator 3 eps^4 n - 2 eps^6 is not positive "
            "(requires eps^2 < 1.5 n)");
    }
    FixedPrecisionBound out;
    out.bound = 24.0 * nd * nd * nd / denom * std::log(nd);
    if (!std::isfinite(out.bound)) {
        throw std::invalid_argument("fixed_precision_bound: bound overflows double precision");
    }
    out.min_rank = std::floor(out.bound) + 1.0;
    out.vacuous = out.min_rank >= nd;
    return out;
}

AdaptiveRankResult adaptive_rank(const Matrix& a, double epsilon, std::size_t step, Seed seed) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("adaptive_rank: epsilon must be positive");
    if (step == 0) throw std::invalid_argument("adaptive_rank: step must be positive");
    const std::size_t limit = std::min(a.rows(), a.cols());

    AdaptiveRankResult out{Matrix(a.rows(), 0), 0, linalg::frobenius_norm(a)};
    for (std::uint64_t block = 0; out.error > epsilon && out.rank < limit; ++block) {
        const std::size_t width = std::min(step, limit - out.rank);
        Matrix y = matmul(a, linalg::gaussian_matrix(a.cols(), width, linalg::derive_seed(seed, block)));
        // Two rounds of projection keep the new block orthogonal to the basis
        // even when A has no range left outside it.
        for (int pass = 0; pass < 2; ++pass) {
            orthogonalize_against(y, out.basis);
            y = householder_qr(y).q;
        }
        out.basis = linalg::hstack(out.basis, y);
        out.rank = out.basis.cols();
        out.error = projection_error(a, out.basis);
    }
    return out;
}

ErrorReport compare_decompositions(const Matrix& a, const Matrix& det_approx,
                                   const Matrix& rand_approx, const Timings& timings) {
    if (det_approx.rows() != a.rows() || det_approx.cols() != a.cols() ||
        rand_approx.rows() != a.rows() || rand_approx.cols() != a.cols()) {
        throw std::invalid_argument("compare_decompositions: all matrices must share one shape");
    }
    ErrorReport r;
    r.absolute_deterministic = linalg::frobenius_norm(det_approx - a);
    r.absolute_random = linalg::frobenius_norm(rand_approx - a);
    if (r.absolute_deterministic > 0.0) {
        r.relative = (r.absolute_random - r.absolute_deterministic) / r.absolute_deterministic;
    } else {
        r.relative = r.absolute_random > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    r.elapsed_det_seconds = timings.det_seconds;
    r.elapsed_rand_seconds = timings.rand_seconds;
    return r;
}

}  // namespace randproj::factor
