#include "randproj/linalg/decompositions.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "randproj/error.hpp"

namespace randproj::linalg {

namespace {

/// H = I - beta * v v^T acting on rows [start, start + v.size()).
struct Reflector {
    std::size_t start = 0;
    Vector v;
    double beta = 0.0;
};

/// Builds H with H x = alpha e_1 and returns alpha.
double make_reflector(Reflector& h, std::size_t start, Vector x) {
    h.start = start;
    const double sigma = norm2(x);
    if (sigma == 0.0) {
        h.v = std::move(x);
        h.beta = 0.0;
        return 0.0;
    }
    const double alpha = x[0] >= 0.0 ? -sigma : sigma;
    h.beta = 1.0 / (sigma * (sigma + std::abs(x[0])));
    x[0] -= alpha;
    h.v = std::move(x);
    return alpha;
}

/// W <- H W restricted to columns [col0, cols).
void apply_left(Matrix& w, const Reflector& h, std::size_t col0) {
    if (h.beta == 0.0) return;
    const std::size_t ncols = w.cols();
    Vector t(ncols, 0.0);
    for (std::size_t i = 0; i < h.v.size(); ++i) {
        const double vi = h.v[i];
        if (vi == 0.0) continue;
        auto row = w.row(h.start + i);
        for (std::size_t j = col0; j < ncols; ++j) t[j] += vi * row[j];
    }
    for (std::size_t i = 0; i < h.v.size(); ++i) {
        const double vi = h.beta * h.v[i];
        if (vi == 0.0) continue;
        auto row = w.row(h.start + i);
        for (std::size_t j = col0; j < ncols; ++j) row[j] -= vi * t[j];
    }
}

/// W <- W H restricted to rows [row0, rows).
void apply_right(Matrix& w, const Reflector& h, std::size_t row0) {
    if (h.beta == 0.0) return;
    for (std::size_t i = row0; i < w.rows(); ++i) {
        auto row = w.row(i);
        double t = 0.0;
        for (std::size_t j = 0; j < h.v.size(); ++j) t += row[h.start + j] * h.v[j];
        t *= h.beta;
        if (t == 0.0) continue;
        for (std::size_t j = 0; j < h.v.size(); ++j) row[h.start + j] -= t * h.v[j];
    }
}

Matrix form_q(std::size_t m, std::size_t r, const std::vector<Reflector>& reflectors) {
    Matrix q(m, r);
    for (std::size_t i = 0; i < r; ++i) q(i, i) = 1.0;
    for (auto it = reflectors.rbegin(); it != reflectors.rend(); ++it) apply_left(q, *it, 0);
    return q;
}

/// Index of the largest |entry| in column j (first on ties).
std::size_t dominant_row(const Matrix& a, std::size_t j) {
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double v = std::abs(a(i, j));
        if (v > best_abs) {
            best_abs = v;
            best = i;
        }
    }
    return best;
}

void negate_column(Matrix& a, std::size_t j) {
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) = -a(i, j);
}

void normalize_qr_signs(Matrix& q, Matrix& r) {
    for (std::size_t j = 0; j < q.cols(); ++j) {
        if (q.rows() == 0 || q(dominant_row(q, j), j) >= 0.0) continue;
        negate_column(q, j);
        for (double& x : r.row(j)) x = -x;
    }
}

void normalize_svd_signs(SvdFactors& f) {
    for (std::size_t j = 0; j < f.u.cols(); ++j) {
        if (f.u.rows() == 0 || f.u(dominant_row(f.u, j), j) >= 0.0) continue;
        negate_column(f.u, j);
        negate_column(f.v, j);
    }
}

Vector column_tail(const Matrix& w, std::size_t j, std::size_t from) {
    Vector x(w.rows() - from);
    for (std::size_t i = from; i < w.rows(); ++i) x[i - from] = w(i, j);
    return x;
}

void swap_columns(Matrix& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

/// Golub-Kahan-Reinsch SVD for m >= n. U is m x n, V is n x n.
SvdFactors svd_tall(Matrix a) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    const int nu = std::min(m, n);
    Vector s(static_cast<std::size_t>(std::min(m + 1, n)), 0.0);
    Matrix u(a.rows(), static_cast<std::size_t>(nu));
    Matrix v(a.cols(), a.cols());
    Vector e(static_cast<std::size_t>(n), 0.0);
    Vector work(static_cast<std::size_t>(m), 0.0);

    auto A = [&](int i, int j) -> double& { return a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
    auto U = [&](int i, int j) -> double& { return u(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
    auto V = [&](int i, int j) -> double& { return v(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
    auto S = [&](int i) -> double& { return s[static_cast<std::size_t>(i)]; };
    auto E = [&](int i) -> double& { return e[static_cast<std::size_t>(i)]; };

    // Reduce to bidiagonal form, storing the diagonal in s and the
    // superdiagonal in e.
    const int nct = std::min(m - 1, n);
    const int nrt = std::max(0, std::min(n - 2, m));
    for (int k = 0; k < std::max(nct, nrt); ++k) {
        if (k < nct) {
            S(k) = 0.0;
            for (int i = k; i < m; ++i) S(k) = std::hypot(S(k), A(i, k));
            if (S(k) != 0.0) {
                if (A(k, k) < 0.0) S(k) = -S(k);
                for (int i = k; i < m; ++i) A(i, k) /= S(k);
                A(k, k) += 1.0;
            }
            S(k) = -S(k);
        }
        for (int j = k + 1; j < n; ++j) {
            if (k < nct && S(k) != 0.0) {
                double t = 0.0;
                for (int i = k; i < m; ++i) t += A(i, k) * A(i, j);
                t = -t / A(k, k);
                for (int i = k; i < m; ++i) A(i, j) += t * A(i, k);
            }
            E(j) = A(k, j);
        }
        if (k < nct) {
            for (int i = k; i < m; ++i) U(i, k) = A(i, k);
        }
        if (k < nrt) {
            E(k) = 0.0;
            for (int i = k + 1; i < n; ++i) E(k) = std::hypot(E(k), E(i));
            if (E(k) != 0.0) {
                if (E(k + 1) < 0.0) E(k) = -E(k);
                for (int i = k + 1; i < n; ++i) E(i) /= E(k);
                E(k + 1) += 1.0;
            }
            E(k) = -E(k);
            if (k + 1 < m && E(k) != 0.0) {
                for (int i = k + 1; i < m; ++i) work[static_cast<std::size_t>(i)] = 0.0;
                for (int j = k + 1; j < n; ++j)
                    for (int i = k + 1; i < m; ++i) work[static_cast<std::size_t>(i)] += E(j) * A(i, j);
                for (int j = k + 1; j < n; ++j) {
                    const double t = -E(j) / E(k + 1);
                    for (int i = k + 1; i < m; ++i) A(i, j) += t * work[static_cast<std::size_t>(i)];
                }
            }
            for (int i = k + 1; i < n; ++i) V(i, k) = E(i);
        }
    }

    int p = std::min(n, m + 1);
    if (nct < n) S(nct) = A(nct, nct);
    if (m < p) S(p - 1) = 0.0;
    if (nrt + 1 < p) E(nrt) = A(nrt, p - 1);
    E(p - 1) = 0.0;

    // Accumulate U.
    for (int j = nct; j < nu; ++j) {
        for (int i = 0; i < m; ++i) U(i, j) = 0.0;
        U(j, j) = 1.0;
    }
    for (int k = nct - 1; k >= 0; --k) {
        if (S(k) != 0.0) {
            for (int j = k + 1; j < nu; ++j) {
                double t = 0.0;
                for (int i = k; i < m; ++i) t += U(i, k) * U(i, j);
                t = -t / U(k, k);
                for (int i = k; i < m; ++i) U(i, j) += t * U(i, k);
            }
            for (int i = k; i < m; ++i) U(i, k) = -U(i, k);
            U(k, k) = 1.0 + U(k, k);
            for (int i = 0; i < k; ++i) U(i, k) = 0.0;
        } else {
            for (int i = 0; i < m; ++i) U(i, k) = 0.0;
            U(k, k) = 1.0;
        }
    }

    // Accumulate V.
    for (int k = n - 1; k >= 0; --k) {
        if (k < nrt && E(k) != 0.0) {
            for (int j = k + 1; j < nu; ++j) {
                double t = 0.0;
                for (int i = k + 1; i < n; ++i) t += V(i, k) * V(i, j);
                t = -t / V(k + 1, k);
                for (int i = k + 1; i < n; ++i) V(i, j) += t * V(i, k);
            }
        }
        for (int i = 0; i < n; ++i) V(i, k) = 0.0;
        V(k, k) = 1.0;
    }

    // Implicit-shift QR sweeps on the bidiagonal.
    const int pp = p - 1;
    const double eps = DBL_EPSILON;
    const double tiny = std::ldexp(1.0, -966);
    const std::size_t cap = 100 * static_cast<std::size_t>(std::max(nu, 1));
    std::size_t sweeps = 0;
    while (p > 0) {
        int k = 0;
        int kase = 0;
        for (k = p - 2; k >= 0; --k) {
            if (std::abs(E(k)) <= tiny + eps * (std::abs(S(k)) + std::abs(S(k + 1)))) {
                E(k) = 0.0;
                break;
            }
        }
        if (k == p - 2) {
            kase = 4;
        } else {
            int ks = 0;
            for (ks = p - 1; ks > k; --ks) {
                const double t = (ks != p ? std::abs(E(ks)) : 0.0) +
                                 (ks != k + 1 ? std::abs(E(ks - 1)) : 0.0);
                if (std::abs(S(ks)) <= tiny + eps * t) {
                    S(ks) = 0.0;
                    break;
                }
            }
            if (ks == k) {
                kase = 3;
            } else if (ks == p - 1) {
                kase = 1;
            } else {
                kase = 2;
                k = ks;
            }
        }
        ++k;

        switch (kase) {
            case 1: {  // deflate negligible s(p)
                double f = E(p - 2);
                E(p - 2) = 0.0;
                for (int j = p - 2; j >= k; --j) {
                    double t = std::hypot(S(j), f);
                    const double cs = S(j) / t;
                    const double sn = f / t;
                    S(j) = t;
                    if (j != k) {
                        f = -sn * E(j - 1);
                        E(j - 1) = cs * E(j - 1);
                    }
                    for (int i = 0; i < n; ++i) {
                        t = cs * V(i, j) + sn * V(i, p - 1);
                        V(i, p - 1) = -sn * V(i, j) + cs * V(i, p - 1);
                        V(i, j) = t;
                    }
                }
                break;
            }
            case 2: {  // split at negligible s(k)
                double f = E(k - 1);
                E(k - 1) = 0.0;
                for (int j = k; j < p; ++j) {
                    double t = std::hypot(S(j), f);
                    const double cs = S(j) / t;
                    const double sn = f / t;
                    S(j) = t;
                    f = -sn * E(j);
                    E(j) = cs * E(j);
                    for (int i = 0; i < m; ++i) {
                        t = cs * U(i, j) + sn * U(i, k - 1);
                        U(i, k - 1) = -sn * U(i, j) + cs * U(i, k - 1);
                        U(i, j) = t;
                    }
                }
                break;
            }
            case 3: {  // one QR sweep
                if (++sweeps > cap) {
                    throw ConvergenceError("svd: no convergence after " + std::to_string(cap) +
                                               " QR sweeps",
                                           sweeps, std::abs(E(p - 2)));
                }
                const double scale =
                    std::max({std::abs(S(p - 1)), std::abs(S(p - 2)), std::abs(E(p - 2)),
                              std::abs(S(k)), std::abs(E(k))});
                const double sp = S(p - 1) / scale;
                const double spm1 = S(p - 2) / scale;
                const double epm1 = E(p - 2) / scale;
                const double sk = S(k) / scale;
                const double ek = E(k) / scale;
                const double b = ((spm1 + sp) * (spm1 - sp) + epm1 * epm1) / 2.0;
                const double c = (sp * epm1) * (sp * epm1);
                double shift = 0.0;
                if (b != 0.0 || c != 0.0) {
                    shift = std::sqrt(b * b + c);
                    if (b < 0.0) shift = -shift;
                    shift = c / (b + shift);
                }
                double f = (sk + sp) * (sk - sp) + shift;
                double g = sk * ek;
                for (int j = k; j < p - 1; ++j) {
                    double t = std::hypot(f, g);
                    double cs = f / t;
                    double sn = g / t;
                    if (j != k) E(j - 1) = t;
                    f = cs * S(j) + sn * E(j);
                    E(j) = cs * E(j) - sn * S(j);
                    g = sn * S(j + 1);
                    S(j + 1) = cs * S(j + 1);
                    for (int i = 0; i < n; ++i) {
                        t = cs * V(i, j) + sn * V(i, j + 1);
                        V(i, j + 1) = -sn * V(i, j) + cs * V(i, j + 1);
                        V(i, j) = t;
                    }
                    t = std::hypot(f, g);
                    cs = f / t;
                    sn = g / t;
                    S(j) = t;
                    f = cs * E(j) + sn * S(j + 1);
                    S(j + 1) = -sn * E(j) + cs * S(j + 1);
                    g = sn * E(j + 1);
                    E(j + 1) = cs * E(j + 1);
                    if (j < m - 1) {
                        for (int i = 0; i < m; ++i) {
                            t = cs * U(i, j) + sn * U(i, j + 1);
                            U(i, j + 1) = -sn * U(i, j) + cs * U(i, j + 1);
                            U(i, j) = t;
                        }
                    }
                }
                E(p - 2) = f;
                break;
            }
            case 4: {  // convergence of s(k)
                if (S(k) <= 0.0) {
                    S(k) = S(k) < 0.0 ? -S(k) : 0.0;
                    for (int i = 0; i <= pp; ++i) V(i, k) = -V(i, k);
                }
                while (k < pp) {
                    if (S(k) >= S(k + 1)) break;
                    std::swap(S(k), S(k + 1));
                    if (k < n - 1) swap_columns(v, static_cast<std::size_t>(k), static_cast<std::size_t>(k + 1));
                    if (k < m - 1) swap_columns(u, static_cast<std::size_t>(k), static_cast<std::size_t>(k + 1));
                    ++k;
                }
                --p;
                break;
            }
            default:
                break;
        }
    }

    s.resize(static_cast<std::size_t>(nu));
    return SvdFactors{std::move(u), std::move(s), v.left_cols(static_cast<std::size_t>(nu))};
}

}  // namespace

QrFactors householder_qr(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m < n) {
        throw std::invalid_argument("householder_qr: requires rows >= cols, got " +
                                    std::to_string(m) + "x" + std::to_string(n));
    }
    Matrix w = a;
    std::vector<Reflector> reflectors(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double alpha = make_reflector(reflectors[j], j, column_tail(w, j, j));
        apply_left(w, reflectors[j], j + 1);
        w(j, j) = reflectors[j].beta == 0.0 ? w(j, j) : alpha;
        for (std::size_t i = j + 1; i < m; ++i) w(i, j) = 0.0;
    }
    QrFactors f{form_q(m, n, reflectors), w.block(0, 0, n, n), std::nullopt};
    normalize_qr_signs(f.q, f.r);
    return f;
}

QrFactors column_pivoted_qr(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const std::size_t r = std::min(m, n);
    Matrix w = a;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<Reflector> reflectors(r);

    for (std::size_t j = 0; j < r; ++j) {
        // Residual column norms are recomputed rather than downdated so that
        // the pivot choice never suffers from cancellation.
        std::size_t pivot = j;
        double best = -1.0;
        for (std::size_t c = j; c < n; ++c) {
            double ss = 0.0;
            for (std::size_t i = j; i < m; ++i) ss += w(i, c) * w(i, c);
            if (ss > best) {
                best = ss;
                pivot = c;
            }
        }
        swap_columns(w, j, pivot);
        std::swap(perm[j], perm[pivot]);

        const double alpha = make_reflector(reflectors[j], j, column_tail(w, j, j));
        apply_left(w, reflectors[j], j + 1);
        w(j, j) = reflectors[j].beta == 0.0 ? w(j, j) : alpha;
        for (std::size_t i = j + 1; i < m; ++i) w(i, j) = 0.0;
    }
    Matrix rmat = w.block(0, 0, r, n);
    QrFactors f{form_q(m, r, reflectors), std::move(rmat), std::move(perm)};
    normalize_qr_signs(f.q, f.r);
    return f;
}

SvdFactors svd(const Matrix& a) {
    SvdFactors f;
    if (a.rows() == 0 || a.cols() == 0) {
        return SvdFactors{Matrix(a.rows(), 0), Vector{}, Matrix(a.cols(), 0)};
    }
    if (a.rows() >= a.cols()) {
        f = svd_tall(a);
    } else {
        SvdFactors t = svd_tall(a.transpose());
        f = SvdFactors{std::move(t.v), std::move(t.s), std::move(t.u)};
    }
    normalize_svd_signs(f);
    return f;
}

EigFactors sym_eig(const Matrix& s) {
    const std::size_t n = s.rows();
    if (s.cols() != n) throw std::invalid_argument("sym_eig: matrix must be square");
    if (frobenius_norm(s - s.transpose()) > 1e-10) {
        throw std::invalid_argument("sym_eig: matrix is not symmetric");
    }
    Matrix t = s;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) t(i, j) = t(j, i) = 0.5 * (t(i, j) + t(j, i));
    Matrix z = Matrix::identity(n);

    // Tridiagonalize: T = Z^T S Z.
    for (std::size_t k = 0; k + 2 < n; ++k) {
        Reflector h;
        make_reflector(h, k + 1, column_tail(t, k, k + 1));
        apply_left(t, h, k);
        apply_right(t, h, k);
        apply_right(z, h, 0);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i > j + 1 || j > i + 1) t(i, j) = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) t(i, i + 1) = t(i + 1, i);

    // Implicit symmetric QR with Wilkinson shift; rotations touch only the
    // band around the active index, so T is kept dense for clarity.
    auto rotate = [&](std::size_t k, std::size_t lo, std::size_t hi, double c, double sn) {
        const std::size_t w0 = k > lo ? k - 1 : lo;
        const std::size_t w1 = std::min(hi, k + 2);
        for (std::size_t col = w0; col <= w1; ++col) {
            const double x = t(k, col);
            const double y = t(k + 1, col);
            t(k, col) = c * x + sn * y;
            t(k + 1, col) = -sn * x + c * y;
        }
        for (std::size_t row = w0; row <= w1; ++row) {
            const double x = t(row, k);
            const double y = t(row, k + 1);
            t(row, k) = c * x + sn * y;
            t(row, k + 1) = -sn * x + c * y;
        }
        for (std::size_t row = 0; row < n; ++row) {
            const double x = z(row, k);
            const double y = z(row, k + 1);
            z(row, k) = c * x + sn * y;
            z(row, k + 1) = -sn * x + c * y;
        }
    };

    const double eps = DBL_EPSILON;
    const double tiny = std::numeric_limits<double>::min();
    const std::size_t cap = 100 * std::max<std::size_t>(n, 1);
    std::size_t sweeps = 0;
    std::size_t hi = n == 0 ? 0 : n - 1;
    while (hi > 0) {
        for (std::size_t i = 0; i < hi; ++i) {
            if (std::abs(t(i + 1, i)) <= eps * (std::abs(t(i, i)) + std::abs(t(i + 1, i + 1))) + tiny) {
                t(i + 1, i) = 0.0;
                t(i, i + 1) = 0.0;
            }
        }
        while (hi > 0 && t(hi, hi - 1) == 0.0) --hi;
        if (hi == 0) break;
        std::size_t lo = hi - 1;
        while (lo > 0 && t(lo, lo - 1) != 0.0) --lo;

        if (++sweeps > cap) {
            throw ConvergenceError("sym_eig: no convergence after " + std::to_string(cap) +
                                       " QR sweeps",
                                   sweeps, std::abs(t(hi, hi - 1)));
        }
        const double a = t(hi - 1, hi - 1);
        const double b = t(hi, hi - 1);
        const double c = t(hi, hi);
        const double d = 0.5 * (a - c);
        const double denom = d + std::copysign(std::hypot(d, b), d == 0.0 ? 1.0 : d);
        const double mu = c - b * b / denom;

        double x = t(lo, lo) - mu;
        double y = t(lo + 1, lo);
        for (std::size_t k = lo; k < hi; ++k) {
            const double r = std::hypot(x, y);
            const double cs = r == 0.0 ? 1.0 : x / r;
            const double sn = r == 0.0 ? 0.0 : y / r;
            rotate(k, lo, hi, cs, sn);
            if (k + 1 < hi) {
                x = t(k + 1, k);
                y = t(k + 2, k);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return t(i, i) > t(j, j); });
    EigFactors f{Vector(n), z.select_columns(order)};
    for (std::size_t i = 0; i < n; ++i) f.values[i] = t(order[i], order[i]);
    for (std::size_t j = 0; j < n; ++j) {
        if (f.vectors(dominant_row(f.vectors, j), j) < 0.0) negate_column(f.vectors, j);
    }
    return f;
}

Matrix reconstruct(const SvdFactors& f) {
    Matrix us = f.u;
    for (std::size_t i = 0; i < us.rows(); ++i)
        for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= f.s[j];
    return matmul_nt(us, f.v);
}

Matrix reconstruct(const QrFactors& f) {
    Matrix qr = matmul(f.q, f.r);
    if (!f.perm) return qr;
    Matrix a(qr.rows(), qr.cols());
    for (std::size_t j = 0; j < qr.cols(); ++j)
        for (std::size_t i = 0; i < qr.rows(); ++i) a(i, (*f.perm)[j]) = qr(i, j);
    return a;
}

Vector back_substitute(const Matrix& r, std::span<const double> b) {
    const std::size_t n = r.rows();
    if (r.cols() != n || b.size() != n) throw std::invalid_argument("back_substitute: shape mismatch");
    Vector x(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= r(ii, j) * x[j];
        if (r(ii, ii) == 0.0) throw std::invalid_argument("back_substitute: singular triangular factor");
        x[ii] = acc / r(ii, ii);
    }
    return x;
}

}  // namespace randproj::linalg
