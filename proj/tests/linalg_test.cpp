#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "randproj/error.hpp"
#include "randproj/linalg/decompositions.hpp"
#include "randproj/linalg/matrix.hpp"
#include "randproj/linalg/random.hpp"
#include "test_util.hpp"

using namespace randproj::linalg;
using randproj::testing::random_rank_matrix;

namespace {

// Brute-force eigenvalues of a 2x2 symmetric matrix from its characteristic
// polynomial; independent of the tridiagonal QR path.
std::pair<double, double> eig2x2(double a, double b, double d) {
    const double mean = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
    return {mean + rad, mean - rad};
}

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
    Matrix g = gaussian_matrix(n, n, Seed{seed});
    return 0.5 * (g + g.transpose());
}

}  // namespace

TEST(Matrix, RejectsNonFiniteData) {
    EXPECT_THROW(Matrix(1, 2, std::vector<double>{1.0, NAN}), std::invalid_argument);
    EXPECT_THROW(Matrix(1, 2, std::vector<double>{1.0, INFINITY}), std::invalid_argument);
    EXPECT_THROW(Matrix(2, 2, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Matrix, ProductsAgree) {
    const Matrix a = gaussian_matrix(7, 5, Seed{1});
    const Matrix b = gaussian_matrix(5, 4, Seed{2});
    const Matrix c = gaussian_matrix(7, 4, Seed{3});
    EXPECT_LT(randproj::testing::max_abs_diff(matmul_tn(a, c), matmul(a.transpose(), c)), 1e-13);
    EXPECT_LT(randproj::testing::max_abs_diff(matmul_nt(b.transpose(), b.transpose()),
                                              matmul(b.transpose(), b)),
              1e-13);
    EXPECT_EQ(gram_rows(a), gram_rows(a).transpose());
}

TEST(GaussianMatrix, Deterministic) {
    EXPECT_EQ(gaussian_matrix(3, 3, Seed{42}), gaussian_matrix(3, 3, Seed{42}));
    EXPECT_NE(gaussian_matrix(3, 3, Seed{42}), gaussian_matrix(3, 3, Seed{43}));
}

TEST(GaussianMatrix, SampleMeanNearZero) {
    for (std::uint64_t seed : {1u, 7u, 99u}) {
        const Matrix g = gaussian_matrix(100, 100, Seed{seed});
        const double mean = std::accumulate(g.data().begin(), g.data().end(), 0.0) / 1e4;
        EXPECT_LT(std::abs(mean), 0.05);
    }
}

TEST(GaussianMatrix, SingleEntryFinite) {
    const Matrix g = gaussian_matrix(1, 1, Seed{5});
    EXPECT_TRUE(std::isfinite(g(0, 0)));
    EXPECT_THROW(gaussian_matrix(0, 3, Seed{5}), std::invalid_argument);
}

TEST(GaussianMatrix, UnitVariance) {
    const Matrix g = gaussian_matrix(200, 500, Seed{11});
    double ss = 0.0;
    for (double v : g.data()) ss += v * v;
    EXPECT_NEAR(ss / 1e5, 1.0, 0.02);
}

TEST(DeriveSeed, DistinctStreams) {
    EXPECT_NE(derive_seed(Seed{1}, 0), derive_seed(Seed{1}, 1));
    EXPECT_NE(derive_seed(Seed{1}, 0), derive_seed(Seed{2}, 0));
    EXPECT_EQ(derive_seed(Seed{1}, 5), derive_seed(Seed{1}, 5));
}

TEST(HouseholderQr, Identity) {
    const QrFactors f = householder_qr(Matrix::identity(3));
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(std::abs(f.q(i, i)), 1.0, 1e-15);
        EXPECT_NEAR(std::abs(f.r(i, i)), 1.0, 1e-15);
    }
    EXPECT_LT(frobenius_norm(reconstruct(f) - Matrix::identity(3)), 1e-15);
}

TEST(HouseholderQr, FirstColumnNorm) {
    const Matrix a = Matrix::from_rows({{3, 0}, {4, 0}, {0, 1}});
    const QrFactors f = householder_qr(a);
    EXPECT_NEAR(std::abs(f.r(0, 0)), 5.0, 1e-14);
    EXPECT_FALSE(f.perm.has_value());
}

TEST(HouseholderQr, RandomReconstruction) {
    const Matrix a = gaussian_matrix(50, 20, Seed{3});
    const QrFactors f = householder_qr(a);
    EXPECT_EQ(f.q.rows(), 50u);
    EXPECT_EQ(f.q.cols(), 20u);
    EXPECT_EQ(f.r.rows(), 20u);
    EXPECT_LT(frobenius_norm(a - reconstruct(f)) / frobenius_norm(a), 1e-12);
    EXPECT_LT(orthonormality_error(f.q), 1e-12);
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(f.r(i, j), 0.0);
}

TEST(HouseholderQr, RejectsWide) {
    EXPECT_THROW(householder_qr(Matrix(2, 3, 1.0)), std::invalid_argument);
}

TEST(HouseholderQr, SignConvention) {
    const QrFactors f = householder_qr(gaussian_matrix(12, 6, Seed{8}));
    for (std::size_t j = 0; j < 6; ++j) {
        double best = 0.0;
        for (std::size_t i = 0; i < 12; ++i)
            if (std::abs(f.q(i, j)) > std::abs(best)) best = f.q(i, j);
        EXPECT_GE(best, 0.0);
    }
}

TEST(PivotedQr, LargestColumnFirst) {
    Matrix a(4, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 10.0;
    a(2, 2) = 0.1;
    const QrFactors f = column_pivoted_qr(a);
    ASSERT_TRUE(f.perm.has_value());
    EXPECT_EQ((*f.perm)[0], 1u);
}

TEST(PivotedQr, IdentityExact) {
    const Matrix eye = Matrix::identity(5);
    const QrFactors f = column_pivoted_qr(eye);
    EXPECT_LT(frobenius_norm(reconstruct(f) - eye), 1e-15);
    std::vector<std::size_t> sorted = *f.perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(PivotedQr, RevealsRank) {
    const Matrix a = random_rank_matrix(30, 10, 2, 17);
    const QrFactors f = column_pivoted_qr(a);
    EXPECT_LT(std::abs(f.r(2, 2)), 1e-10);
    EXPECT_GT(std::abs(f.r(1, 1)), 1e-3);
    EXPECT_LT(frobenius_norm(a - reconstruct(f)), 1e-10 * frobenius_norm(a));
}

TEST(PivotedQr, DiagonalNonIncreasingAnyShape) {
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{20, 8}, {8, 20}, {9, 9}}) {
        const Matrix a = gaussian_matrix(m, n, Seed{m * 100 + n});
        const QrFactors f = column_pivoted_qr(a);
        EXPECT_LT(orthonormality_error(f.q), 1e-12);
        EXPECT_LT(frobenius_norm(a - reconstruct(f)), 1e-10 * frobenius_norm(a));
        for (std::size_t i = 1; i < std::min(m, n); ++i)
            EXPECT_LE(std::abs(f.r(i, i)), std::abs(f.r(i - 1, i - 1)) * (1 + 1e-14));
    }
}

TEST(Svd, Diagonal) {
    const std::vector<double> d{3.0, 2.0, 1.0};
    const SvdFactors f = svd(Matrix::diagonal(d));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(f.s[i], d[i], 1e-14);
}

TEST(Svd, UnsortedDiagonalIsSorted) {
    const std::vector<double> d{1.0, -5.0, 2.0, 0.0};
    const SvdFactors f = svd(Matrix::diagonal(d));
    EXPECT_NEAR(f.s[0], 5.0, 1e-14);
    EXPECT_NEAR(f.s[1], 2.0, 1e-14);
    EXPECT_NEAR(f.s[2], 1.0, 1e-14);
    EXPECT_NEAR(f.s[3], 0.0, 1e-14);
}

TEST(Svd, OuterProduct) {
    // ||u|| = 2, ||v|| = 3, so sigma_1 = 6 and the rest vanish.
    Matrix u(4, 1);
    u(0, 0) = 2.0;  // then rotate it a little
    u(1, 0) = 0.0;
    Matrix v(1, 3);
    v(0, 0) = 1.0;
    v(0, 1) = 2.0;
    v(0, 2) = 2.0;
    const SvdFactors f = svd(matmul(u, v));
    EXPECT_NEAR(f.s[0], 6.0, 1e-13);
    EXPECT_NEAR(f.s[1], 0.0, 1e-13);
    EXPECT_NEAR(f.s[2], 0.0, 1e-13);
}

TEST(Svd, ReconstructsTallAndWide) {
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{
             {1, 1}, {1, 5}, {5, 1}, {40, 15}, {15, 40}, {30, 30}}) {
        const Matrix a = gaussian_matrix(m, n, Seed{m * 31 + n});
        const SvdFactors f = svd(a);
        const std::size_t r = std::min(m, n);
        ASSERT_EQ(f.u.cols(), r);
        ASSERT_EQ(f.v.cols(), r);
        ASSERT_EQ(f.s.size(), r);
        EXPECT_LE(frobenius_norm(a - reconstruct(f)), 1e-10 * frobenius_norm(a));
        EXPECT_LT(orthonormality_error(f.u), 1e-12);
        EXPECT_LT(orthonormality_error(f.v), 1e-12);
        for (std::size_t i = 1; i < r; ++i) EXPECT_GE(f.s[i - 1], f.s[i]);
        for (double s : f.s) EXPECT_GE(s, 0.0);
    }
}

TEST(Svd, MatchesEigenvaluesOfGram) {
    // A^T A = V S^2 V^T, checked through the independent eigensolver.
    const Matrix a = gaussian_matrix(25, 12, Seed{77});
    const SvdFactors f = svd(a);
    const EigFactors e = sym_eig(matmul_tn(a, a));
    for (std::size_t i = 0; i < 12; ++i) EXPECT_NEAR(f.s[i], std::sqrt(e.values[i]), 1e-8);
}

TEST(Svd, RankDeficient) {
    const Matrix a = random_rank_matrix(20, 12, 4, 3);
    const SvdFactors f = svd(a);
    EXPECT_GT(f.s[3], 1e-3);
    for (std::size_t i = 4; i < 12; ++i) EXPECT_LT(f.s[i], 1e-12 * f.s[0]);
    EXPECT_LE(frobenius_norm(a - reconstruct(f)), 1e-10 * frobenius_norm(a));
    EXPECT_LT(orthonormality_error(f.u), 1e-12);
}

TEST(Svd, ReconstructionIsAFixedPoint) {
    const Matrix a = gaussian_matrix(18, 10, Seed{21});
    const SvdFactors f = svd(a);
    const SvdFactors g = svd(reconstruct(f));
    for (std::size_t i = 0; i < f.s.size(); ++i) EXPECT_NEAR(f.s[i], g.s[i], 1e-8);
}

TEST(Svd, ZeroMatrix) {
    const SvdFactors f = svd(Matrix(4, 3));
    for (double s : f.s) EXPECT_EQ(s, 0.0);
    EXPECT_LT(orthonormality_error(f.u), 1e-12);
}

TEST(Svd, EmptyMatrixHasRankZero) {
    for (const auto& [m, n] : {std::pair<std::size_t, std::size_t>{0, 0}, {3, 0}, {0, 3}}) {
        const SvdFactors f = svd(Matrix(m, n));
        EXPECT_TRUE(f.s.empty());
        EXPECT_EQ(f.u.rows(), m);
        EXPECT_EQ(f.v.rows(), n);
        EXPECT_EQ(f.u.cols(), 0u);
    }
    EXPECT_EQ(householder_qr(Matrix(3, 0)).q.cols(), 0u);
    EXPECT_TRUE(sym_eig(Matrix(0, 0)).values.empty());
}

TEST(SymEig, Diagonal) {
    const EigFactors f = sym_eig(Matrix::from_rows({{2, 0}, {0, 1}}));
    EXPECT_NEAR(f.values[0], 2.0, 1e-15);
    EXPECT_NEAR(f.values[1], 1.0, 1e-15);
}

TEST(SymEig, Swap) {
    const EigFactors f = sym_eig(Matrix::from_rows({{0, 1}, {1, 0}}));
    EXPECT_NEAR(f.values[0], 1.0, 1e-14);
    EXPECT_NEAR(f.values[1], -1.0, 1e-14);
}

TEST(SymEig, Identity) {
    const EigFactors f = sym_eig(Matrix::identity(5));
    for (double v : f.values) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(SymEig, MatchesCharacteristicPolynomial2x2) {
    const auto [hi, lo] = eig2x2(3.0, -1.5, 0.25);
    const EigFactors f = sym_eig(Matrix::from_rows({{3.0, -1.5}, {-1.5, 0.25}}));
    EXPECT_NEAR(f.values[0], hi, 1e-14);
    EXPECT_NEAR(f.values[1], lo, 1e-14);
}

TEST(SymEig, RejectsAsymmetric) {
    EXPECT_THROW(sym_eig(Matrix::from_rows({{1, 2}, {0, 1}})), std::invalid_argument);
}

TEST(SymEig, RandomSymmetricProperties) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t n = 3 + seed * 7;
        const Matrix s = random_symmetric(n, seed);
        const EigFactors f = sym_eig(s);
        EXPECT_LT(orthonormality_error(f.vectors), 1e-12);
        Matrix lhs = matmul(s, f.vectors);
        Matrix rhs = f.vectors;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rhs(i, j) *= f.values[j];
        EXPECT_LT(frobenius_norm(lhs - rhs), 1e-8);
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += s(i, i);
        EXPECT_NEAR(trace, std::accumulate(f.values.begin(), f.values.end(), 0.0), 1e-8);
        for (std::size_t i = 1; i < n; ++i) EXPECT_GE(f.values[i - 1], f.values[i]);
    }
}

TEST(SymEig, RepeatedEigenvalues) {
    // Q diag(2,2,2,-1,-1) Q^T for a random orthogonal Q.
    const QrFactors qr = householder_qr(gaussian_matrix(5, 5, Seed{4}));
    const std::vector<double> d{2, 2, 2, -1, -1};
    const Matrix s = matmul(matmul(qr.q, Matrix::diagonal(d)), qr.q.transpose());
    const Matrix sym = 0.5 * (s + s.transpose());
    const EigFactors f = sym_eig(sym);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(f.values[i], d[i], 1e-12);
}

TEST(FrobeniusNorm, Values) {
    EXPECT_NEAR(frobenius_norm(Matrix::identity(3)), std::sqrt(3.0), 1e-15);
    EXPECT_EQ(frobenius_norm(Matrix(3, 4)), 0.0);
    EXPECT_NEAR(frobenius_norm(Matrix::from_rows({{3, 4}})), 5.0, 1e-15);
}

TEST(BackSubstitute, SolvesUpperTriangular) {
    const Matrix r = Matrix::from_rows({{2, 1, -1}, {0, 3, 2}, {0, 0, 4}});
    const Vector x = back_substitute(r, std::vector<double>{1, 7, 8});
    EXPECT_NEAR(x[2], 2.0, 1e-15);
    EXPECT_NEAR(x[1], 1.0, 1e-15);
    EXPECT_NEAR(x[0], 1.0, 1e-15);
}
