#include <gtest/gtest.h>

#include <cmath>

#include "tcomp/tensor.hpp"
#include "test_util.hpp"

namespace tcomp {
namespace {

using testing::random_matrix;
using testing::random_tensor;
using testing::worked_example;

TEST(FrobeniusNorm, Examples) {
    EXPECT_EQ(frobenius_norm(Tensor3(2, 2, 2)), 0.0);
    // direct summation: 1 + 1 + 1 + 16 + 9 = 28
    EXPECT_NEAR(frobenius_norm(worked_example()), std::sqrt(28.0), 1e-15);
    Tensor3 ones(3, 4, 5, std::vector<double>(60, 1.0));
    EXPECT_NEAR(frobenius_norm(ones), std::sqrt(60.0), 1e-14);
}

TEST(FrobeniusNorm, MatchesSquaredModulusSum) {
    CTensor3 a(2, 3, 2);
    double expect = 0.0;
    for (Index t = 0; t < a.size(); ++t) {
        a.data()[t] = cplx(0.5 * t, -1.0 + t);
        expect += std::norm(a.data()[t]);
    }
    EXPECT_NEAR(frobenius_norm(a), std::sqrt(expect), 1e-12);
}

TEST(Unfold, TubeModeThree) {
    Tensor3 tube(1, 1, 4, {1.0, 2.0, 3.0, 4.0});
    const MatR u = unfold(tube, 3);
    ASSERT_EQ(u.rows(), 4);
    ASSERT_EQ(u.cols(), 1);
    for (Index k = 0; k < 4; ++k) EXPECT_EQ(u(k, 0), k + 1.0);
}

TEST(Unfold, WorkedExampleModeOne) {
    MatR expect(2, 4);
    expect << 1, 1, 0, 0, 1, 4, 0, -3;
    EXPECT_EQ(unfold(worked_example(), 1), expect);
}

TEST(Unfold, IndexWalkOracle) {
    const Tensor3 a = random_tensor(3, 4, 2, 5);
    const MatR u1 = unfold(a, 1), u2 = unfold(a, 2), u3 = unfold(a, 3);
    ASSERT_EQ(u2.rows(), 4);
    ASSERT_EQ(u2.cols(), 6);
    ASSERT_EQ(u3.rows(), 2);
    ASSERT_EQ(u3.cols(), 12);
    for (Index k = 0; k < 2; ++k)
        for (Index j = 0; j < 4; ++j)
            for (Index i = 0; i < 3; ++i) {
                EXPECT_EQ(u1(i, j + 4 * k), a(i, j, k));
                EXPECT_EQ(u2(j, i + 3 * k), a(i, j, k));
                EXPECT_EQ(u3(k, i + 3 * j), a(i, j, k));
            }
}

TEST(Fold, InvertsUnfoldExactly) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Tensor3 a = random_tensor(3, 4, 2, seed);
        for (int mode = 1; mode <= 3; ++mode) EXPECT_EQ(fold(unfold(a, mode), mode, a.dims()), a);
    }
}

TEST(Fold, ReproducesWorkedExample) {
    MatR mx(2, 4);
    mx << 1, 1, 0, 0, 1, 4, 0, -3;
    EXPECT_EQ(fold(mx, 1, {2, 2, 2}), worked_example());
}

TEST(Fold, RejectsShapeMismatch) {
    EXPECT_THROW(fold(MatR::Zero(3, 5), 1, {2, 2, 2}), DimensionError);
    EXPECT_THROW(unfold(worked_example(), 4), DimensionError);
}

TEST(Twist, IdentityMatrix) {
    const Tensor3 t = twist(MatR::Identity(2, 2));
    ASSERT_EQ(t.dims(), (std::array<Index, 3>{2, 1, 2}));
    EXPECT_EQ(t(0, 0, 0), 1.0);
    EXPECT_EQ(t(0, 0, 1), 0.0);
    EXPECT_EQ(t(1, 0, 0), 0.0);
    EXPECT_EQ(t(1, 0, 1), 1.0);
}

TEST(Twist, SqueezeRoundTrip) {
    const MatR x = random_matrix(5, 7, 3);
    EXPECT_EQ(squeeze(twist(x)), x);
    EXPECT_THROW(squeeze(Tensor3(3, 2, 4)), DimensionError);
}

TEST(Permute, Basics) {
    Tensor3 one(1, 1, 1, {4.2});
    EXPECT_EQ(permute_321(one), one);
    const Tensor3 a = random_tensor(4, 3, 5, 9);
    const Tensor3 ap = permute_321(a);
    ASSERT_EQ(ap.dims(), (std::array<Index, 3>{5, 3, 4}));
    EXPECT_EQ(permute_321(ap), a);
    EXPECT_NEAR(frobenius_norm(ap), frobenius_norm(a), 1e-12 * frobenius_norm(a));
}

TEST(Permute, ModeOneUnfoldingIsStridePermutation) {
    // The mn x p lateral arrangement of A^P is a fixed row permutation of
    // that of A: row i + k*m of A maps to row k + i*n of A^P.
    const Index m = 4, p = 3, n = 5;
    const Tensor3 a = random_tensor(m, p, n, 21);
    const Tensor3 ap = permute_321(a);
    for (Index j = 0; j < p; ++j)
        for (Index i = 0; i < m; ++i)
            for (Index k = 0; k < n; ++k) {
                const double lhs = ap.data()[k + n * (j + p * i)];  // A^P(k, j, i)
                EXPECT_EQ(lhs, a.data()[i + m * (j + p * k)]);
            }
    // so singular values of the two arrangements agree
    auto arrange = [](const Tensor3& t) {
        MatR mx(t.rows() * t.faces(), t.cols());
        for (Index j = 0; j < t.cols(); ++j)
            for (Index k = 0; k < t.faces(); ++k)
                for (Index i = 0; i < t.rows(); ++i) mx(i + k * t.rows(), j) = t(i, j, k);
        return mx;
    };
    const Eigen::VectorXd s1 = Eigen::JacobiSVD<MatR>(arrange(a)).singularValues();
    const Eigen::VectorXd s2 = Eigen::JacobiSVD<MatR>(arrange(ap)).singularValues();
    EXPECT_LT((s1 - s2).norm(), 1e-12 * s1.norm());
}

TEST(ModeMultiply, IdentityIsNoOp) {
    const Tensor3 a = random_tensor(3, 2, 4, 1);
    EXPECT_EQ(mode_multiply(a, 3, MatR(MatR::Identity(4, 4))), a);
}

TEST(ModeMultiply, WorkedExampleButterfly) {
    MatR f(2, 2);
    f << 1, 1, 1, -1;
    const Tensor3 hat = mode_multiply(worked_example(), 3, f);
    MatR f1(2, 2), f2(2, 2);
    f1 << 1, 1, 1, 1;
    f2 << 1, 1, 1, 7;
    EXPECT_EQ(MatR(hat.face(0)), f1);
    EXPECT_EQ(MatR(hat.face(1)), f2);
}

TEST(ModeMultiply, MatchesUnfoldingDefinition) {
    const Tensor3 a = random_tensor(3, 4, 5, 2);
    for (int mode = 1; mode <= 3; ++mode) {
        const MatR mx = random_matrix(6, a.extent(mode), 30 + mode);
        std::array<Index, 3> dims = a.dims();
        dims[static_cast<std::size_t>(mode - 1)] = 6;
        const Tensor3 oracle = fold(MatR(mx * unfold(a, mode)), mode, dims);
        const Tensor3 got = mode_multiply(a, mode, mx);
        EXPECT_LT(max_abs_diff(got, oracle), 1e-12) << "mode " << mode;
    }
    EXPECT_THROW(mode_multiply(a, 3, MatR(MatR::Identity(4, 4))), DimensionError);
}

TEST(ModeMultiply, ComplexMatrixOnRealTensor) {
    const Tensor3 a = random_tensor(2, 3, 3, 8);
    MatC mx(3, 3);
    for (Index r = 0; r < 3; ++r)
        for (Index c = 0; c < 3; ++c) mx(r, c) = cplx(r + 1.0, c - 1.0);
    const CTensor3 got = mode_multiply(a, 3, mx);
    const MatC oracle = mx * unfold(a, 3).cast<cplx>();
    EXPECT_LT((unfold(got, 3) - oracle).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ModeMultiply, InverseRoundTrip) {
    const Tensor3 a = random_tensor(4, 3, 5, 77);
    const MatR g = random_matrix(5, 5, 78) + 5.0 * MatR::Identity(5, 5);
    const MatR ginv = g.inverse();
    const Tensor3 back = mode_multiply(mode_multiply(a, 3, g), 3, ginv);
    EXPECT_LT(relative_difference(back, a), 1e-12);
}

TEST(ModeMultiply, FourthOrderModesCommute) {
    const Tensor4 a = testing::random_tensor4(2, 3, 4, 2, 3);
    const MatR m3 = random_matrix(4, 4, 4), m4 = random_matrix(2, 2, 5);
    const Tensor4 x = mode_multiply(mode_multiply(a, 3, m3), 4, m4);
    const Tensor4 y = mode_multiply(mode_multiply(a, 4, m4), 3, m3);
    // oracle: explicit index sums
    for (Index l = 0; l < 2; ++l)
        for (Index k = 0; k < 4; ++k)
            for (Index j = 0; j < 3; ++j)
                for (Index i = 0; i < 2; ++i) {
                    double s = 0.0;
                    for (Index kk = 0; kk < 4; ++kk)
                        for (Index ll = 0; ll < 2; ++ll) s += m3(k, kk) * m4(l, ll) * a(i, j, kk, ll);
                    EXPECT_NEAR(x(i, j, k, l), s, 1e-12);
                    EXPECT_NEAR(y(i, j, k, l), s, 1e-12);
                }
}

TEST(ModeMultiply, NormInvariantUnderOrthogonalAndUnfolding) {
    const Tensor3 a = random_tensor(5, 4, 3, 12);
    const double na = frobenius_norm(a);
    for (int mode = 1; mode <= 3; ++mode) EXPECT_NEAR(unfold(a, mode).norm(), na, 1e-12 * na);
}

}  // namespace
}  // namespace tcomp
