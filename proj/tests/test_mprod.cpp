#include <gtest/gtest.h>

#include "tcomp/mprod.hpp"
#include "tcomp/tsvd.hpp"
#include "test_util.hpp"

namespace tcomp {
namespace {

using testing::all_transforms;
using testing::random_tensor;

Tensor3 tube(std::vector<double> v) {
    const Index n = static_cast<Index>(v.size());
    return Tensor3(1, 1, n, std::move(v));
}

TEST(Mprod, IdentityTensorIsNeutral) {
    for (const Transform& t : all_transforms(4)) {
        const Tensor3 a = random_tensor(3, 5, 4, 2);
        const Tensor3 left = mprod(identity_tensor(3, t), a, t);
        const Tensor3 right = mprod(a, identity_tensor(5, t), t);
        EXPECT_LT(relative_difference(left, a), 1e-12) << t.describe();
        EXPECT_LT(relative_difference(right, a), 1e-12) << t.describe();
    }
}

TEST(Mprod, IdentityTransformIsHadamardOnTubes) {
    const Transform t = Transform::make(TransformKind::identity, 3);
    const Tensor3 c = mprod(tube({1, 2, 3}), tube({4, 5, 6}), t);
    EXPECT_EQ(c, tube({4, 10, 18}));
}

TEST(Mprod, DftIsCircularConvolution) {
    const Transform t = Transform::make(TransformKind::dft_unnormalized, 3);
    // e_1 * v shifts v circularly by one
    const Tensor3 c = mprod(tube({0, 1, 0}), tube({1, 2, 3}), t);
    EXPECT_LT(max_abs_diff(c, tube({3, 1, 2})), 1e-14);

    // brute-force oracle: C(i,j,:) = sum_l A(i,l,:) (circ-conv) B(l,j,:)
    const Index m = 2, p = 3, r = 4, n = 5;
    const Transform t5 = Transform::make(TransformKind::dft_unnormalized, n);
    const Tensor3 a = random_tensor(m, p, n, 1), b = random_tensor(p, r, n, 2);
    Tensor3 oracle(m, r, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < r; ++j)
            for (Index k = 0; k < n; ++k) {
                double s = 0.0;
                for (Index l = 0; l < p; ++l)
                    for (Index q = 0; q < n; ++q) s += a(i, l, q) * b(l, j, (k - q + n) % n);
                oracle(i, j, k) = s;
            }
    EXPECT_LT(max_abs_diff(mprod(a, b, t5), oracle), 1e-12);
}

TEST(Mprod, Associative) {
    for (const Transform& t : all_transforms(4)) {
        const Tensor3 a = random_tensor(2, 3, 4, 1), b = random_tensor(3, 4, 4, 2), c = random_tensor(4, 2, 4, 3);
        const Tensor3 x = mprod(mprod(a, b, t), c, t);
        const Tensor3 y = mprod(a, mprod(b, c, t), t);
        EXPECT_LT(relative_difference(x, y), 1e-12) << t.describe();
        EXPECT_LT(relative_difference(mprod_chain({a, b, c}, t), x), 1e-12) << t.describe();
    }
}

TEST(Mprod, RejectsMismatchedShapes) {
    const Transform t = Transform::make(TransformKind::dct_orthogonal, 4);
    EXPECT_THROW(mprod(random_tensor(2, 3, 4, 1), random_tensor(2, 3, 4, 1), t), DimensionError);
    EXPECT_THROW(mprod(random_tensor(2, 3, 3, 1), random_tensor(3, 3, 3, 1), t), DimensionError);
}

TEST(ConjTranspose, InvolutionAndReversal) {
    for (const Transform& t : all_transforms(4)) {
        const Tensor3 a = random_tensor(2, 3, 4, 5), b = random_tensor(3, 5, 4, 6);
        EXPECT_LT(relative_difference(conj_transpose(conj_transpose(a, t), t), a), 1e-12) << t.describe();
        const Tensor3 lhs = conj_transpose(mprod(a, b, t), t);
        const Tensor3 rhs = mprod(conj_transpose(b, t), conj_transpose(a, t), t);
        EXPECT_LT(relative_difference(lhs, rhs), 1e-12) << t.describe();
    }
}

TEST(ConjTranspose, IdentityTransformTransposesFaces) {
    const Tensor3 a = random_tensor(2, 3, 4, 5);
    const Tensor3 ah = conj_transpose(a, Transform::make(TransformKind::identity, 4));
    for (Index k = 0; k < 4; ++k) EXPECT_EQ(MatR(ah.face(k)), MatR(a.face(k).transpose()));
}

TEST(ConjTranspose, DftReversesTubesAfterTheFirst) {
    // circulant convention: A^H(:,:,0) = A(:,:,0)^T, A^H(:,:,k) = A(:,:,n-k)^T
    const Tensor3 a = random_tensor(2, 3, 5, 7);
    const Tensor3 ah = conj_transpose(a, Transform::make(TransformKind::dft_unnormalized, 5));
    for (Index k = 0; k < 5; ++k)
        EXPECT_LT((MatR(ah.face(k)) - MatR(a.face((5 - k) % 5).transpose())).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(IdentityTensor, DftHasIdentityFirstFace) {
    const Tensor3 eye = identity_tensor(3, Transform::make(TransformKind::dft_unnormalized, 4));
    EXPECT_LT((MatR(eye.face(0)) - MatR::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-15);
    for (Index k = 1; k < 4; ++k) EXPECT_LT(MatR(eye.face(k)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(IsUnitary, Cases) {
    for (const Transform& t : all_transforms(4)) {
        EXPECT_TRUE(is_unitary(identity_tensor(3, t), t, 1e-12)) << t.describe();
        const TSvdmFactors f = tsvdm(random_tensor(4, 4, 4, 3), t);
        EXPECT_TRUE(is_unitary(f.u, t, 1e-10)) << t.describe();
        EXPECT_TRUE(is_unitary(f.v, t, 1e-10)) << t.describe();
        Tensor3 ones(3, 3, 4, std::vector<double>(36, 1.0));
        EXPECT_FALSE(is_unitary(ones, t, 1e-6)) << t.describe();
    }
    EXPECT_FALSE(is_unitary(random_tensor(2, 3, 4, 1), Transform::make(TransformKind::identity, 4), 1.0));
}

TEST(IsUnitary, PreservesNorm) {
    for (const Transform& t : all_transforms(8)) {
        const TSvdmFactors f = tsvdm(random_tensor(5, 5, 8, 10), t);
        const Tensor3 b = random_tensor(5, 3, 8, 11);
        EXPECT_NEAR(frobenius_norm(mprod(f.u, b, t)), frobenius_norm(b), 1e-10 * frobenius_norm(b))
            << t.describe();
    }
}

TEST(TubeAction, IdentityIsDiagonal) {
    const std::vector<double> v{2, -1, 3};
    const MatC r = tube_action_matrix(v, Transform::make(TransformKind::identity, 3));
    MatC expect = MatC::Zero(3, 3);
    for (Index k = 0; k < 3; ++k) expect(k, k) = v[static_cast<std::size_t>(k)];
    EXPECT_LT((r - expect).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TubeAction, DftIsCirculant) {
    const std::vector<double> v{1, 2, 3, 4};
    const MatC r = tube_action_matrix(v, Transform::make(TransformKind::dft_unnormalized, 4));
    // row-vector convention: (b R)(k) = sum_q b(q) v((k - q) mod n)
    for (Index q = 0; q < 4; ++q)
        for (Index k = 0; k < 4; ++k)
            EXPECT_LT(std::abs(r(q, k) - v[static_cast<std::size_t>((k - q + 4) % 4)]), 1e-12);
}

TEST(TubeAction, ActsOnLateralSlices) {
    for (const Transform& t : all_transforms(4)) {
        const Tensor3 b = random_tensor(3, 1, 4, 1);
        const Tensor3 v = random_tensor(1, 1, 4, 2);
        const MatC r = tube_action_matrix(v.values(), t);
        const MatC expect = squeeze(b).cast<cplx>() * r;
        const MatR got = squeeze(mprod(b, v, t));
        EXPECT_LT((got.cast<cplx>() - expect).cwiseAbs().maxCoeff(), 1e-12) << t.describe();
    }
}

TEST(Facewise, ProductMatchesSpatialProduct) {
    const Transform t = Transform::make(TransformKind::dct_orthogonal, 3);
    const Tensor3 a = random_tensor(2, 3, 3, 1), b = random_tensor(3, 2, 3, 2);
    const Tensor3 viafaces = inverse(t, facewise_product(forward<double>(t, a), forward<double>(t, b)));
    EXPECT_LT(relative_difference(viafaces, mprod(a, b, t)), 1e-14);
}

}  // namespace
}  // namespace tcomp
