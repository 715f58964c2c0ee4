#include <gtest/gtest.h>

#include <vector>

#include "tcomp/random.hpp"
#include "tcomp/simd/kernels.hpp"

namespace tcomp::simd {
namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    NormalStream normal(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = normal();
    return v;
}

class KernelEquivalence : public ::testing::TestWithParam<std::size_t> {
protected:
    void SetUp() override {
        wide_ = avx2_kernels();
        if (wide_ == nullptr) GTEST_SKIP() << "no AVX2 kernels on this build/CPU";
    }
    const KernelTable* wide_ = nullptr;
};

TEST_P(KernelEquivalence, RealAxpy) {
    const std::size_t n = GetParam();
    const auto x = noise(n, 1);
    auto y_ref = noise(n, 2);
    auto y_simd = y_ref;
    scalar_kernels().axpy_rr(-0.37, x.data(), y_ref.data(), n);
    wide_->axpy_rr(-0.37, x.data(), y_simd.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y_ref[i], y_simd[i], 1e-14 * (1 + std::abs(y_ref[i])));
}

TEST_P(KernelEquivalence, ComplexAxpy) {
    const std::size_t n = GetParam();
    const auto xd = noise(2 * n, 3);
    const auto yd = noise(2 * n, 4);
    std::vector<cplx> x(n), y_ref(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = {xd[2 * i], xd[2 * i + 1]};
        y_ref[i] = {yd[2 * i], yd[2 * i + 1]};
    }
    auto y_simd = y_ref;
    const cplx a(0.6, -1.3);
    scalar_kernels().axpy_cc(a, x.data(), y_ref.data(), n);
    wide_->axpy_cc(a, x.data(), y_simd.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        // independent oracle: std::complex arithmetic
        EXPECT_NEAR(std::abs(y_ref[i] - y_simd[i]), 0.0, 1e-14 * (1 + std::abs(y_ref[i])));
    }
}

TEST_P(KernelEquivalence, MixedAxpy) {
    const std::size_t n = GetParam();
    const auto x = noise(n, 5);
    std::vector<cplx> y_ref(n, cplx(1.0, -2.0));
    auto y_simd = y_ref;
    const cplx a(-0.25, 0.75);
    scalar_kernels().axpy_cr(a, x.data(), y_ref.data(), n);
    wide_->axpy_cr(a, x.data(), y_simd.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(std::abs(y_ref[i] - y_simd[i]), 0.0, 1e-14 * (1 + std::abs(y_ref[i])));
}

TEST_P(KernelEquivalence, SumSquares) {
    const std::size_t n = GetParam();
    const auto x = noise(n, 6);
    const double ref = scalar_kernels().sum_squares(x.data(), n);
    EXPECT_NEAR(wide_->sum_squares(x.data(), n), ref, 1e-13 * (1 + ref));
}

// lengths straddle the 2-, 4- and 8-wide loop boundaries
INSTANTIATE_TEST_SUITE_P(Lengths, KernelEquivalence, ::testing::Values(0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 33, 1000));

TEST(Kernels, ScalarComplexAxpyMatchesStdComplex) {
    std::vector<cplx> x{{1, 2}, {-3, 0.5}, {0, -1}};
    std::vector<cplx> y{{0.5, 0.5}, {1, 1}, {2, -2}};
    auto expect = y;
    const cplx a(2.0, -1.0);
    for (std::size_t i = 0; i < x.size(); ++i) expect[i] += a * x[i];
    scalar_kernels().axpy_cc(a, x.data(), y.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(y[i], expect[i]);
}

TEST(Kernels, ActiveTableIsOneOfTheVariants) {
    const auto& t = active();
    EXPECT_TRUE(t.name == "scalar" || t.name == "avx2");
}

}  // namespace
}  // namespace tcomp::simd
