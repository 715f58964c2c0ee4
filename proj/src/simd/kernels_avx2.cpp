// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "tcomp/simd/kernels.hpp"

namespace tcomp::simd {
namespace {

void axpy_rr(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d y0 = _mm256_loadu_pd(y + i);
        __m256d y1 = _mm256_loadu_pd(y + i + 4);
        y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
        y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), y1);
        _mm256_storeu_pd(y + i, y0);
        _mm256_storeu_pd(y + i + 4, y1);
    }
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

// Interleaved (re, im) pairs, two complex values per register.
void axpy_cc(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    const __m256d vr = _mm256_set1_pd(ar);
    const __m256d vi = _mm256_set1_pd(ai);
    const auto* xd = reinterpret_cast<const double*>(x);
    auto* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d vx = _mm256_loadu_pd(xd + 2 * i);           // xr0 xi0 xr1 xi1
        const __m256d swapped = _mm256_permute_pd(vx, 0b0101);    // xi0 xr0 xi1 xr1
        const __m256d t = _mm256_mul_pd(vi, swapped);             // ai*xi ai*xr
        // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
        const __m256d prod = _mm256_fmaddsub_pd(vr, vx, t);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
    }
    for (; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        yd[2 * i] += ar * xr - ai * xi;
        yd[2 * i + 1] += ar * xi + ai * xr;
    }
}

void axpy_cr(cplx a, const double* x, cplx* y, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    const __m256d coeff = _mm256_setr_pd(ar, ai, ar, ai);
    auto* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // x0 x0 x1 x1
        const __m256d vx = _mm256_setr_pd(x[i], x[i], x[i + 1], x[i + 1]);
        _mm256_storeu_pd(yd + 2 * i, _mm256_fmadd_pd(coeff, vx, _mm256_loadu_pd(yd + 2 * i)));
    }
    for (; i < n; ++i) {
        yd[2 * i] += ar * x[i];
        yd[2 * i + 1] += ai * x[i];
    }
}

double sum_squares_kernel(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d a = _mm256_loadu_pd(x + i);
        const __m256d b = _mm256_loadu_pd(x + i + 4);
        acc0 = _mm256_fmadd_pd(a, a, acc0);
        acc1 = _mm256_fmadd_pd(b, b, acc1);
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

}  // namespace

namespace detail {
const KernelTable& avx2_table() {
    static const KernelTable table{"avx2", axpy_rr, axpy_cc, axpy_cr, sum_squares_kernel};
    return table;
}
}  // namespace detail

}  // namespace tcomp::simd
