#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace tcomp::simd {

using cplx = std::complex<double>;

// Inner loops of the mode-wise transforms and norm reductions. Each ISA
// provides one table; `active()` picks the widest one the CPU supports.
struct KernelTable {
    std::string_view name;
    // y += a * x
    void (*axpy_rr)(double a, const double* x, double* y, std::size_t n);
    void (*axpy_cc)(cplx a, const cplx* x, cplx* y, std::size_t n);
    void (*axpy_cr)(cplx a, const double* x, cplx* y, std::size_t n);
    // sum of x[i]^2
    double (*sum_squares)(const double* x, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the build has no AVX2 variant or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

// Widest supported table. TCOMP_SIMD=scalar in the environment forces the
// reference kernels.
const KernelTable& active();

inline void axpy(double a, const double* x, double* y, std::size_t n) {
    active().axpy_rr(a, x, y, n);
}
inline void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    active().axpy_cc(a, x, y, n);
}
inline void axpy(cplx a, const double* x, cplx* y, std::size_t n) {
    active().axpy_cr(a, x, y, n);
}
// Real coefficient on complex data reuses the real kernel on interleaved
// storage.
inline void axpy(double a, const cplx* x, cplx* y, std::size_t n) {
    active().axpy_rr(a, reinterpret_cast<const double*>(x), reinterpret_cast<double*>(y), 2 * n);
}

inline double sum_squares(const double* x, std::size_t n) { return active().sum_squares(x, n); }
inline double sum_squares(const cplx* x, std::size_t n) {
    return active().sum_squares(reinterpret_cast<const double*>(x), 2 * n);
}

}  // namespace tcomp::simd
