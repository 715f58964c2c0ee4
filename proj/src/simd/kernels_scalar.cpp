#include "tcomp/simd/kernels.hpp"

namespace tcomp::simd {
namespace {

void axpy_rr(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_cc(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    auto* yd = reinterpret_cast<double*>(y);
    const auto* xd = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = xd[2 * i], xi = xd[2 * i + 1];
        yd[2 * i] += ar * xr - ai * xi;
        yd[2 * i + 1] += ar * xi + ai * xr;
    }
}

void axpy_cr(cplx a, const double* x, cplx* y, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    auto* yd = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        yd[2 * i] += ar * x[i];
        yd[2 * i + 1] += ai * x[i];
    }
}

double sum_squares_kernel(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", axpy_rr, axpy_cc, axpy_cr, sum_squares_kernel};
    return table;
}

}  // namespace tcomp::simd
