#include "tcomp/synthetic.hpp"

#include <stdexcept>

#include "tcomp/mprod.hpp"
#include "tcomp/random.hpp"

namespace tcomp {
namespace {

MatR gaussian(NormalStream& normal, Index rows, Index cols) {
    MatR g(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) g(r, c) = normal();
    return g;
}

// Orthonormal columns (rows >= cols) from a Gaussian draw.
MatR orthonormal(NormalStream& normal, Index rows, Index cols) {
    const MatR g = gaussian(normal, rows, cols);
    return Eigen::HouseholderQR<MatR>(g).householderQ() * MatR::Identity(rows, cols);
}

Tensor3 gaussian_tensor(NormalStream& normal, Index m, Index p, Index n) {
    Tensor3 a(m, p, n);
    for (auto& v : a.values()) v = normal();
    return a;
}

}  // namespace

std::string_view to_string(SyntheticKind k) {
    switch (k) {
        case SyntheticKind::circulant_slices: return "circulant_slices";
        case SyntheticKind::random_dense: return "random_dense";
        case SyntheticKind::lowrank_plus_noise: return "lowrank_plus_noise";
    }
    return "unknown";
}

SyntheticKind parse_synthetic_kind(std::string_view name) {
    if (name == "circulant_slices") return SyntheticKind::circulant_slices;
    if (name == "random_dense") return SyntheticKind::random_dense;
    if (name == "lowrank_plus_noise") return SyntheticKind::lowrank_plus_noise;
    throw std::invalid_argument("unknown synthetic kind '" + std::string(name) +
                                "' (circulant_slices, random_dense, lowrank_plus_noise)");
}

Tensor3 gen_synthetic(SyntheticKind kind, const std::array<Index, 3>& dims, std::uint64_t seed,
                      const SyntheticOptions& opt) {
    const auto [m, p, n] = dims;
    if (m < 1 || p < 1 || n < 1) throw DimensionError("synthetic tensor extents must be positive");
    NormalStream normal(seed);
    Tensor3 a;
    double noise = opt.noise;
    switch (kind) {
        case SyntheticKind::circulant_slices: {
            if (p > n) throw DimensionError("circulant_slices requires p <= n");
            const MatR u = m >= n ? orthonormal(normal, m, n) : MatR(orthonormal(normal, n, m).transpose());
            const MatR c = orthonormal(normal, n, p);
            a = Tensor3(m, p, n);
            for (Index i = 0; i < p; ++i) {
                MatR circ(n, n);
                for (Index r = 0; r < n; ++r)
                    for (Index s = 0; s < n; ++s) circ(r, s) = c((r - s + n) % n, i);
                const MatR x = u * circ;
                for (Index k = 0; k < n; ++k)
                    for (Index r = 0; r < m; ++r) a(r, i, k) = x(r, k);
            }
            if (noise < 0.0) noise = 0.0;
            break;
        }
        case SyntheticKind::random_dense:
            a = gaussian_tensor(normal, m, p, n);
            if (noise < 0.0) noise = 0.0;
            break;
        case SyntheticKind::lowrank_plus_noise: {
            const Index r = opt.rank > 0 ? opt.rank : std::max<Index>(1, std::min(m, p) / 4);
            const Transform t = Transform::make(TransformKind::dct_orthogonal, n);
            const Tensor3 x = gaussian_tensor(normal, m, r, n);
            const Tensor3 y = gaussian_tensor(normal, r, p, n);
            a = mprod(x, y, t);
            if (noise < 0.0) noise = 0.01;
            break;
        }
    }
    if (noise > 0.0) {
        const Tensor3 g = gaussian_tensor(normal, m, p, n);
        a = a + (noise * frobenius_norm(a) / frobenius_norm(g)) * g;
    }
    return a;
}

}  // namespace tcomp
