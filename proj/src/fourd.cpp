#include "tcomp/fourd.hpp"

#include <cmath>
#include <stdexcept>

namespace tcomp {
namespace {

template <typename D>
TruncatedTriplets<D> full_svd(const Mat<D>& x) {
    Eigen::BDCSVD<Mat<D>> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

template <typename F>
decltype(auto) visit_domain4(const Transform& tm, const Transform& tb, F&& f) {
    if (tm.is_complex() || tb.is_complex()) return f(std::type_identity<cplx>{});
    return f(std::type_identity<double>{});
}

}  // namespace

double FourDRep::predicted_error() const {
    return std::sqrt(std::max(discarded_energy, 0.0)) / std::abs(tm.scale() * tb.scale());
}

Tensor4 FourDRep::reconstruct() const { return tcomp::reconstruct(*this); }

FourDRep tsvdm2_4d(const Tensor4& a, const Transform& tm, const Transform& tb, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("gamma must lie in (0, 1], got " + std::to_string(gamma));
    if (tm.size() != a.extent(3) || tb.size() != a.extent(4))
        throw DimensionError("tsvdm2_4d: transform sizes do not match modes 3 and 4");
    if (!tm.is_scaled_unitary() || !tb.is_scaled_unitary())
        throw std::invalid_argument("tsvdm2_4d requires scaled-unitary transforms");

    const auto [m, p, n, q] = a.dims();
    FourDRep rep;
    rep.tm = tm;
    rep.tb = tb;
    rep.dims = a.dims();
    rep.gamma = gamma;

    visit_domain4(tm, tb, [&]<typename D>(std::type_identity<D>) {
        const BasicTensor4<D> ahat = forward4<D>(tm, tb, a);
        const bool complex_domain = tm.is_complex() || tb.is_complex();
        std::vector<TruncatedTriplets<D>> svds(static_cast<std::size_t>(n * q));
        for (Index j = 0; j < q; ++j)
            for (Index i = 0; i < n; ++i) {
                const Index flat = i + j * n;
                const Index partner = tm.conjugate_partner(i) + tb.conjugate_partner(j) * n;
                auto& slot = svds[static_cast<std::size_t>(flat)];
                if constexpr (is_complex_v<D>) {
                    if (partner < flat) {
                        const auto& src = svds[static_cast<std::size_t>(partner)];
                        slot = {src.u.conjugate(), src.sigma, src.v.conjugate()};
                        continue;
                    }
                    if (partner == flat && complex_domain) {
                        const TruncatedTriplets<double> r = full_svd<double>(ahat.face(i, j).real());
                        slot = {r.u.template cast<cplx>(), r.sigma, r.v.template cast<cplx>()};
                        continue;
                    }
                }
                slot = full_svd<D>(Mat<D>(ahat.face(i, j)));
            }

        std::vector<Eigen::VectorXd> sig;
        sig.reserve(svds.size());
        for (const auto& f : svds) sig.push_back(f.sigma);
        // flat order i + j n gives the (j, i, index) tie-break
        rep.rho = select_multirank(sig, gamma);

        double kept = 0.0, dropped = 0.0;
        for (std::size_t f = 0; f < svds.size(); ++f) {
            auto& s = svds[f];
            const Index r = rep.rho[f];
            kept += s.sigma.head(r).squaredNorm();
            dropped += s.sigma.tail(s.sigma.size() - r).squaredNorm();
            s.u = s.u.leftCols(r).eval();
            s.v = s.v.leftCols(r).eval();
            s.sigma = s.sigma.head(r).eval();
        }
        rep.discarded_energy = dropped;
        rep.retained_energy = (kept + dropped) > 0.0 ? kept / (kept + dropped) : 1.0;
        rep.faces = std::move(svds);
    });
    return rep;
}

Tensor4 reconstruct(const FourDRep& rep) {
    const auto [m, p, n, q] = rep.dims;
    if (rep.tm.size() != n || rep.tb.size() != q || static_cast<Index>(rep.rho.size()) != n * q)
        throw FormatError("corrupted 4D representation: face count inconsistent");
    return std::visit(
        [&](const auto& faces) -> Tensor4 {
            using D = typename std::decay_t<decltype(faces)>::value_type::Scalar_t;
            if constexpr (!is_complex_v<D>) {
                if (rep.tm.is_complex() || rep.tb.is_complex())
                    throw FormatError("corrupted 4D representation: real faces for complex transform");
            }
            if (static_cast<Index>(faces.size()) != n * q)
                throw FormatError("corrupted 4D representation: face count inconsistent");
            BasicTensor4<D> ahat(m, p, n, q);
            for (Index j = 0; j < q; ++j)
                for (Index i = 0; i < n; ++i) {
                    const auto flat = static_cast<std::size_t>(i + j * n);
                    const auto& f = faces[flat];
                    const Index r = rep.rho[flat];
                    if (r == 0) continue;
                    if (f.u.rows() != m || f.u.cols() != r || f.v.rows() != p || f.v.cols() != r ||
                        f.sigma.size() != r)
                        throw FormatError("corrupted 4D representation: face " + std::to_string(flat) +
                                          " factor shapes disagree with rho/dims");
                    ahat.face(i, j).noalias() = f.u * f.sigma.asDiagonal() * f.v.adjoint();
                }
            return real_part(inverse4(rep.tm, rep.tb, ahat));
        },
        rep.faces);
}

// ---------------------------------------------------------------------------

Tensor4 patchify(const std::vector<MatR>& images, Index x, Index y) {
    if (images.empty()) throw std::invalid_argument("patchify: no images");
    if (x < 1 || y < 1) throw std::invalid_argument("patchify: patch grid counts must be positive");
    const Index m0 = images.front().rows(), n0 = images.front().cols();
    if (m0 % x != 0 || n0 % y != 0)
        throw DimensionError("patchify: " + std::to_string(m0) + "x" + std::to_string(n0) +
                             " images do not split into a " + std::to_string(x) + "x" + std::to_string(y) + " grid");
    const Index m = m0 / x, n = n0 / y, l = static_cast<Index>(images.size());
    Tensor4 out(m, l, n, x * y);
    for (Index img = 0; img < l; ++img) {
        const MatR& im = images[static_cast<std::size_t>(img)];
        if (im.rows() != m0 || im.cols() != n0) throw DimensionError("patchify: images differ in size");
        for (Index a = 0; a < x; ++a)
            for (Index b = 0; b < y; ++b)
                for (Index c = 0; c < n; ++c)
                    for (Index r = 0; r < m; ++r) out(r, img, c, a * y + b) = im(a * m + r, b * n + c);
    }
    return out;
}

std::vector<MatR> unpatchify(const Tensor4& t, Index x, Index y, Index m0, Index n0) {
    const auto [m, l, n, s] = t.dims();
    if (x < 1 || y < 1 || m * x != m0 || n * y != n0 || s != x * y)
        throw DimensionError("unpatchify: tensor shape does not match the patch grid and image size");
    std::vector<MatR> images(static_cast<std::size_t>(l), MatR(m0, n0));
    for (Index img = 0; img < l; ++img) {
        MatR& im = images[static_cast<std::size_t>(img)];
        for (Index a = 0; a < x; ++a)
            for (Index b = 0; b < y; ++b)
                for (Index c = 0; c < n; ++c)
                    for (Index r = 0; r < m; ++r) im(a * m + r, b * n + c) = t(r, img, c, a * y + b);
    }
    return images;
}

}  // namespace tcomp
