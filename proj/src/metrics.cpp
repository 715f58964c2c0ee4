#include "tcomp/metrics.hpp"

#include <cmath>
#include <limits>

namespace tcomp {
namespace {

// Floats for face i of an n-face transform-domain representation holding
// `scalars` values there.
Index face_floats(const Transform& t, Index face, Index scalars, bool conjsym) {
    if (!t.is_complex()) return scalars;
    if (!conjsym) return 2 * scalars;
    const Index partner = t.conjugate_partner(face);
    if (partner == face) return scalars;
    return partner > face ? 2 * scalars : 0;
}

double ratio_of(double num, double den) {
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

}  // namespace

StorageCount storage_count(const TSvdmIIRep& rep, bool conjsym) {
    StorageCount s;
    const Index mp = rep.dims[0] + rep.dims[1];
    for (Index i = 0; i < static_cast<Index>(rep.rho.size()); ++i)
        s.floats += face_floats(rep.transform, i, rep.rho[static_cast<std::size_t>(i)] * mp, conjsym);
    s.integers = static_cast<Index>(rep.rho.size());
    return s;
}

StorageCount storage_count(const TrankRep& rep) { return {rep.payload_scalars(), 0}; }
StorageCount storage_count(const MatrixSvdRep& rep) { return {rep.payload_scalars(), 0}; }
StorageCount storage_count(const HosvdRep& rep) { return {rep.payload_scalars(), 0}; }
StorageCount storage_count(const SequentialRep& rep) { return {rep.payload_scalars(), 0}; }

StorageCount storage_count(const ConvexRep& rep, bool conjsym) {
    auto side = [&](const SideRep& s) {
        return std::visit(
            [&](const auto& r) {
                if constexpr (std::is_same_v<std::decay_t<decltype(r)>, TSvdmIIRep>) return storage_count(r, conjsym);
                else return storage_count(r);
            },
            s);
    };
    const StorageCount a = side(rep.primary), b = side(rep.permuted);
    return {a.floats + b.floats, a.integers + b.integers};
}

StorageCount storage_count(const FourDRep& rep, bool conjsym) {
    StorageCount s;
    const auto [m, p, n, q] = rep.dims;
    const bool complex_domain = rep.tm.is_complex() || rep.tb.is_complex();
    for (Index j = 0; j < q; ++j)
        for (Index i = 0; i < n; ++i) {
            const Index flat = i + j * n;
            const Index r = rep.rho[static_cast<std::size_t>(flat)];
            const Index partner = rep.tm.conjugate_partner(i) + rep.tb.conjugate_partner(j) * n;
            // sigma is always real; u and v follow the face's domain
            Index per = m + p;
            if (complex_domain) {
                if (!conjsym) per = 2 * (m + p);
                else if (partner < flat) per = -1;
                else if (partner > flat) per = 2 * (m + p);
            }
            if (per >= 0) s.floats += r * (per + 1);
        }
    s.integers = n * q;
    return s;
}

StorageCount storage_count(const CpRep& rep) {
    // W is implicit: one pointer per term into the columns of M^{-1}
    const Index uv = rep.dims[0] + rep.dims[1];
    return {rep.terms() * ((rep.complex_factors ? 2 * uv : uv) + 1), rep.terms()};
}

double compression_ratio(Index original_floats, const StorageCount& s) {
    return ratio_of(static_cast<double>(original_floats), static_cast<double>(s.floats));
}

double relative_error(const Tensor3& a, const Tensor3& approx) {
    return ratio_of(frobenius_norm(a - approx), frobenius_norm(a));
}

double relative_error(const Tensor4& a, const Tensor4& approx) {
    return ratio_of(frobenius_norm(difference(a, approx)), frobenius_norm(a));
}

}  // namespace tcomp
