#include "tcomp/multiside.hpp"

#include <cmath>
#include <stdexcept>

#include "tcomp/mprod.hpp"

namespace tcomp {
namespace {

SideRep compress_side(const Tensor3& a, const Transform& t, Index k) { return compress_trank(a, t, k); }
SideRep compress_side(const Tensor3& a, const Transform& t, double gamma) { return tsvdm2(a, t, gamma); }

double tail_energy(const std::vector<double>& norms, Index keep) {
    double s = 0.0;
    for (std::size_t j = static_cast<std::size_t>(keep); j < norms.size(); ++j) s += norms[j] * norms[j];
    return s;
}

}  // namespace

Tensor3 reconstruct(const SideRep& side) {
    return std::visit([](const auto& r) { return r.reconstruct(); }, side);
}

Index payload_scalars(const SideRep& side) {
    return std::visit([](const auto& r) { return r.payload_scalars(); }, side);
}

Index ConvexRep::payload_scalars() const { return tcomp::payload_scalars(primary) + tcomp::payload_scalars(permuted); }

Tensor3 ConvexRep::reconstruct() const {
    const Tensor3 x = tcomp::reconstruct(primary);
    const Tensor3 y = permute_321(tcomp::reconstruct(permuted));
    if (x.dims() != y.dims()) throw FormatError("corrupted convex representation: side shapes disagree");
    return alpha * x + (1.0 - alpha) * y;
}

ConvexResult convex_combo(const Tensor3& a, const Transform& tm, const Transform& tb, const ConvexSpec& spec,
                          double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1], got " + std::to_string(alpha));
    if (tm.size() != a.faces()) throw DimensionError("convex_combo: M must match the third extent n");
    if (tb.size() != a.rows()) throw DimensionError("convex_combo: B must match the first extent m");

    const Tensor3 ap = permute_321(a);
    ConvexResult out;
    out.rep.alpha = alpha;
    std::visit(
        [&](const auto& s) {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, TrankPair>) {
                out.rep.primary = compress_side(a, tm, s.k1);
                out.rep.permuted = compress_side(ap, tb, s.k2);
            } else {
                out.rep.primary = compress_side(a, tm, s.gamma1);
                out.rep.permuted = compress_side(ap, tb, s.gamma2);
            }
        },
        spec);

    const Tensor3 x = reconstruct(out.rep.primary);
    const Tensor3 y = reconstruct(out.rep.permuted);
    out.approx = alpha * x + (1.0 - alpha) * permute_321(y);
    out.report.primary_error = frobenius_norm(a - x);
    out.report.permuted_error = frobenius_norm(ap - y);
    out.report.bound = alpha * out.report.primary_error + (1.0 - alpha) * out.report.permuted_error;
    out.report.error = frobenius_norm(a - out.approx);
    return out;
}

// ---------------------------------------------------------------------------

double SequentialRep::predicted_error() const {
    return std::sqrt(std::max(stage1_discarded + stage2_discarded, 0.0));
}

Tensor3 SequentialRep::reconstruct() const { return reconstruct_sequential(*this); }

SequentialRep sequential_tsvdmb(const Tensor3& a, const Transform& tm, const Transform& tb, Index k, Index q) {
    const auto [m, p, n] = a.dims();
    if (k < 1 || k > std::min(m, p))
        throw std::invalid_argument("sequential: k=" + std::to_string(k) + " outside [1, min(m,p)=" +
                                    std::to_string(std::min(m, p)) + "]");
    if (q < 1 || q > std::min(n, p))
        throw std::invalid_argument("sequential: q=" + std::to_string(q) + " outside [1, min(n,p)=" +
                                    std::to_string(std::min(n, p)) + "]");
    if (tm.size() != n) throw DimensionError("sequential: M must match the third extent n");
    if (tb.size() != k) throw DimensionError("sequential: B must have size k=" + std::to_string(k));
    if (!tm.is_scaled_unitary() || !tb.is_scaled_unitary())
        throw std::invalid_argument("sequential: both transforms must be scaled-unitary");

    const TSvdmFactors first = tsvdm(a, tm);
    SequentialRep rep;
    rep.tm = tm;
    rep.tb = tb;
    rep.u = lateral_range(first.u, 0, k);
    rep.stage1_discarded = tail_energy(first.tube_norms(), k);

    const Tensor3 cp = permute_321(mprod(conj_transpose(rep.u, tm), a, tm));  // n x p x k
    const TSvdmFactors second = tsvdm(cp, tb);
    rep.w = lateral_range(second.u, 0, q);
    rep.stage2_discarded = tail_energy(second.tube_norms(), q);
    rep.g = mprod(conj_transpose(rep.w, tb), cp, tb);
    return rep;
}

Tensor3 reconstruct_sequential(const SequentialRep& rep) {
    const Index k = rep.u.cols(), q = rep.w.cols();
    const Index n = rep.u.faces();
    if (rep.tm.size() != n || rep.tb.size() != k || rep.w.rows() != n || rep.w.faces() != k ||
        rep.g.rows() != q || rep.g.faces() != k)
        throw FormatError("corrupted sequential representation: factor shapes disagree");
    return mprod(rep.u, permute_321(mprod(rep.w, rep.g, rep.tb)), rep.tm);
}

}  // namespace tcomp
