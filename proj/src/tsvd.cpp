#include "tcomp/tsvd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tcomp/mprod.hpp"

namespace tcomp {
namespace {

template <typename D>
FaceSvd<D> svd_of(const Mat<D>& x) {
    Eigen::BDCSVD<Mat<D>> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

BasicTensor3<double> leading_block(const Tensor3& a, Index rows, Index cols) {
    Tensor3 out(rows, cols, a.faces());
    for (Index k = 0; k < a.faces(); ++k) out.face(k) = a.face(k).topLeftCorner(rows, cols);
    return out;
}

struct Entry {
    double value;  // sigma^2
    Index face;
    Index index;
};

}  // namespace

template <typename D>
std::vector<FaceSvd<D>> facewise_svd(const BasicTensor3<D>& ahat, const Transform& t) {
    const Index n = ahat.faces();
    std::vector<FaceSvd<D>> out(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const Index partner = t.conjugate_partner(i);
        auto& slot = out[static_cast<std::size_t>(i)];
        if constexpr (is_complex_v<D>) {
            if (partner < i) {
                const auto& src = out[static_cast<std::size_t>(partner)];
                slot = {src.u.conjugate(), src.sigma, src.v.conjugate()};
                continue;
            }
            if (partner == i && t.is_complex()) {
                // self-conjugate face of a real input is real
                const MatR re = ahat.face(i).real();
                FaceSvd<double> r = svd_of<double>(re);
                slot = {r.u.template cast<cplx>(), r.sigma, r.v.template cast<cplx>()};
                continue;
            }
        }
        slot = svd_of<D>(Mat<D>(ahat.face(i)));
    }
    return out;
}

template std::vector<FaceSvd<double>> facewise_svd(const BasicTensor3<double>&, const Transform&);
template std::vector<FaceSvd<cplx>> facewise_svd(const BasicTensor3<cplx>&, const Transform&);

// ---------------------------------------------------------------------------
// t-SVDM

std::vector<double> TSvdmFactors::tube_norms() const {
    std::vector<double> out(static_cast<std::size_t>(face_sigma.rows()));
    const double c = std::abs(transform.scale());
    for (Index j = 0; j < face_sigma.rows(); ++j) out[static_cast<std::size_t>(j)] = face_sigma.row(j).norm() / c;
    return out;
}

Tensor3 TSvdmFactors::reconstruct() const {
    const Tensor3 vh = conj_transpose(v, transform);
    return mprod_chain({u, s, vh}, transform);
}

TSvdmFactors tsvdm(const Tensor3& a, const Transform& t) {
    if (t.size() != a.faces())
        throw DimensionError("tsvdm: transform size " + std::to_string(t.size()) + " != tube length " +
                             std::to_string(a.faces()));
    const Index m = a.rows(), p = a.cols(), n = a.faces();
    const Index k = std::min(m, p);
    return visit_domain(t, [&]<typename D>(std::type_identity<D>) {
        const BasicTensor3<D> ahat = forward<D>(t, a);
        const auto svds = facewise_svd(ahat, t);
        BasicTensor3<D> uhat(m, k, n), shat(k, k, n), vhat(p, k, n);
        MatR sigma(k, n);
        for (Index i = 0; i < n; ++i) {
            const auto& f = svds[static_cast<std::size_t>(i)];
            uhat.face(i) = f.u;
            vhat.face(i) = f.v;
            for (Index j = 0; j < k; ++j) shat(j, j, i) = D(f.sigma(j));
            sigma.col(i) = f.sigma;
        }
        return TSvdmFactors{real_part(inverse(t, uhat)), real_part(inverse(t, shat)),
                            real_part(inverse(t, vhat)), t, std::move(sigma)};
    });
}

TSvdmFactors truncate_trank(const TSvdmFactors& f, Index k) {
    const Index slots = f.rank_slots();
    if (k < 1 || k > slots)
        throw std::invalid_argument("truncate_trank: k=" + std::to_string(k) + " outside [1, " +
                                    std::to_string(slots) + "]");
    return TSvdmFactors{lateral_range(f.u, 0, k), leading_block(f.s, k, k), lateral_range(f.v, 0, k),
                        f.transform, f.face_sigma.topRows(k)};
}

double trank_truncation_error(const TSvdmFactors& f, Index k) {
    if (k < 0 || k > f.rank_slots()) throw std::invalid_argument("trank_truncation_error: k out of range");
    const double tail = f.face_sigma.bottomRows(f.rank_slots() - k).squaredNorm();
    return std::sqrt(tail) / std::abs(f.transform.scale());
}

Tensor3 TrankRep::reconstruct() const {
    if (u.cols() != c.rows() || u.faces() != c.faces() || u.faces() != transform.size())
        throw FormatError("corrupted t-rank representation: factor shapes disagree");
    return mprod(u, c, transform);
}

TrankRep compress_trank(const Tensor3& a, const Transform& t, Index k) {
    const TSvdmFactors f = truncate_trank(tsvdm(a, t), k);
    return TrankRep{t, f.u, mprod(f.s, conj_transpose(f.v, t), t)};
}

MultiRank multirank(const TSvdmFactors& f, double rel_tol) {
    MultiRank rho(static_cast<std::size_t>(f.face_sigma.cols()), 0);
    if (f.face_sigma.size() == 0) return rho;
    const double cutoff = rel_tol * f.face_sigma.maxCoeff();
    for (Index i = 0; i < f.face_sigma.cols(); ++i) {
        Index r = 0;
        for (Index j = 0; j < f.face_sigma.rows(); ++j)
            if (f.face_sigma(j, i) > cutoff) ++r;
        rho[static_cast<std::size_t>(i)] = r;
    }
    return rho;
}

Index trank(const TSvdmFactors& f, double rel_tol) {
    const MultiRank rho = multirank(f, rel_tol);
    return rho.empty() ? 0 : *std::max_element(rho.begin(), rho.end());
}

Index implicit_rank(const MultiRank& rho) { return std::accumulate(rho.begin(), rho.end(), Index{0}); }

// ---------------------------------------------------------------------------
// t-SVDMII

MultiRank select_multirank(const std::vector<Eigen::VectorXd>& face_sigma, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("gamma must lie in (0, 1], got " + std::to_string(gamma));
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < face_sigma.size(); ++i)
        for (Index j = 0; j < face_sigma[i].size(); ++j)
            entries.push_back({face_sigma[i](j) * face_sigma[i](j), static_cast<Index>(i), j});
    // descending value; ties by (face, index) so the order is deterministic
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.value != y.value) return x.value > y.value;
        if (x.face != y.face) return x.face < y.face;
        return x.index < y.index;
    });
    MultiRank rho(face_sigma.size(), 0);
    double total = 0.0;
    for (const Entry& e : entries) total += e.value;
    if (total <= 0.0) return rho;

    double running = 0.0;
    double threshold = 0.0;
    for (const Entry& e : entries) {
        running += e.value;
        if (running / total >= gamma) {
            threshold = e.value;
            break;
        }
    }
    for (std::size_t i = 0; i < face_sigma.size(); ++i) {
        Index r = 0;
        while (r < face_sigma[i].size() && face_sigma[i](r) * face_sigma[i](r) >= threshold &&
               face_sigma[i](r) > 0.0)
            ++r;
        rho[i] = r;
    }
    return rho;
}

Index TSvdmIIRep::payload_scalars() const { return implicit_rank() * (dims[0] + dims[1]); }

double TSvdmIIRep::predicted_error() const {
    return std::sqrt(std::max(discarded_energy, 0.0)) / std::abs(transform.scale());
}

Tensor3 TSvdmIIRep::reconstruct() const { return tcomp::reconstruct(*this); }

TSvdmIIRep tsvdm2(const Tensor3& a, const Transform& t, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("gamma must lie in (0, 1], got " + std::to_string(gamma));
    if (!t.is_scaled_unitary()) throw std::invalid_argument("tsvdm2 requires a scaled-unitary transform");
    if (t.size() != a.faces()) throw DimensionError("tsvdm2: transform size != tube length");

    TSvdmIIRep rep;
    rep.transform = t;
    rep.dims = a.dims();
    rep.gamma = gamma;
    rep.original_norm = frobenius_norm(a);

    visit_domain(t, [&]<typename D>(std::type_identity<D>) {
        const BasicTensor3<D> ahat = forward<D>(t, a);
        const auto svds = facewise_svd(ahat, t);
        std::vector<Eigen::VectorXd> sig;
        sig.reserve(svds.size());
        for (const auto& f : svds) sig.push_back(f.sigma);
        rep.rho = select_multirank(sig, gamma);

        std::vector<TruncatedFace<D>> faces(svds.size());
        double kept = 0.0, dropped = 0.0;
        for (std::size_t i = 0; i < svds.size(); ++i) {
            const Index r = rep.rho[i];
            const auto& f = svds[i];
            faces[i].u = f.u.leftCols(r);
            faces[i].g = f.sigma.head(r).asDiagonal() * f.v.leftCols(r).adjoint();
            kept += f.sigma.head(r).squaredNorm();
            dropped += f.sigma.tail(f.sigma.size() - r).squaredNorm();
        }
        rep.discarded_energy = dropped;
        rep.retained_energy = (kept + dropped) > 0.0 ? kept / (kept + dropped) : 1.0;
        rep.faces = std::move(faces);
    });
    return rep;
}

Tensor3 reconstruct(const TSvdmIIRep& rep) {
    const auto [m, p, n] = rep.dims;
    if (rep.transform.size() != n || static_cast<Index>(rep.rho.size()) != n)
        throw FormatError("corrupted t-SVDMII representation: face count inconsistent");
    return std::visit(
        [&](const auto& faces) -> Tensor3 {
            using D = typename std::decay_t<decltype(faces)>::value_type::Scalar_t;
            if (static_cast<Index>(faces.size()) != n)
                throw FormatError("corrupted t-SVDMII representation: face count inconsistent");
            BasicTensor3<D> ahat(m, p, n);
            for (Index i = 0; i < n; ++i) {
                const auto& f = faces[static_cast<std::size_t>(i)];
                const Index r = rep.rho[static_cast<std::size_t>(i)];
                if (r == 0) continue;
                if (f.u.rows() != m || f.u.cols() != r || f.g.rows() != r || f.g.cols() != p)
                    throw FormatError("corrupted t-SVDMII representation: face " + std::to_string(i) +
                                      " factor shapes disagree with rho/dims");
                ahat.face(i).noalias() = f.u * f.g;
            }
            if constexpr (!is_complex_v<D>) {
                if (rep.transform.is_complex())
                    throw FormatError("corrupted t-SVDMII representation: real faces for complex transform");
            }
            return real_part(inverse(rep.transform, ahat));
        },
        rep.faces);
}

// ---------------------------------------------------------------------------

DominatingEnergy dominating_energy(const Tensor3& a, const Transform& t, Index k) {
    const Index slots = std::min(a.rows(), a.cols());
    if (k < 1 || k > slots) throw std::invalid_argument("dominating_energy: k out of range");
    if (!t.is_scaled_unitary()) throw std::invalid_argument("dominating_energy requires a scaled-unitary transform");

    std::vector<Eigen::VectorXd> sig = visit_domain(t, [&]<typename D>(std::type_identity<D>) {
        const auto svds = facewise_svd(forward<D>(t, a), t);
        std::vector<Eigen::VectorXd> s;
        for (const auto& f : svds) s.push_back(f.sigma);
        return s;
    });
    const double c2 = t.scale() * t.scale();
    const Index n = a.faces();

    double total = 0.0, head = 0.0;
    std::vector<double> values;
    for (const auto& s : sig) {
        total += s.squaredNorm();
        head += s.head(k).squaredNorm();
        for (Index j = 0; j < s.size(); ++j) values.push_back(s(j) * s(j));
    }

    DominatingEnergy result;
    result.trank_implicit_rank = n * k;
    result.trank_error = std::sqrt(std::max(total - head, 0.0) / c2);
    if (total <= 0.0) return result;  // zero tensor: gamma = 1, nothing kept
    result.trank_energy = head / total;

    auto evaluate = [&](double gamma, Index& rank, double& err) {
        const MultiRank rho = select_multirank(sig, gamma);
        double dropped = 0.0;
        for (std::size_t i = 0; i < sig.size(); ++i)
            dropped += sig[i].tail(sig[i].size() - rho[i]).squaredNorm();
        rank = implicit_rank(rho);
        err = std::sqrt(dropped / c2);
    };

    // Candidates: A_k's retained energy mu, then every cumulative sorted-energy
    // fraction below it, descending; the first hit is the largest dominating
    // level not exceeding mu.
    std::sort(values.begin(), values.end(), std::greater<>());
    const double sorted_total = std::accumulate(values.begin(), values.end(), 0.0);
    std::vector<double> candidates{result.trank_energy};
    double running = 0.0;
    for (double v : values) {
        running += v;
        const double frac = running / sorted_total;
        if (frac > 0.0 && frac < result.trank_energy) candidates.push_back(frac);
    }
    std::sort(candidates.begin() + 1, candidates.end(), std::greater<>());

    for (double gamma : candidates) {
        gamma = std::min(gamma, 1.0);
        if (gamma <= 0.0) continue;
        Index rank = 0;
        double err = 0.0;
        evaluate(gamma, rank, err);
        if (rank <= result.trank_implicit_rank && err <= result.trank_error + 1e-10) {
            result.gamma = gamma;
            result.implicit_rank = rank;
            result.error = err;
            return result;
        }
    }
    // unreachable by the dominance theorem; report A_k's own energy level
    result.gamma = std::min(result.trank_energy, 1.0);
    evaluate(result.gamma, result.implicit_rank, result.error);
    return result;
}

}  // namespace tcomp
