#include "tcomp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tcomp/mprod.hpp"

namespace tcomp {
namespace {

std::string dims_text(const Triple& k) {
    return "(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) + ")";
}

// Largest-magnitude entry of every column made positive; first index wins ties.
void fix_signs(MatR& u) {
    for (Index c = 0; c < u.cols(); ++c) {
        Index arg = 0;
        u.col(c).cwiseAbs().maxCoeff(&arg);
        if (u(arg, c) < 0.0) u.col(c) *= -1.0;
    }
}

MatR left_factor(const Tensor3& a, int mode) {
    const MatR x = unfold(a, mode);
    // the left singular vectors of X are the eigenvectors of X X^T; a full
    // SVD of the short-wide unfolding keeps every extent available
    Eigen::BDCSVD<MatR> svd(x, Eigen::ComputeFullU);
    MatR u = svd.matrixU();
    fix_signs(u);
    return u;
}

MatrixSvdRep truncated_from_svd(const Tensor3& a, MatrixOrientation o, const Eigen::BDCSVD<MatR>& svd, Index k) {
    MatrixSvdRep rep;
    rep.orientation = o;
    rep.dims = a.dims();
    rep.basis = svd.matrixU().leftCols(k);
    rep.coefficients = svd.singularValues().head(k).asDiagonal() * svd.matrixV().leftCols(k).transpose();
    return rep;
}

}  // namespace

std::string_view to_string(MatrixOrientation o) {
    return o == MatrixOrientation::lateral ? "lateral" : "frontal";
}

MatrixOrientation parse_matrix_orientation(std::string_view name) {
    if (name == "lateral") return MatrixOrientation::lateral;
    if (name == "frontal") return MatrixOrientation::frontal;
    throw std::invalid_argument("unknown matrix orientation '" + std::string(name) + "' (lateral, frontal)");
}

MatR arrange(const Tensor3& a, MatrixOrientation o) {
    const auto [m, p, n] = a.dims();
    if (o == MatrixOrientation::frontal) return Eigen::Map<const MatR>(a.data(), m * p, n);
    MatR mx(m * n, p);
    for (Index k = 0; k < n; ++k)
        for (Index j = 0; j < p; ++j)
            for (Index i = 0; i < m; ++i) mx(i + k * m, j) = a(i, j, k);
    return mx;
}

Tensor3 unarrange(const MatR& mx, MatrixOrientation o, const std::array<Index, 3>& dims) {
    const auto [m, p, n] = dims;
    Tensor3 a(m, p, n);
    if (o == MatrixOrientation::frontal) {
        if (mx.rows() != m * p || mx.cols() != n) throw DimensionError("unarrange: frontal matrix shape mismatch");
        std::copy(mx.data(), mx.data() + mx.size(), a.data());
        return a;
    }
    if (mx.rows() != m * n || mx.cols() != p) throw DimensionError("unarrange: lateral matrix shape mismatch");
    for (Index k = 0; k < n; ++k)
        for (Index j = 0; j < p; ++j)
            for (Index i = 0; i < m; ++i) a(i, j, k) = mx(i + k * m, j);
    return a;
}

Tensor3 MatrixSvdRep::reconstruct() const {
    return unarrange(MatR(basis * coefficients), orientation, dims);
}

MatrixSvdRep matrix_truncated_svd(const Tensor3& a, MatrixOrientation o, Index k) {
    const MatR mx = arrange(a, o);
    const Index slots = std::min(mx.rows(), mx.cols());
    if (k < 1 || k > slots)
        throw std::invalid_argument("matrix rank k=" + std::to_string(k) + " outside [1, " + std::to_string(slots) +
                                    "]");
    Eigen::BDCSVD<MatR> svd(mx, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return truncated_from_svd(a, o, svd, k);
}

MatrixSvdRep matrix_truncated_svd_energy(const Tensor3& a, MatrixOrientation o, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("gamma must lie in (0, 1], got " + std::to_string(gamma));
    const MatR mx = arrange(a, o);
    Eigen::BDCSVD<MatR> svd(mx, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd s2 = svd.singularValues().cwiseAbs2();
    const double total = s2.sum();
    Index k = 1;
    if (total > 0.0) {
        double running = 0.0;
        for (k = 0; k < s2.size();) {
            running += s2(k++);
            if (running / total >= gamma) break;
        }
    }
    return truncated_from_svd(a, o, svd, std::max<Index>(k, 1));
}

// ---------------------------------------------------------------------------

Tensor3 HosvdRep::reconstruct() const {
    return mode_multiply(mode_multiply(mode_multiply(core, 1, q), 2, w), 3, z);
}

HosvdRep hosvd(const Tensor3& a) {
    HosvdRep rep;
    rep.q = left_factor(a, 1);
    rep.w = left_factor(a, 2);
    rep.z = left_factor(a, 3);
    rep.core = mode_multiply(mode_multiply(mode_multiply(a, 1, MatR(rep.q.transpose())), 2, MatR(rep.w.transpose())),
                             3, MatR(rep.z.transpose()));
    return rep;
}

HosvdRep truncate(const HosvdRep& full, const Triple& k) {
    const auto d = full.dims();
    for (std::size_t i = 0; i < 3; ++i)
        if (k[i] < 1 || k[i] > d[i])
            throw std::invalid_argument("HOSVD triple " + dims_text(k) + " outside dims " + dims_text(d));
    HosvdRep rep;
    rep.q = full.q.leftCols(k[0]);
    rep.w = full.w.leftCols(k[1]);
    rep.z = full.z.leftCols(k[2]);
    // orthogonal factors: the projected core is the leading block of the full core
    rep.core = Tensor3(k[0], k[1], k[2]);
    for (Index c = 0; c < k[2]; ++c)
        for (Index b = 0; b < k[1]; ++b)
            for (Index r = 0; r < k[0]; ++r) rep.core(r, b, c) = full.core(r, b, c);
    return rep;
}

HosvdRep tr_hosvd(const Tensor3& a, const Triple& k) { return truncate(hosvd(a), k); }

Triple mode2_only_triple(const std::array<Index, 3>& dims, Index k2) { return {dims[0], k2, dims[2]}; }

Triple proportional_triple(const std::array<Index, 3>& dims, double ratio) {
    if (!(ratio > 0.0 && ratio <= 1.0)) throw std::invalid_argument("proportional ratio must lie in (0, 1]");
    Triple k;
    for (std::size_t i = 0; i < 3; ++i)
        k[i] = std::max<Index>(1, static_cast<Index>(std::floor(ratio * static_cast<double>(dims[i]))));
    return k;
}

Transform hosvd_mode3_transform(const Tensor3& a) { return Transform::from_matrix(left_factor(a, 3).transpose()); }

Tensor3 hosvd_as_mprod(const Tensor3& a, const Triple& k) {
    const HosvdRep full = hosvd(a);
    const auto [m, p, n] = a.dims();
    if (k[0] < 1 || k[0] > m || k[1] < 1 || k[1] > p || k[2] < 1 || k[2] > n)
        throw std::invalid_argument("HOSVD triple " + dims_text(k) + " outside dims " + dims_text(a.dims()));
    const Transform t = Transform::from_matrix(full.z.transpose());

    // replicated-face tensors are built in the transform domain and mapped back
    auto replicate = [&](const MatR& face) {
        Tensor3 hat(face.rows(), face.cols(), n);
        for (Index i = 0; i < n; ++i) hat.face(i) = face;
        return inverse(t, hat);
    };
    const Tensor3 qt = replicate(full.q.leftCols(k[0]));
    const Tensor3 wt = replicate(full.w.leftCols(k[1]).transpose());
    Tensor3 mask_hat(p, p, n);
    for (Index i = 0; i < k[2]; ++i) mask_hat.face(i).setIdentity();
    const Tensor3 mask = inverse(t, mask_hat);

    const Tensor3 c = mode_multiply(mode_multiply(a, 1, MatR(full.q.leftCols(k[0]).transpose())), 2,
                                    MatR(full.w.leftCols(k[1]).transpose()));
    return mprod_chain({qt, c, wt, mask}, t);
}

// ---------------------------------------------------------------------------

CpRep to_cp(const TSvdmIIRep& rep) {
    const auto [m, p, n] = rep.dims;
    const Transform& t = rep.transform;
    if (!t.is_scaled_unitary()) throw std::invalid_argument("to_cp requires a scaled-unitary transform");
    const double c = std::abs(t.scale());
    const MatC minv = t.inverse_matrix<cplx>();

    struct Term {
        double lambda;
        Index face, index;
        Eigen::VectorXcd u, v;
    };
    std::vector<Term> terms;
    CpRep cp;
    cp.dims = rep.dims;
    cp.complex_factors = t.is_complex();
    std::visit(
        [&](const auto& faces) {
            for (Index i = 0; i < n; ++i) {
                const auto& f = faces[static_cast<std::size_t>(i)];
                const Index r = rep.rho[static_cast<std::size_t>(i)];
                if (r == 0) cp.unused_faces.push_back(i);
                for (Index j = 0; j < r; ++j) {
                    // row j of G = sigma_j v_j^H, so v_j = conj(row) / sigma_j
                    const double sigma = f.g.row(j).norm();
                    Eigen::VectorXcd v = f.g.row(j).transpose().template cast<cplx>();
                    if (sigma > 0.0) v /= sigma;
                    terms.push_back({sigma / c, i, j, f.u.col(j).template cast<cplx>(), std::move(v)});
                }
            }
        },
        rep.faces);
    std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.lambda > y.lambda; });

    const Index r = static_cast<Index>(terms.size());
    cp.u.resize(m, r);
    cp.v.resize(p, r);
    cp.w.resize(n, r);
    cp.lambda.resize(r);
    for (Index q = 0; q < r; ++q) {
        const Term& term = terms[static_cast<std::size_t>(q)];
        cp.u.col(q) = term.u;
        cp.v.col(q) = term.v;
        cp.w.col(q) = c * minv.col(term.face);
        cp.lambda(q) = term.lambda;
        cp.face.push_back(term.face);
    }
    return cp;
}

CTensor3 reconstruct_cp(const CpRep& cp, Index terms) {
    const auto [m, p, n] = cp.dims;
    const Index r = terms < 0 ? cp.terms() : std::min(terms, cp.terms());
    CTensor3 out(m, p, n);
    for (Index q = 0; q < r; ++q) {
        // A(:,:,k) += lambda w(k) u v^T
        const MatC outer = cp.lambda(q) * cp.u.col(q) * cp.v.col(q).transpose();
        for (Index k = 0; k < n; ++k) out.face(k) += cp.w(k, q) * outer;
    }
    return out;
}

}  // namespace tcomp
