#pragma once

#include <array>
#include <variant>
#include <vector>

#include "tcomp/tensor.hpp"
#include "tcomp/transform.hpp"

namespace tcomp {

/// Singular values at or below this fraction of the largest transform-domain
/// singular value count as zero in rank computations.
inline constexpr double kRankTolerance = 1e-12;

/// Economy SVD of one transform-domain face.
template <typename D>
struct FaceSvd {
    Mat<D> u;               // m x r
    Eigen::VectorXd sigma;  // r, descending
    Mat<D> v;               // p x r
};

/// Per-face SVDs of Â = A x_3 M for a real spatial tensor A. Under the DFT
/// the SVDs are computed on one face of each conjugate pair and mirrored, so
/// paired faces carry identical singular values.
template <typename D>
std::vector<FaceSvd<D>> facewise_svd(const BasicTensor3<D>& ahat, const Transform& t);

extern template std::vector<FaceSvd<double>> facewise_svd(const BasicTensor3<double>&, const Transform&);
extern template std::vector<FaceSvd<cplx>> facewise_svd(const BasicTensor3<cplx>&, const Transform&);

/// Reduced t-SVDM, stored in the spatial domain.
struct TSvdmFactors {
    Tensor3 u;  // m x k x n
    Tensor3 s;  // k x k x n, f-diagonal
    Tensor3 v;  // p x k x n
    Transform transform;
    MatR face_sigma;  // k x n; column i holds the singular values of face i of Â

    Index rank_slots() const { return face_sigma.rows(); }
    /// ||s_j||_F for every singular tube, from the transform-domain values.
    std::vector<double> tube_norms() const;
    /// U * S * V^H.
    Tensor3 reconstruct() const;
};

TSvdmFactors tsvdm(const Tensor3& a, const Transform& t);

/// Keeps the first k singular tubes (1 <= k <= min(m, p)).
TSvdmFactors truncate_trank(const TSvdmFactors& f, Index k);

/// ||A - A_k||_F predicted from the discarded singular tubes.
double trank_truncation_error(const TSvdmFactors& f, Index k);

/// Stored t-rank-k truncation: basis U_k (m x k x n) and coefficients
/// C = S_k * V_k^H (k x p x n), both spatial.
struct TrankRep {
    Transform transform;
    Tensor3 u;
    Tensor3 c;

    Index k() const { return u.cols(); }
    /// k m n + k p n.
    Index payload_scalars() const { return u.size() + c.size(); }
    Tensor3 reconstruct() const;
};

TrankRep compress_trank(const Tensor3& a, const Transform& t, Index k);

using MultiRank = std::vector<Index>;

Index trank(const TSvdmFactors& f, double rel_tol = kRankTolerance);
MultiRank multirank(const TSvdmFactors& f, double rel_tol = kRankTolerance);
Index implicit_rank(const MultiRank& rho);

/// Truncated factors of one transform-domain face: u is m x rho_i,
/// g = S_rho V_rho^H is rho_i x p.
template <typename D>
struct TruncatedFace {
    using Scalar_t = D;
    Mat<D> u;
    Mat<D> g;
};

/// Multi-rank truncation kept in the transform domain.
struct TSvdmIIRep {
    Transform transform;
    std::array<Index, 3> dims{0, 0, 0};
    MultiRank rho;
    double gamma = 1.0;
    double original_norm = 0.0;
    double retained_energy = 0.0;  // fraction of ||Â||_F^2 kept
    double discarded_energy = 0.0; // transform-domain sum of dropped sigma^2
    std::variant<std::vector<TruncatedFace<double>>, std::vector<TruncatedFace<cplx>>> faces;

    Index implicit_rank() const { return tcomp::implicit_rank(rho); }
    /// sum_i rho_i (m + p) scalars.
    Index payload_scalars() const;
    /// ||A - A_rho||_F from the discarded-energy identity.
    double predicted_error() const;
    Tensor3 reconstruct() const;
};

/// Global energy selection shared by t-SVDMII and its helpers: given
/// per-face descending singular values, returns rho for energy fraction
/// gamma (ties at the threshold are all kept).
MultiRank select_multirank(const std::vector<Eigen::VectorXd>& face_sigma, double gamma);

TSvdmIIRep tsvdm2(const Tensor3& a, const Transform& t, double gamma);

Tensor3 reconstruct(const TSvdmIIRep& rep);

struct DominatingEnergy {
    double gamma = 1.0;
    Index implicit_rank = 0;        // of the t-SVDMII result
    double error = 0.0;             // ||A - A_rho||_F
    Index trank_implicit_rank = 0;  // n * k
    double trank_error = 0.0;       // ||A - A_k||_F
    double trank_energy = 1.0;      // ||A_k||_F^2 / ||A||_F^2
};

/// Largest energy level gamma <= ||A_k||^2/||A||^2 whose t-SVDMII
/// approximation is no larger (implicit rank) and no worse (error) than the
/// t-rank-k truncation.
DominatingEnergy dominating_energy(const Tensor3& a, const Transform& t, Index k);

}  // namespace tcomp
