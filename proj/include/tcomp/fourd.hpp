#pragma once

#include <array>
#include <variant>
#include <vector>

#include "tcomp/tensor.hpp"
#include "tcomp/transform.hpp"
#include "tcomp/tsvd.hpp"

namespace tcomp {

/// Kept singular triplets of one transform-domain face (i, j).
template <typename D>
struct TruncatedTriplets {
    using Scalar_t = D;
    Mat<D> u;               // m x rho
    Eigen::VectorXd sigma;  // rho
    Mat<D> v;               // p x rho
};

/// Fourth-order multi-rank truncation, kept in the transform domain.
/// Faces are indexed flat as i + j * n (i over mode 3, j over mode 4).
struct FourDRep {
    Transform tm;  // size n
    Transform tb;  // size q
    std::array<Index, 4> dims{0, 0, 0, 0};
    double gamma = 1.0;
    MultiRank rho;  // n * q
    double retained_energy = 0.0;
    double discarded_energy = 0.0;  // transform-domain sum of dropped sigma^2
    std::variant<std::vector<TruncatedTriplets<double>>, std::vector<TruncatedTriplets<cplx>>> faces;

    Index kept_triplets() const { return implicit_rank(rho); }
    /// sum over kept triplets of (m + p + 1).
    Index payload_scalars() const { return kept_triplets() * (dims[0] + dims[1] + 1); }
    double predicted_error() const;
    Tensor4 reconstruct() const;
};

FourDRep tsvdm2_4d(const Tensor4& a, const Transform& tm, const Transform& tb, double gamma);
Tensor4 reconstruct(const FourDRep& rep);

/// Splits every m0 x n0 image into an x-by-y grid of (m0/x) x (n0/y)
/// patches. Result is m x l x n x (x*y) with
/// A(r, image, c, a*y + b) = image(a*m + r, b*n + c): patches are scanned
/// row-major over the grid.
Tensor4 patchify(const std::vector<MatR>& images, Index x, Index y);
std::vector<MatR> unpatchify(const Tensor4& a, Index x, Index y, Index m0, Index n0);

}  // namespace tcomp
