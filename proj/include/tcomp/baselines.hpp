#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "tcomp/tensor.hpp"
#include "tcomp/transform.hpp"
#include "tcomp/tsvd.hpp"

namespace tcomp {

// ---------------------------------------------------------------------------
// Truncated matrix SVD of a flattened tensor

/// lateral: mn x p, row i + k*m, column j (each lateral slice is a column).
/// frontal: mp x n, row i + j*m, column k (each frontal slice is a column).
enum class MatrixOrientation : std::uint8_t { lateral = 0, frontal = 1 };

std::string_view to_string(MatrixOrientation o);
MatrixOrientation parse_matrix_orientation(std::string_view name);

MatR arrange(const Tensor3& a, MatrixOrientation o);
Tensor3 unarrange(const MatR& mx, MatrixOrientation o, const std::array<Index, 3>& dims);

struct MatrixSvdRep {
    MatrixOrientation orientation = MatrixOrientation::lateral;
    std::array<Index, 3> dims{0, 0, 0};
    MatR basis;         // rows x k
    MatR coefficients;  // k x cols, S_k V_k^T

    Index k() const { return basis.cols(); }
    /// k (rows + cols).
    Index payload_scalars() const { return basis.size() + coefficients.size(); }
    Tensor3 reconstruct() const;
};

/// Best rank-k approximation; 1 <= k <= min(rows, cols).
MatrixSvdRep matrix_truncated_svd(const Tensor3& a, MatrixOrientation o, Index k);
/// Smallest k whose retained energy is at least gamma.
MatrixSvdRep matrix_truncated_svd_energy(const Tensor3& a, MatrixOrientation o, double gamma);

// ---------------------------------------------------------------------------
// HOSVD / truncated HOSVD

using Triple = std::array<Index, 3>;

struct HosvdRep {
    Tensor3 core;  // k1 x k2 x k3
    MatR q;        // m x k1
    MatR w;        // p x k2
    MatR z;        // n x k3

    Triple triple() const { return core.dims(); }
    std::array<Index, 3> dims() const { return {q.rows(), w.rows(), z.rows()}; }
    /// k1 k2 k3 + m k1 + p k2 + n k3.
    Index payload_scalars() const { return core.size() + q.size() + w.size() + z.size(); }
    Tensor3 reconstruct() const;
};

/// Full HOSVD: square orthogonal factors, core = A x1 Q^T x2 W^T x3 Z^T.
/// Factor columns are left singular vectors of the unfoldings, signed so the
/// largest-magnitude entry of each column is positive.
HosvdRep hosvd(const Tensor3& a);
/// Leading (k1, k2, k3) columns with the projected core; 1 <= k_d <= extent d.
HosvdRep tr_hosvd(const Tensor3& a, const Triple& k);
HosvdRep truncate(const HosvdRep& full, const Triple& k);

/// (m, k2, n): compress the second mode only.
Triple mode2_only_triple(const std::array<Index, 3>& dims, Index k2);
/// max(1, floor(ratio * extent)) per mode.
Triple proportional_triple(const std::array<Index, 3>& dims, double ratio);

/// Transform M = Z^T from the full mode-3 HOSVD factor.
Transform hosvd_mode3_transform(const Tensor3& a);

/// tr-HOSVD rebuilt as a *M product under M = Z^T:
/// Q_{k1} * C * W_{k2}^T * P with replicated-face Q, W and a face mask P.
Tensor3 hosvd_as_mprod(const Tensor3& a, const Triple& k);

// ---------------------------------------------------------------------------
// CP export of a t-SVDMII representation

struct CpRep {
    std::array<Index, 3> dims{0, 0, 0};
    MatC u;                    // m x r, unit columns
    MatC v;                    // p x r, unit columns
    MatC w;                    // n x r, unit columns, |c| M^{-1}(:, face)
    Eigen::VectorXd lambda;    // r, descending
    std::vector<Index> face;   // r; column of M^{-1} each term uses
    std::vector<Index> unused_faces;  // faces with rho_i = 0
    bool complex_factors = false;     // u, v genuinely complex (DFT)

    Index terms() const { return lambda.size(); }
};

CpRep to_cp(const TSvdmIIRep& rep);
/// Sum of the leading `terms` rank-one terms (all when terms < 0). Complex
/// because a cut can split a conjugate pair.
CTensor3 reconstruct_cp(const CpRep& cp, Index terms = -1);

}  // namespace tcomp
