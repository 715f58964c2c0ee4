#pragma once

#include <variant>

#include "tcomp/tensor.hpp"
#include "tcomp/transform.hpp"
#include "tcomp/tsvd.hpp"

namespace tcomp {

// ---------------------------------------------------------------------------
// Convex combination over both lateral orientations

struct TrankPair {
    Index k1 = 1;  // A under M
    Index k2 = 1;  // A^P under B
};
struct EnergyPair {
    double gamma1 = 1.0;
    double gamma2 = 1.0;
};
using ConvexSpec = std::variant<TrankPair, EnergyPair>;

using SideRep = std::variant<TrankRep, TSvdmIIRep>;

Tensor3 reconstruct(const SideRep& side);
Index payload_scalars(const SideRep& side);

/// alpha * approx(A) + (1 - alpha) * approx(A^P)^P, both sides stored.
struct ConvexRep {
    double alpha = 1.0;
    SideRep primary;   // approximation of A under M (size n)
    SideRep permuted;  // approximation of A^P under B (size m)

    Index payload_scalars() const;
    Tensor3 reconstruct() const;
};

struct ConvexReport {
    double error = 0.0;           // ||A - A_alpha||_F
    double primary_error = 0.0;   // ||A - approx(A)||_F
    double permuted_error = 0.0;  // ||A^P - approx(A^P)||_F
    double bound = 0.0;           // alpha * primary + (1 - alpha) * permuted
};

struct ConvexResult {
    ConvexRep rep;
    Tensor3 approx;
    ConvexReport report;
};

/// tm sized n, tb sized m; 0 <= alpha <= 1.
ConvexResult convex_combo(const Tensor3& a, const Transform& tm, const Transform& tb, const ConvexSpec& spec,
                          double alpha);

// ---------------------------------------------------------------------------
// Sequential two-transform compression

struct SequentialRep {
    Transform tm;  // size n
    Transform tb;  // size k
    Tensor3 u;     // U_k,  m x k x n
    Tensor3 w;     // W_q,  n x q x k
    Tensor3 g;     // G,    q x p x k
    double stage1_discarded = 0.0;  // sum_{i>k} ||s_i||^2
    double stage2_discarded = 0.0;  // sum_{j>q} ||d_j||^2

    Index k() const { return u.cols(); }
    Index q() const { return w.cols(); }
    /// q p k + m k n + k q n.
    Index payload_scalars() const { return g.size() + u.size() + w.size(); }
    /// ||A - A_{k,q}||_F from the two stages' discarded tube energies.
    double predicted_error() const;
    Tensor3 reconstruct() const;
};

/// U_k from the t-SVDM of A under tm; C = U_k^H * A; C^P (n x p x k) is
/// truncated to q terms under tb; G = W_q^H * C^P.
/// 1 <= k <= min(m, p), 1 <= q <= min(n, p), tm.size() == n, tb.size() == k.
SequentialRep sequential_tsvdmb(const Tensor3& a, const Transform& tm, const Transform& tb, Index k, Index q);

/// U_k *M (W_q *B G)^P.
Tensor3 reconstruct_sequential(const SequentialRep& rep);

}  // namespace tcomp
