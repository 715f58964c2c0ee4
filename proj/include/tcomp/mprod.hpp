#pragma once

#include <functional>
#include <initializer_list>
#include <span>

#include "tcomp/tensor.hpp"
#include "tcomp/transform.hpp"

namespace tcomp {

// ---------------------------------------------------------------------------
// Transform-domain (facewise) building blocks

template <typename D>
BasicTensor3<D> facewise_product(const BasicTensor3<D>& ahat, const BasicTensor3<D>& bhat) {
    if (ahat.cols() != bhat.rows() || ahat.faces() != bhat.faces())
        throw DimensionError("facewise product: inner dimensions or face counts disagree");
    BasicTensor3<D> out(ahat.rows(), bhat.cols(), ahat.faces());
    for (Index i = 0; i < ahat.faces(); ++i) out.face(i).noalias() = ahat.face(i) * bhat.face(i);
    return out;
}

template <typename D>
BasicTensor3<D> facewise_adjoint(const BasicTensor3<D>& ahat) {
    BasicTensor3<D> out(ahat.cols(), ahat.rows(), ahat.faces());
    for (Index i = 0; i < ahat.faces(); ++i) out.face(i) = ahat.face(i).adjoint();
    return out;
}

/// Transform-domain identity: every face is the m x m identity.
template <typename D>
BasicTensor3<D> facewise_identity(Index m, Index n) {
    BasicTensor3<D> out(m, m, n);
    for (Index i = 0; i < n; ++i) out.face(i).setIdentity();
    return out;
}

// ---------------------------------------------------------------------------
// Spatial-domain algebra

/// A (m x p x n) *M B (p x r x n) -> m x r x n.
Tensor3 mprod(const Tensor3& a, const Tensor3& b, const Transform& t);

/// Left-to-right product of several tensors, transforming each factor once
/// and inverting once at the end.
Tensor3 mprod_chain(std::initializer_list<std::reference_wrapper<const Tensor3>> factors,
                    const Transform& t);

/// Conjugate transpose under *M: faces of the transform are conjugate
/// transposed.
Tensor3 conj_transpose(const Tensor3& a, const Transform& t);

/// m x m x n identity under *M.
Tensor3 identity_tensor(Index m, const Transform& t);

/// True when Q^H * Q and Q * Q^H are both within `tol` (max abs entry) of the
/// identity tensor.
bool is_unitary(const Tensor3& q, const Transform& t, double tol);

/// R[v] = M^T diag(v^) M^{-T} (plain transpose), so that
/// squeeze(B *M v) = squeeze(B) R[v] for every lateral slice B.
MatC tube_action_matrix(std::span<const double> tube, const Transform& t);

}  // namespace tcomp
