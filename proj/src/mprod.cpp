#include "tcomp/mprod.hpp"

namespace tcomp {
namespace {

void require_faces(const Tensor3& a, const Transform& t, const char* what) {
    if (a.faces() != t.size())
        throw DimensionError(std::string(what) + ": tube length " + std::to_string(a.faces()) +
                             " != transform size " + std::to_string(t.size()));
}

}  // namespace

Tensor3 mprod(const Tensor3& a, const Tensor3& b, const Transform& t) {
    return mprod_chain({a, b}, t);
}

Tensor3 mprod_chain(std::initializer_list<std::reference_wrapper<const Tensor3>> factors,
                    const Transform& t) {
    if (factors.size() == 0) throw std::invalid_argument("mprod_chain: no factors");
    for (const Tensor3& f : factors) require_faces(f, t, "mprod");
    return visit_domain(t, [&]<typename D>(std::type_identity<D>) {
        auto it = factors.begin();
        BasicTensor3<D> acc = forward<D>(t, it->get());
        for (++it; it != factors.end(); ++it) acc = facewise_product(acc, forward<D>(t, it->get()));
        return real_part(inverse(t, acc));
    });
}

Tensor3 conj_transpose(const Tensor3& a, const Transform& t) {
    require_faces(a, t, "conj_transpose");
    return visit_domain(t, [&]<typename D>(std::type_identity<D>) {
        return real_part(inverse(t, facewise_adjoint(forward<D>(t, a))));
    });
}

Tensor3 identity_tensor(Index m, const Transform& t) {
    return visit_domain(t, [&]<typename D>(std::type_identity<D>) {
        return real_part(inverse(t, facewise_identity<D>(m, t.size())));
    });
}

bool is_unitary(const Tensor3& q, const Transform& t, double tol) {
    if (q.rows() != q.cols()) return false;
    require_faces(q, t, "is_unitary");
    const Tensor3 qh = conj_transpose(q, t);
    const Tensor3 eye = identity_tensor(q.rows(), t);
    return max_abs_diff(mprod(qh, q, t), eye) <= tol && max_abs_diff(mprod(q, qh, t), eye) <= tol;
}

MatC tube_action_matrix(std::span<const double> tube, const Transform& t) {
    if (static_cast<Index>(tube.size()) != t.size())
        throw DimensionError("tube_action_matrix: tube length != transform size");
    const MatC m = t.matrix<cplx>();
    const MatC minv = t.inverse_matrix<cplx>();
    Eigen::VectorXcd v(t.size());
    for (Index k = 0; k < t.size(); ++k) v(k) = tube[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd vhat = m * v;
    return m.transpose() * vhat.asDiagonal() * minv.transpose();
}

}  // namespace tcomp
