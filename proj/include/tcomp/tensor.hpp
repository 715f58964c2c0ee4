#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "tcomp/simd/kernels.hpp"

namespace tcomp {

using Index = Eigen::Index;
using cplx = std::complex<double>;

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
using MatR = Mat<double>;
using MatC = Mat<cplx>;

template <typename A, typename B>
using promote_t = decltype(std::declval<A>() * std::declval<B>());

template <typename S>
inline constexpr bool is_complex_v = !std::is_same_v<S, double>;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense m x p x n tensor. Storage is column-major: i fastest, then j, then k,
/// so frontal slice k is a contiguous m x p column-major block.
template <typename Scalar>
class BasicTensor3 {
public:
    using value_type = Scalar;
    using FaceMap = Eigen::Map<Mat<Scalar>>;
    using ConstFaceMap = Eigen::Map<const Mat<Scalar>>;

    BasicTensor3() = default;

    BasicTensor3(Index m, Index p, Index n) : dims_{m, p, n} {
        if (m < 0 || p < 0 || n < 0) throw DimensionError("negative tensor extent");
        data_.assign(static_cast<std::size_t>(m * p * n), Scalar{0});
    }

    BasicTensor3(Index m, Index p, Index n, std::vector<Scalar> values)
        : dims_{m, p, n}, data_(std::move(values)) {
        if (m < 0 || p < 0 || n < 0) throw DimensionError("negative tensor extent");
        if (static_cast<Index>(data_.size()) != m * p * n)
            throw DimensionError("scalar count does not match m*p*n");
    }

    Index rows() const { return dims_[0]; }
    Index cols() const { return dims_[1]; }
    Index faces() const { return dims_[2]; }
    Index extent(int mode) const { return dims_.at(static_cast<std::size_t>(mode - 1)); }
    const std::array<Index, 3>& dims() const { return dims_; }
    Index size() const { return static_cast<Index>(data_.size()); }
    Index face_size() const { return dims_[0] * dims_[1]; }

    Scalar& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }
    const Scalar& operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }

    Scalar* data() { return data_.data(); }
    const Scalar* data() const { return data_.data(); }
    std::span<Scalar> values() { return data_; }
    std::span<const Scalar> values() const { return data_; }
    const std::vector<Scalar>& storage() const { return data_; }

    FaceMap face(Index k) { return FaceMap(data_.data() + k * face_size(), dims_[0], dims_[1]); }
    ConstFaceMap face(Index k) const {
        return ConstFaceMap(data_.data() + k * face_size(), dims_[0], dims_[1]);
    }

    bool operator==(const BasicTensor3& other) const = default;

private:
    std::size_t offset(Index i, Index j, Index k) const {
        return static_cast<std::size_t>(i + dims_[0] * (j + dims_[1] * k));
    }

    std::array<Index, 3> dims_{0, 0, 0};
    std::vector<Scalar> data_;
};

/// Dense m x p x n x q tensor; face (k, l) is the contiguous m x p block at
/// offset (k + l*n) * m * p.
template <typename Scalar>
class BasicTensor4 {
public:
    using value_type = Scalar;
    using FaceMap = Eigen::Map<Mat<Scalar>>;
    using ConstFaceMap = Eigen::Map<const Mat<Scalar>>;

    BasicTensor4() = default;

    BasicTensor4(Index m, Index p, Index n, Index q) : dims_{m, p, n, q} {
        if (m < 0 || p < 0 || n < 0 || q < 0) throw DimensionError("negative tensor extent");
        data_.assign(static_cast<std::size_t>(m * p * n * q), Scalar{0});
    }

    BasicTensor4(Index m, Index p, Index n, Index q, std::vector<Scalar> values)
        : dims_{m, p, n, q}, data_(std::move(values)) {
        if (static_cast<Index>(data_.size()) != m * p * n * q)
            throw DimensionError("scalar count does not match m*p*n*q");
    }

    Index extent(int mode) const { return dims_.at(static_cast<std::size_t>(mode - 1)); }
    const std::array<Index, 4>& dims() const { return dims_; }
    Index size() const { return static_cast<Index>(data_.size()); }
    Index face_size() const { return dims_[0] * dims_[1]; }

    Scalar& operator()(Index i, Index j, Index k, Index l) { return data_[offset(i, j, k, l)]; }
    const Scalar& operator()(Index i, Index j, Index k, Index l) const {
        return data_[offset(i, j, k, l)];
    }

    Scalar* data() { return data_.data(); }
    const Scalar* data() const { return data_.data(); }
    std::span<const Scalar> values() const { return data_; }

    FaceMap face(Index k, Index l) {
        return FaceMap(data_.data() + (k + dims_[2] * l) * face_size(), dims_[0], dims_[1]);
    }
    ConstFaceMap face(Index k, Index l) const {
        return ConstFaceMap(data_.data() + (k + dims_[2] * l) * face_size(), dims_[0], dims_[1]);
    }

    bool operator==(const BasicTensor4& other) const = default;

private:
    std::size_t offset(Index i, Index j, Index k, Index l) const {
        return static_cast<std::size_t>(i + dims_[0] * (j + dims_[1] * (k + dims_[2] * l)));
    }

    std::array<Index, 4> dims_{0, 0, 0, 0};
    std::vector<Scalar> data_;
};

using Tensor3 = BasicTensor3<double>;
using CTensor3 = BasicTensor3<cplx>;
using Tensor4 = BasicTensor4<double>;
using CTensor4 = BasicTensor4<cplx>;

// ---------------------------------------------------------------------------
// Norms and elementwise helpers

template <typename S>
double frobenius_norm(const BasicTensor3<S>& a) {
    return std::sqrt(simd::sum_squares(a.data(), static_cast<std::size_t>(a.size())));
}

template <typename S>
double frobenius_norm(const BasicTensor4<S>& a) {
    return std::sqrt(simd::sum_squares(a.data(), static_cast<std::size_t>(a.size())));
}

template <typename A, typename B>
auto operator-(const BasicTensor3<A>& a, const BasicTensor3<B>& b) {
    using R = promote_t<A, B>;
    if (a.dims() != b.dims()) throw DimensionError("tensor difference: shape mismatch");
    BasicTensor3<R> out(a.rows(), a.cols(), a.faces());
    for (Index t = 0; t < a.size(); ++t) out.data()[t] = R(a.data()[t]) - R(b.data()[t]);
    return out;
}

template <typename A, typename B>
auto operator+(const BasicTensor3<A>& a, const BasicTensor3<B>& b) {
    using R = promote_t<A, B>;
    if (a.dims() != b.dims()) throw DimensionError("tensor sum: shape mismatch");
    BasicTensor3<R> out(a.rows(), a.cols(), a.faces());
    for (Index t = 0; t < a.size(); ++t) out.data()[t] = R(a.data()[t]) + R(b.data()[t]);
    return out;
}

template <typename S>
BasicTensor3<S> operator*(double s, BasicTensor3<S> a) {
    for (auto& v : a.values()) v *= s;
    return a;
}

template <typename S>
BasicTensor4<S> difference(const BasicTensor4<S>& a, const BasicTensor4<S>& b) {
    if (a.dims() != b.dims()) throw DimensionError("tensor difference: shape mismatch");
    std::vector<S> v(a.values().begin(), a.values().end());
    for (std::size_t t = 0; t < v.size(); ++t) v[t] -= b.data()[t];
    const auto& d = a.dims();
    return BasicTensor4<S>(d[0], d[1], d[2], d[3], std::move(v));
}

template <typename S>
double max_abs_diff(const BasicTensor3<S>& a, const BasicTensor3<S>& b) {
    if (a.dims() != b.dims()) throw DimensionError("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (Index t = 0; t < a.size(); ++t) worst = std::max(worst, std::abs(a.data()[t] - b.data()[t]));
    return worst;
}

/// Relative Frobenius distance ||a - b|| / ||b||; absolute when b is zero.
template <typename A, typename B>
double relative_difference(const BasicTensor3<A>& a, const BasicTensor3<B>& b) {
    const double nb = frobenius_norm(b);
    const double d = frobenius_norm(a - b);
    return nb > 0.0 ? d / nb : d;
}

template <typename S>
Tensor3 real_part(const BasicTensor3<S>& a) {
    if constexpr (std::is_same_v<S, double>) {
        return a;
    } else {
        Tensor3 out(a.rows(), a.cols(), a.faces());
        for (Index t = 0; t < a.size(); ++t) out.data()[t] = a.data()[t].real();
        return out;
    }
}

template <typename S>
Tensor4 real_part(const BasicTensor4<S>& a) {
    if constexpr (std::is_same_v<S, double>) {
        return a;
    } else {
        const auto& d = a.dims();
        Tensor4 out(d[0], d[1], d[2], d[3]);
        for (Index t = 0; t < a.size(); ++t) out.data()[t] = a.data()[t].real();
        return out;
    }
}

template <typename To, typename From>
BasicTensor3<To> tensor_cast(const BasicTensor3<From>& a) {
    if constexpr (std::is_same_v<To, From>) {
        return a;
    } else {
        BasicTensor3<To> out(a.rows(), a.cols(), a.faces());
        for (Index t = 0; t < a.size(); ++t) out.data()[t] = To(a.data()[t]);
        return out;
    }
}

template <typename S>
BasicTensor3<S> conj(BasicTensor3<S> a) {
    if constexpr (is_complex_v<S>) {
        for (auto& v : a.values()) v = std::conj(v);
    }
    return a;
}

// ---------------------------------------------------------------------------
// Unfoldings. mode-1: m x (p n) = [A1 ... An]; mode-2: p x (m n) =
// [A1^T ... An^T]; mode-3: n x (m p), column i + j*m holds tube (i, j).

template <typename S>
Mat<S> unfold(const BasicTensor3<S>& a, int mode) {
    const Index m = a.rows(), p = a.cols(), n = a.faces();
    switch (mode) {
        case 1:
            return Eigen::Map<const Mat<S>>(a.data(), m, p * n);
        case 2: {
            Mat<S> out(p, m * n);
            for (Index k = 0; k < n; ++k) out.middleCols(k * m, m) = a.face(k).transpose();
            return out;
        }
        case 3:
            return Eigen::Map<const Mat<S>>(a.data(), m * p, n).transpose();
        default:
            throw DimensionError("unfold: mode must be 1, 2 or 3");
    }
}

template <typename Derived>
BasicTensor3<typename Derived::Scalar> fold(const Eigen::MatrixBase<Derived>& mx, int mode,
                                            const std::array<Index, 3>& dims) {
    using S = typename Derived::Scalar;
    const auto [m, p, n] = dims;
    BasicTensor3<S> out(m, p, n);
    switch (mode) {
        case 1:
            if (mx.rows() != m || mx.cols() != p * n)
                throw DimensionError("fold: matrix shape inconsistent with mode-1 unfolding");
            Eigen::Map<Mat<S>>(out.data(), m, p * n) = mx;
            break;
        case 2:
            if (mx.rows() != p || mx.cols() != m * n)
                throw DimensionError("fold: matrix shape inconsistent with mode-2 unfolding");
            for (Index k = 0; k < n; ++k) out.face(k) = mx.middleCols(k * m, m).transpose();
            break;
        case 3:
            if (mx.rows() != n || mx.cols() != m * p)
                throw DimensionError("fold: matrix shape inconsistent with mode-3 unfolding");
            Eigen::Map<Mat<S>>(out.data(), m * p, n) = mx.transpose();
            break;
        default:
            throw DimensionError("fold: mode must be 1, 2 or 3");
    }
    return out;
}

/// m x n matrix -> m x 1 x n lateral slice.
template <typename Derived>
BasicTensor3<typename Derived::Scalar> twist(const Eigen::MatrixBase<Derived>& mx) {
    using S = typename Derived::Scalar;
    BasicTensor3<S> out(mx.rows(), 1, mx.cols());
    Eigen::Map<Mat<S>>(out.data(), mx.rows(), mx.cols()) = mx;
    return out;
}

template <typename S>
Mat<S> squeeze(const BasicTensor3<S>& lateral) {
    if (lateral.cols() != 1) throw DimensionError("squeeze: tensor is not a lateral slice (p != 1)");
    return Eigen::Map<const Mat<S>>(lateral.data(), lateral.rows(), lateral.faces());
}

/// Lateral slice j as an m x n matrix.
template <typename S>
Mat<S> lateral_slice(const BasicTensor3<S>& a, Index j) {
    Mat<S> out(a.rows(), a.faces());
    for (Index k = 0; k < a.faces(); ++k) out.col(k) = a.face(k).col(j);
    return out;
}

/// permute(A, [3,2,1]): transposes every lateral slice.
template <typename S>
BasicTensor3<S> permute_321(const BasicTensor3<S>& a) {
    const Index m = a.rows(), p = a.cols(), n = a.faces();
    BasicTensor3<S> out(n, p, m);
    for (Index k = 0; k < n; ++k)
        for (Index j = 0; j < p; ++j)
            for (Index i = 0; i < m; ++i) out(k, j, i) = a(i, j, k);
    return out;
}

/// Sub-tensor of lateral slices [first, first+count).
template <typename S>
BasicTensor3<S> lateral_range(const BasicTensor3<S>& a, Index first, Index count) {
    BasicTensor3<S> out(a.rows(), count, a.faces());
    for (Index k = 0; k < a.faces(); ++k) out.face(k) = a.face(k).middleCols(first, count);
    return out;
}

// ---------------------------------------------------------------------------
// Mode products

namespace detail {

// out block (g, i) += sum_k coeff(i, k) * in block (g, k); blocks are
// contiguous runs of `block` scalars, `groups` independent groups.
template <typename SM, typename SA, typename SR>
void contract_blocks(const Mat<SM>& coeff, const SA* in, SR* out, Index block, Index groups) {
    const Index count_in = coeff.cols();
    const Index count_out = coeff.rows();
    for (Index g = 0; g < groups; ++g) {
        const SA* gin = in + g * count_in * block;
        SR* gout = out + g * count_out * block;
        for (Index i = 0; i < count_out; ++i) {
            for (Index k = 0; k < count_in; ++k) {
                const SM c = coeff(i, k);
                if (c == SM{0}) continue;
                simd::axpy(c, gin + k * block, gout + i * block, static_cast<std::size_t>(block));
            }
        }
    }
}

}  // namespace detail

/// A x_mode Mx. The matrix column count must equal the mode's extent.
template <typename SA, typename SM>
BasicTensor3<promote_t<SA, SM>> mode_multiply(const BasicTensor3<SA>& a, int mode, const Mat<SM>& mx) {
    using R = promote_t<SA, SM>;
    if (mode < 1 || mode > 3) throw DimensionError("mode_multiply: mode must be 1, 2 or 3");
    if (mx.cols() != a.extent(mode))
        throw DimensionError("mode_multiply: matrix columns (" + std::to_string(mx.cols()) +
                             ") != mode-" + std::to_string(mode) + " extent (" +
                             std::to_string(a.extent(mode)) + ")");
    const Index m = a.rows(), p = a.cols(), n = a.faces();
    switch (mode) {
        case 1: {
            BasicTensor3<R> out(mx.rows(), p, n);
            Eigen::Map<Mat<R>>(out.data(), mx.rows(), p * n) =
                mx.template cast<R>() * Eigen::Map<const Mat<SA>>(a.data(), m, p * n).template cast<R>();
            return out;
        }
        case 2: {
            BasicTensor3<R> out(m, mx.rows(), n);
            const Mat<R> mt = mx.transpose().template cast<R>();
            for (Index k = 0; k < n; ++k) out.face(k) = a.face(k).template cast<R>() * mt;
            return out;
        }
        default: {
            BasicTensor3<R> out(m, p, mx.rows());
            if constexpr (is_complex_v<SM> && !is_complex_v<SA>) {
                detail::contract_blocks<SM, SA, R>(mx, a.data(), out.data(), m * p, 1);
            } else {
                detail::contract_blocks<SM, R, R>(mx, tensor_cast<R>(a).data(), out.data(), m * p, 1);
            }
            return out;
        }
    }
}

template <typename SA, typename SM>
BasicTensor4<promote_t<SA, SM>> mode_multiply(const BasicTensor4<SA>& a, int mode, const Mat<SM>& mx) {
    using R = promote_t<SA, SM>;
    if (mode < 1 || mode > 4) throw DimensionError("mode_multiply: mode must be 1..4");
    if (mx.cols() != a.extent(mode)) throw DimensionError("mode_multiply: matrix/mode extent mismatch");
    const auto [m, p, n, q] = a.dims();
    std::array<Index, 4> od = a.dims();
    od[static_cast<std::size_t>(mode - 1)] = mx.rows();
    BasicTensor4<R> out(od[0], od[1], od[2], od[3]);
    std::vector<R> promoted;
    const R* src = nullptr;
    if constexpr (std::is_same_v<SA, R>) {
        src = a.data();
    } else {
        promoted.assign(a.values().begin(), a.values().end());
        src = promoted.data();
    }
    switch (mode) {
        case 1:
            Eigen::Map<Mat<R>>(out.data(), mx.rows(), p * n * q) =
                mx.template cast<R>() * Eigen::Map<const Mat<R>>(src, m, p * n * q);
            break;
        case 2: {
            const Mat<R> mt = mx.transpose().template cast<R>();
            for (Index l = 0; l < q; ++l)
                for (Index k = 0; k < n; ++k)
                    out.face(k, l) = Eigen::Map<const Mat<R>>(src + (k + n * l) * m * p, m, p) * mt;
            break;
        }
        case 3:
            detail::contract_blocks<SM, R, R>(mx, src, out.data(), m * p, q);
            break;
        default:
            detail::contract_blocks<SM, R, R>(mx, src, out.data(), m * p * n, 1);
            break;
    }
    return out;
}

}  // namespace tcomp
