#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "tcomp/bytes.hpp"
#include "tcomp/tensor.hpp"

namespace tcomp {

enum class TransformKind : std::uint8_t {
    identity = 0,
    dft_unnormalized = 1,
    dct_orthogonal = 2,
    haar_orthogonal = 3,
    random_orthogonal = 4,
    explicit_matrix = 5,
};

std::string_view to_string(TransformKind kind);
/// Accepts the CLI spellings (identity, dft, dct, haar, randorth) and the
/// long kind names.
TransformKind parse_transform_kind(std::string_view name);

/// Invertible mode-wise map M = c * W. Only the unnormalized DFT is complex;
/// every other kind (including explicit matrices) is real.
class Transform {
public:
    Transform() = default;

    /// Throws std::invalid_argument for n == 0, haar with n not a power of
    /// two, or explicit_matrix (use from_matrix).
    static Transform make(TransformKind kind, Index n, std::uint64_t seed = 0);

    /// Explicit real invertible matrix. Scaled-unitary matrices get the
    /// adjoint inverse; anything else is inverted by LU.
    static Transform from_matrix(MatR m);

    TransformKind kind() const { return kind_; }
    Index size() const { return n_; }
    double scale() const { return scale_; }
    std::uint64_t seed() const { return seed_; }
    bool is_complex() const { return kind_ == TransformKind::dft_unnormalized; }
    bool is_scaled_unitary() const { return scaled_unitary_; }
    std::string describe() const;

    const MatR& real_matrix() const;
    const MatC& complex_matrix() const;

    template <typename S>
    Mat<S> matrix() const {
        if constexpr (is_complex_v<S>) {
            return is_complex() ? complex_ : real_.template cast<cplx>();
        } else {
            return real_matrix();
        }
    }

    template <typename S>
    Mat<S> inverse_matrix() const {
        if constexpr (is_complex_v<S>) {
            return is_complex() ? complex_inv_ : real_inv_.template cast<cplx>();
        } else {
            if (is_complex()) throw std::logic_error("real inverse requested for complex transform");
            return real_inv_;
        }
    }

    /// Face whose transform-domain values are the complex conjugate of face
    /// `face` whenever the spatial input is real. Real transforms map every
    /// face to itself.
    Index conjugate_partner(Index face) const {
        return is_complex() ? (n_ - face) % n_ : face;
    }

    /// Faces that must be stored to recover all faces of a real input under
    /// conjugate symmetry: ceil((n+1)/2) for the DFT, n otherwise.
    Index canonical_face_count() const { return is_complex() ? (n_ + 2) / 2 : n_; }

    /// Max deviation of M^H M from |c|^2 I, relative to |c|^2.
    double unitarity_defect() const;

    bool operator==(const Transform& other) const;

private:
    void finalize();

    TransformKind kind_ = TransformKind::identity;
    Index n_ = 0;
    double scale_ = 1.0;
    std::uint64_t seed_ = 0;
    bool scaled_unitary_ = true;
    MatR real_, real_inv_;
    MatC complex_, complex_inv_;
};

/// Calls f(std::type_identity<D>{}) with D the transform-domain scalar.
template <typename F>
decltype(auto) visit_domain(const Transform& t, F&& f) {
    if (t.is_complex()) return f(std::type_identity<cplx>{});
    return f(std::type_identity<double>{});
}

/// Transform-domain tensor A x_3 M; D must be complex for the DFT.
template <typename D, typename S>
BasicTensor3<D> forward(const Transform& t, const BasicTensor3<S>& a) {
    if (t.size() != a.faces())
        throw DimensionError("transform size " + std::to_string(t.size()) + " != tube length " +
                             std::to_string(a.faces()));
    return tensor_cast<D>(mode_multiply(a, 3, t.matrix<D>()));
}

/// Â x_3 M^{-1}.
template <typename D>
BasicTensor3<D> inverse(const Transform& t, const BasicTensor3<D>& ahat) {
    if (t.size() != ahat.faces()) throw DimensionError("transform size mismatch on inverse");
    return mode_multiply(ahat, 3, t.inverse_matrix<D>());
}

/// A x_3 M x_4 B (the two products commute).
template <typename D, typename S>
BasicTensor4<D> forward4(const Transform& tm, const Transform& tb, const BasicTensor4<S>& a) {
    if (tm.size() != a.extent(3) || tb.size() != a.extent(4))
        throw DimensionError("forward4: transform sizes do not match modes 3 and 4");
    auto step = mode_multiply(a, 3, tm.matrix<D>());
    auto out = mode_multiply(step, 4, tb.matrix<D>());
    if constexpr (std::is_same_v<typename decltype(out)::value_type, D>) {
        return out;
    } else {
        const auto& d = out.dims();
        std::vector<D> v(out.values().begin(), out.values().end());
        return BasicTensor4<D>(d[0], d[1], d[2], d[3], std::move(v));
    }
}

template <typename D>
BasicTensor4<D> inverse4(const Transform& tm, const Transform& tb, const BasicTensor4<D>& ahat) {
    if (tm.size() != ahat.extent(3) || tb.size() != ahat.extent(4))
        throw DimensionError("inverse4: transform sizes do not match modes 3 and 4");
    return mode_multiply(mode_multiply(ahat, 4, tb.inverse_matrix<D>()), 3, tm.inverse_matrix<D>());
}

// Descriptor wire format (little-endian): kind u8, n u32, seed u64,
// scale f64, then for explicit_matrix n*n f64 row-major.
void write_descriptor(ByteWriter& out, const Transform& t);
Transform read_descriptor(ByteReader& in);

}  // namespace tcomp
