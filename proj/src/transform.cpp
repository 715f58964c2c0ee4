#include "tcomp/transform.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tcomp/random.hpp"

namespace tcomp {
namespace {

MatC dft_matrix(Index n) {
    MatC f(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k) {
            // reduce the exponent first so large n keeps full accuracy
            const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
            f(j, k) = cplx(std::cos(angle), std::sin(angle));
        }
    return f;
}

MatR dct_matrix(Index n) {
    MatR w(n, n);
    const double dn = static_cast<double>(n);
    for (Index j = 0; j < n; ++j) {
        const double s = j == 0 ? std::sqrt(1.0 / dn) : std::sqrt(2.0 / dn);
        for (Index k = 0; k < n; ++k)
            w(j, k) = s * std::cos(std::numbers::pi * (2.0 * static_cast<double>(k) + 1.0) *
                                   static_cast<double>(j) / (2.0 * dn));
    }
    return w;
}

// H_{2k} = [H_k (x) [1 1]; I_k (x) [1 -1]] / sqrt(2)
MatR haar_matrix(Index n) {
    MatR h = MatR::Ones(1, 1);
    while (h.rows() < n) {
        const Index k = h.rows();
        MatR next = MatR::Zero(2 * k, 2 * k);
        for (Index r = 0; r < k; ++r)
            for (Index c = 0; c < k; ++c) {
                next(r, 2 * c) = h(r, c);
                next(r, 2 * c + 1) = h(r, c);
            }
        for (Index r = 0; r < k; ++r) {
            next(k + r, 2 * r) = 1.0;
            next(k + r, 2 * r + 1) = -1.0;
        }
        h = next / std::sqrt(2.0);
    }
    return h;
}

MatR random_orthogonal_matrix(Index n, std::uint64_t seed) {
    NormalStream normal(seed);
    MatR g(n, n);
    // column-major fill order is part of the determinism contract
    for (Index c = 0; c < n; ++c)
        for (Index r = 0; r < n; ++r) g(r, c) = normal();
    Eigen::HouseholderQR<MatR> qr(g);
    MatR q = qr.householderQ() * MatR::Identity(n, n);
    const MatR& packed = qr.matrixQR();
    for (Index j = 0; j < n; ++j)
        if (packed(j, j) < 0.0) q.col(j) *= -1.0;
    return q;
}

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string_view to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::identity: return "identity";
        case TransformKind::dft_unnormalized: return "dft";
        case TransformKind::dct_orthogonal: return "dct";
        case TransformKind::haar_orthogonal: return "haar";
        case TransformKind::random_orthogonal: return "randorth";
        case TransformKind::explicit_matrix: return "explicit";
    }
    return "unknown";
}

TransformKind parse_transform_kind(std::string_view name) {
    if (name == "identity") return TransformKind::identity;
    if (name == "dft" || name == "dft_unnormalized") return TransformKind::dft_unnormalized;
    if (name == "dct" || name == "dct_orthogonal") return TransformKind::dct_orthogonal;
    if (name == "haar" || name == "haar_orthogonal") return TransformKind::haar_orthogonal;
    if (name == "randorth" || name == "random_orthogonal") return TransformKind::random_orthogonal;
    if (name == "explicit" || name == "explicit_matrix") return TransformKind::explicit_matrix;
    throw std::invalid_argument("unknown transform kind '" + std::string(name) + "'");
}

Transform Transform::make(TransformKind kind, Index n, std::uint64_t seed) {
    if (n <= 0) throw std::invalid_argument("transform size must be positive");
    Transform t;
    t.kind_ = kind;
    t.n_ = n;
    switch (kind) {
        case TransformKind::identity:
            t.real_ = MatR::Identity(n, n);
            break;
        case TransformKind::dft_unnormalized:
            t.complex_ = dft_matrix(n);
            t.scale_ = std::sqrt(static_cast<double>(n));
            break;
        case TransformKind::dct_orthogonal:
            t.real_ = dct_matrix(n);
            break;
        case TransformKind::haar_orthogonal:
            if (!is_power_of_two(n))
                throw std::invalid_argument("haar transform requires a power-of-two size, got " +
                                            std::to_string(n));
            t.real_ = haar_matrix(n);
            break;
        case TransformKind::random_orthogonal:
            t.seed_ = seed;
            t.real_ = random_orthogonal_matrix(n, seed);
            break;
        case TransformKind::explicit_matrix:
            throw std::invalid_argument("explicit transforms are built with Transform::from_matrix");
    }
    t.finalize();
    return t;
}

Transform Transform::from_matrix(MatR m) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw std::invalid_argument("explicit transform must be a non-empty square matrix");
    Transform t;
    t.kind_ = TransformKind::explicit_matrix;
    t.n_ = m.rows();
    t.real_ = std::move(m);
    t.scale_ = std::sqrt((t.real_.transpose() * t.real_).trace() / static_cast<double>(t.n_));
    t.finalize();
    return t;
}

void Transform::finalize() {
    const double c2 = scale_ * scale_;
    if (is_complex()) {
        complex_inv_ = complex_.adjoint() / c2;
        scaled_unitary_ = true;
        return;
    }
    scaled_unitary_ = unitarity_defect() <= 1e-10;
    if (scaled_unitary_) {
        real_inv_ = real_.transpose() / c2;
    } else {
        Eigen::FullPivLU<MatR> lu(real_);
        if (!lu.isInvertible()) throw std::invalid_argument("explicit transform matrix is singular");
        real_inv_ = lu.inverse();
    }
}

double Transform::unitarity_defect() const {
    const double c2 = scale_ * scale_;
    if (c2 == 0.0) return std::numeric_limits<double>::infinity();
    if (is_complex()) {
        const MatC g = complex_.adjoint() * complex_;
        return (g - c2 * MatC::Identity(n_, n_)).cwiseAbs().maxCoeff() / c2;
    }
    const MatR g = real_.transpose() * real_;
    return (g - c2 * MatR::Identity(n_, n_)).cwiseAbs().maxCoeff() / c2;
}

const MatR& Transform::real_matrix() const {
    if (is_complex()) throw std::logic_error("real matrix requested for complex transform");
    return real_;
}

const MatC& Transform::complex_matrix() const {
    if (!is_complex()) throw std::logic_error("complex matrix requested for real transform");
    return complex_;
}

std::string Transform::describe() const {
    std::ostringstream os;
    os << to_string(kind_) << "(n=" << n_ << ", c=" << scale_;
    if (kind_ == TransformKind::random_orthogonal) os << ", seed=" << seed_;
    os << ")";
    return os.str();
}

bool Transform::operator==(const Transform& other) const {
    if (kind_ != other.kind_ || n_ != other.n_ || seed_ != other.seed_ || scale_ != other.scale_) return false;
    if (is_complex()) return complex_ == other.complex_;
    return real_ == other.real_;
}

void write_descriptor(ByteWriter& out, const Transform& t) {
    out.u8(static_cast<std::uint8_t>(t.kind()));
    out.u32(static_cast<std::uint32_t>(t.size()));
    out.u64(t.seed());
    out.f64(t.scale());
    if (t.kind() == TransformKind::explicit_matrix) {
        const MatR& m = t.real_matrix();
        for (Index r = 0; r < m.rows(); ++r)
            for (Index c = 0; c < m.cols(); ++c) out.f64(m(r, c));
    }
}

Transform read_descriptor(ByteReader& in) {
    const std::uint8_t kind_byte = in.u8();
    if (kind_byte > static_cast<std::uint8_t>(TransformKind::explicit_matrix))
        throw FormatError("unknown transform kind byte " + std::to_string(kind_byte));
    const auto kind = static_cast<TransformKind>(kind_byte);
    const Index n = in.u32();
    const std::uint64_t seed = in.u64();
    const double scale = in.f64();
    Transform t;
    if (kind == TransformKind::explicit_matrix) {
        MatR m(n, n);
        for (Index r = 0; r < n; ++r)
            for (Index c = 0; c < n; ++c) m(r, c) = in.f64();
        t = Transform::from_matrix(std::move(m));
    } else {
        t = Transform::make(kind, n, seed);
    }
    if (t.scale() != scale) throw FormatError("transform descriptor scale does not match its kind");
    return t;
}

}  // namespace tcomp
