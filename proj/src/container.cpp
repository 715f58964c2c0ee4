#include "tcomp/container.hpp"

#include <zlib.h>

#include <map>
#include <stdexcept>

namespace tcomp {
namespace {

constexpr std::size_t kHeaderBytes = 16;
constexpr std::size_t kEntryBytes = 20;

[[noreturn]] void corrupted(const std::string& what) {
    throw FormatError("corrupted container: " + what);
}

std::uint32_t crc_of(std::span<const std::uint8_t> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes 32-bit lengths; feed large buffers in chunks
    constexpr std::size_t kChunk = 1u << 30;
    for (std::size_t at = 0; at < bytes.size(); at += kChunk) {
        const std::size_t len = std::min(kChunk, bytes.size() - at);
        crc = crc32(crc, bytes.data() + at, static_cast<uInt>(len));
    }
    return static_cast<std::uint32_t>(crc);
}

std::string tag(std::string_view base, int digit) { return std::string(base) + static_cast<char>('0' + digit); }

// ---------------------------------------------------------------------------
// Float payload builders

class Payload {
public:
    void reals(const double* x, Index n) { values_.insert(values_.end(), x, x + n); }
    void tensor(const Tensor3& t) { reals(t.data(), t.size()); }
    template <typename D>
    void matrix(const Mat<D>& m, bool real_only = false) {
        if constexpr (is_complex_v<D>) {
            for (Index t = 0; t < m.size(); ++t) {
                values_.push_back(m.data()[t].real());
                if (!real_only) values_.push_back(m.data()[t].imag());
            }
        } else {
            reals(m.data(), m.size());
        }
    }
    void write(ByteWriter& w) const {
        w.u64(values_.size());
        w.f64s(values_);
    }

private:
    std::vector<double> values_;
};

class PayloadReader {
public:
    PayloadReader(std::vector<double> v) : v_(std::move(v)) {}
    const double* take(Index n) {
        if (n < 0 || static_cast<std::size_t>(n) > v_.size() - pos_) corrupted("payload shorter than its header implies");
        const double* p = v_.data() + pos_;
        pos_ += static_cast<std::size_t>(n);
        return p;
    }
    Tensor3 tensor(Index m, Index p, Index n) {
        const double* x = take(m * p * n);
        return Tensor3(m, p, n, std::vector<double>(x, x + m * p * n));
    }
    template <typename D>
    Mat<D> matrix(Index rows, Index cols, bool real_only = false) {
        Mat<D> out(rows, cols);
        if constexpr (is_complex_v<D>) {
            const Index stride = real_only ? 1 : 2;
            const double* x = take(rows * cols * stride);
            for (Index t = 0; t < rows * cols; ++t) out.data()[t] = cplx(x[stride * t], real_only ? 0.0 : x[2 * t + 1]);
        } else {
            const double* x = take(rows * cols);
            std::copy(x, x + rows * cols, out.data());
        }
        return out;
    }
    void finish() const {
        if (pos_ != v_.size()) corrupted("payload longer than its header implies");
    }
    Index count() const { return static_cast<Index>(v_.size()); }

private:
    std::vector<double> v_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Sections

struct Sections {
    std::vector<std::pair<std::string, ByteWriter>> list;
    ByteWriter& add(std::string t) {
        list.emplace_back(std::move(t), ByteWriter{});
        return list.back().second;
    }
};

class SectionMap {
public:
    void put(std::string t, std::span<const std::uint8_t> body) {
        if (!map_.emplace(std::move(t), body).second) corrupted("duplicate section");
    }
    ByteReader reader(const std::string& t) const {
        auto it = map_.find(t);
        if (it == map_.end()) corrupted("missing section " + t);
        return ByteReader(it->second, "section " + t);
    }
    bool has(const std::string& t) const { return map_.count(t) != 0; }
    PayloadReader payload(const std::string& t) const {
        ByteReader r = reader(t);
        const std::uint64_t n = r.u64();
        if (n > r.remaining() / 8) throw FormatError("truncated payload");
        PayloadReader out(r.f64s(static_cast<std::size_t>(n)));
        if (r.remaining() != 0) corrupted("trailing bytes in section " + t);
        return out;
    }

private:
    std::map<std::string, std::span<const std::uint8_t>> map_;
};

void put_dims(ByteWriter& w, std::span<const Index> dims) {
    w.u8(static_cast<std::uint8_t>(dims.size()));
    for (Index d : dims) w.u64(static_cast<std::uint64_t>(d));
}

template <std::size_t N>
std::array<Index, N> get_dims(ByteReader& r) {
    if (r.u8() != N) corrupted("unexpected tensor order");
    std::array<Index, N> d{};
    for (auto& x : d) {
        const std::uint64_t v = r.u64();
        if (v > (1ull << 40)) corrupted("implausible extent");
        x = static_cast<Index>(v);
    }
    return d;
}

Index get_index(ByteReader& r, Index hi, const char* what) {
    const std::uint64_t v = r.u64();
    if (v > static_cast<std::uint64_t>(hi)) corrupted(std::string(what) + " out of range");
    return static_cast<Index>(v);
}

void put_transforms(ByteWriter& w, std::initializer_list<const Transform*> ts) {
    w.u32(static_cast<std::uint32_t>(ts.size()));
    for (const Transform* t : ts) write_descriptor(w, *t);
}

std::vector<Transform> get_transforms(ByteReader& r, std::size_t expect) {
    const std::uint32_t n = r.u32();
    if (n != expect) corrupted("unexpected transform count");
    std::vector<Transform> out;
    for (std::uint32_t i = 0; i < n; ++i) out.push_back(read_descriptor(r));
    return out;
}

void put_ranks(ByteWriter& w, const MultiRank& rho) {
    w.u32(static_cast<std::uint32_t>(rho.size()));
    for (Index r : rho) w.u64(static_cast<std::uint64_t>(r));
}

MultiRank get_ranks(ByteReader& r, Index expect, Index max_rank) {
    if (r.u32() != expect) corrupted("rank array length disagrees with dims");
    MultiRank rho(static_cast<std::size_t>(expect));
    for (auto& x : rho) x = get_index(r, max_rank, "rank");
    return rho;
}

// Which faces of a conjugate-symmetric representation are written, and how.
enum class FaceStorage { full, real_only, mirrored };

FaceStorage face_storage(Index flat, Index partner, bool complex_domain, bool conjsym) {
    if (!complex_domain || !conjsym) return FaceStorage::full;
    if (partner < flat) return FaceStorage::mirrored;
    return partner == flat ? FaceStorage::real_only : FaceStorage::full;
}

template <typename D>
void require_real(const Mat<D>& m) {
    if constexpr (is_complex_v<D>)
        if (m.size() > 0 && m.imag().cwiseAbs().maxCoeff() != 0.0)
            throw std::invalid_argument("conjsym storage needs real self-conjugate faces");
}

template <typename D>
void require_conjugate(const Mat<D>& x, const Mat<D>& partner) {
    if constexpr (is_complex_v<D>)
        if (x.rows() != partner.rows() || x.cols() != partner.cols() || x != partner.conjugate())
            throw std::invalid_argument("conjsym storage needs conjugate-symmetric faces");
}

// ---------------------------------------------------------------------------
// Per-method bodies

void write_body(Sections& s, int d, const TrankRep& rep, bool) {
    ByteWriter& h = s.add(tag("HDR", d));
    put_dims(h, std::array<Index, 3>{rep.u.rows(), rep.c.cols(), rep.u.faces()});
    h.u64(static_cast<std::uint64_t>(rep.k()));
    put_transforms(s.add(tag("XFM", d)), {&rep.transform});
    Payload p;
    p.tensor(rep.u);
    p.tensor(rep.c);
    p.write(s.add(tag("DAT", d)));
}

TrankRep read_trank(const SectionMap& s, int d) {
    ByteReader h = s.reader(tag("HDR", d));
    const auto [m, p, n] = get_dims<3>(h);
    const Index k = get_index(h, std::min(m, p), "k");
    ByteReader x = s.reader(tag("XFM", d));
    TrankRep rep;
    rep.transform = get_transforms(x, 1)[0];
    if (rep.transform.size() != n) corrupted("transform size disagrees with dims");
    PayloadReader data = s.payload(tag("DAT", d));
    rep.u = data.tensor(m, k, n);
    rep.c = data.tensor(k, p, n);
    data.finish();
    return rep;
}

void write_body(Sections& s, int d, const TSvdmIIRep& rep, bool conjsym) {
    const auto [m, p, n] = rep.dims;
    ByteWriter& h = s.add(tag("HDR", d));
    put_dims(h, rep.dims);
    h.f64(rep.gamma);
    h.f64(rep.original_norm);
    h.f64(rep.retained_energy);
    h.f64(rep.discarded_energy);
    put_transforms(s.add(tag("XFM", d)), {&rep.transform});
    put_ranks(s.add(tag("RNK", d)), rep.rho);
    Payload data;
    std::visit(
        [&](const auto& faces) {
            if (static_cast<Index>(faces.size()) != n) throw std::invalid_argument("t-SVDMII face count disagrees with dims");
            for (Index i = 0; i < n; ++i) {
                const auto& f = faces[static_cast<std::size_t>(i)];
                const Index partner = rep.transform.conjugate_partner(i);
                switch (face_storage(i, partner, rep.transform.is_complex(), conjsym)) {
                    case FaceStorage::mirrored:
                        require_conjugate(f.u, faces[static_cast<std::size_t>(partner)].u);
                        require_conjugate(f.g, faces[static_cast<std::size_t>(partner)].g);
                        break;
                    case FaceStorage::real_only:
                        require_real(f.u);
                        require_real(f.g);
                        data.matrix(f.u, true);
                        data.matrix(f.g, true);
                        break;
                    case FaceStorage::full:
                        data.matrix(f.u);
                        data.matrix(f.g);
                        break;
                }
            }
        },
        rep.faces);
    (void)m;
    (void)p;
    data.write(s.add(tag("DAT", d)));
}

template <typename D>
std::vector<TruncatedFace<D>> read_tsvdm2_faces(const TSvdmIIRep& rep, PayloadReader& data, bool conjsym) {
    const auto [m, p, n] = rep.dims;
    std::vector<TruncatedFace<D>> faces(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const Index r = rep.rho[static_cast<std::size_t>(i)];
        const Index partner = rep.transform.conjugate_partner(i);
        auto& f = faces[static_cast<std::size_t>(i)];
        switch (face_storage(i, partner, rep.transform.is_complex(), conjsym)) {
            case FaceStorage::mirrored: {
                const auto& src = faces[static_cast<std::size_t>(partner)];
                if (src.u.cols() != r) corrupted("conjugate faces have different ranks");
                f.u = src.u.conjugate();
                f.g = src.g.conjugate();
                break;
            }
            case FaceStorage::real_only:
                f.u = data.matrix<D>(m, r, true);
                f.g = data.matrix<D>(r, p, true);
                break;
            case FaceStorage::full:
                f.u = data.matrix<D>(m, r);
                f.g = data.matrix<D>(r, p);
                break;
        }
    }
    return faces;
}

TSvdmIIRep read_tsvdm2(const SectionMap& s, int d, bool conjsym) {
    ByteReader h = s.reader(tag("HDR", d));
    TSvdmIIRep rep;
    rep.dims = get_dims<3>(h);
    const auto [m, p, n] = rep.dims;
    rep.gamma = h.f64();
    rep.original_norm = h.f64();
    rep.retained_energy = h.f64();
    rep.discarded_energy = h.f64();
    ByteReader x = s.reader(tag("XFM", d));
    rep.transform = get_transforms(x, 1)[0];
    if (rep.transform.size() != n) corrupted("transform size disagrees with dims");
    ByteReader rk = s.reader(tag("RNK", d));
    rep.rho = get_ranks(rk, n, std::min(m, p));
    PayloadReader data = s.payload(tag("DAT", d));
    if (rep.transform.is_complex())
        rep.faces = read_tsvdm2_faces<cplx>(rep, data, conjsym);
    else
        rep.faces = read_tsvdm2_faces<double>(rep, data, conjsym);
    data.finish();
    return rep;
}

void write_body(Sections& s, int d, const MatrixSvdRep& rep, bool) {
    ByteWriter& h = s.add(tag("HDR", d));
    put_dims(h, rep.dims);
    h.u8(static_cast<std::uint8_t>(rep.orientation));
    h.u64(static_cast<std::uint64_t>(rep.k()));
    Payload data;
    data.matrix(rep.basis);
    data.matrix(rep.coefficients);
    data.write(s.add(tag("DAT", d)));
}

MatrixSvdRep read_matrix(const SectionMap& s, int d) {
    ByteReader h = s.reader(tag("HDR", d));
    MatrixSvdRep rep;
    rep.dims = get_dims<3>(h);
    const std::uint8_t o = h.u8();
    if (o > 1) corrupted("unknown matrix orientation");
    rep.orientation = static_cast<MatrixOrientation>(o);
    const auto [m, p, n] = rep.dims;
    const Index rows = rep.orientation == MatrixOrientation::lateral ? m * n : m * p;
    const Index cols = rep.orientation == MatrixOrientation::lateral ? p : n;
    const Index k = get_index(h, std::min(rows, cols), "k");
    PayloadReader data = s.payload(tag("DAT", d));
    rep.basis = data.matrix<double>(rows, k);
    rep.coefficients = data.matrix<double>(k, cols);
    data.finish();
    return rep;
}

void write_body(Sections& s, int d, const HosvdRep& rep, bool) {
    ByteWriter& h = s.add(tag("HDR", d));
    put_dims(h, rep.dims());
    put_dims(h, rep.triple());
    Payload data;
    data.tensor(rep.core);
    data.matrix(rep.q);
    data.matrix(rep.w);
    data.matrix(rep.z);
    data.write(s.add(tag("DAT", d)));
}

HosvdRep read_hosvd(const SectionMap& s, int d) {
    ByteReader h = s.reader(tag("HDR", d));
    const auto dims = get_dims<3>(h);
    const auto k = get_dims<3>(h);
    for (std::size_t i = 0; i < 3; ++i)
        if (k[i] > dims[i]) corrupted("HOSVD triple exceeds dims");
    PayloadReader data = s.payload(tag("DAT", d));
    HosvdRep rep;
    rep.core = data.tensor(k[0], k[1], k[2]);
    rep.q = data.matrix<double>(dims[0], k[0]);
    rep.w = data.matrix<double>(dims[1], k[1]);
    rep.z = data.matrix<double>(dims[2], k[2]);
    data.finish();
    return rep;
}

void write_body(Sections& s, int d, const SequentialRep& rep, bool) {
    ByteWriter& h = s.add(tag("HDR", d));
    put_dims(h, std::array<Index, 3>{rep.u.rows(), rep.g.cols(), rep.u.faces()});
    h.u64(static_cast<std::uint64_t>(rep.k()));
    h.u64(static_cast<std::uint64_t>(rep.q()));
    h.f64(rep.stage1_discarded);
    h.f64(rep.stage2_discarded);
    put_transforms(s.add(tag("XFM", d)), {&rep.tm, &rep.tb});
    Payload data;
    data.tensor(rep.g);
    data.tensor(rep.u);
    data.tensor(rep.w);
    data.write(s.add(tag("DAT", d)));
}

SequentialRep read_sequential(const SectionMap& s, int d) {
    ByteReader h = s.reader(tag("HDR", d));
    const auto [m, p, n] = get_dims<3>(h);
    const Index k = get_index(h, std::min(m, p), "k");
    const Index q = get_index(h, std::min(n, p), "q");
    SequentialRep rep;
    rep.stage1_discarded = h.f64();
    rep.stage2_discarded = h.f64();
    ByteReader x = s.reader(tag("XFM", d));
    auto ts = get_transforms(x, 2);
    rep.tm = ts[0];
    rep.tb = ts[1];
    if (rep.tm.size() != n || rep.tb.size() != k) corrupted("transform sizes disagree with dims");
    PayloadReader data = s.payload(tag("DAT", d));
    rep.g = data.tensor(q, p, k);
    rep.u = data.tensor(m, k, n);
    rep.w = data.tensor(n, q, k);
    data.finish();
    return rep;
}

void write_body(Sections& s, int d, const FourDRep& rep, bool conjsym) {
    const auto [m, p, n, q] = rep.dims;
    ByteWriter& h = s.add(tag("HDR", d));
    put_dims(h, rep.dims);
    h.f64(rep.gamma);
    h.f64(rep.retained_energy);
    h.f64(rep.discarded_energy);
    put_transforms(s.add(tag("XFM", d)), {&rep.tm, &rep.tb});
    put_ranks(s.add(tag("RNK", d)), rep.rho);
    const bool complex_domain = rep.tm.is_complex() || rep.tb.is_complex();
    Payload data;
    std::visit(
        [&](const auto& faces) {
            if (static_cast<Index>(faces.size()) != n * q) throw std::invalid_argument("4D face count disagrees with dims");
            for (Index j = 0; j < q; ++j)
                for (Index i = 0; i < n; ++i) {
                    const Index flat = i + j * n;
                    const Index partner = rep.tm.conjugate_partner(i) + rep.tb.conjugate_partner(j) * n;
                    const auto& f = faces[static_cast<std::size_t>(flat)];
                    switch (face_storage(flat, partner, complex_domain, conjsym)) {
                        case FaceStorage::mirrored: {
                            const auto& src = faces[static_cast<std::size_t>(partner)];
                            require_conjugate(f.u, src.u);
                            require_conjugate(f.v, src.v);
                            if (f.sigma != src.sigma) throw std::invalid_argument("conjsym storage needs paired sigma");
                            break;
                        }
                        case FaceStorage::real_only:
                            require_real(f.u);
                            require_real(f.v);
                            data.matrix(f.u, true);
                            data.matrix(MatR(f.sigma));
                            data.matrix(f.v, true);
                            break;
                        case FaceStorage::full:
                            data.matrix(f.u);
                            data.matrix(MatR(f.sigma));
                            data.matrix(f.v);
                            break;
                    }
                }
        },
        rep.faces);
    (void)m;
    (void)p;
    data.write(s.add(tag("DAT", d)));
}

template <typename D>
std::vector<TruncatedTriplets<D>> read_fourd_faces(const FourDRep& rep, PayloadReader& data, bool conjsym) {
    const auto [m, p, n, q] = rep.dims;
    const bool complex_domain = rep.tm.is_complex() || rep.tb.is_complex();
    std::vector<TruncatedTriplets<D>> faces(static_cast<std::size_t>(n * q));
    for (Index j = 0; j < q; ++j)
        for (Index i = 0; i < n; ++i) {
            const Index flat = i + j * n;
            const Index partner = rep.tm.conjugate_partner(i) + rep.tb.conjugate_partner(j) * n;
            const Index r = rep.rho[static_cast<std::size_t>(flat)];
            auto& f = faces[static_cast<std::size_t>(flat)];
            const FaceStorage how = face_storage(flat, partner, complex_domain, conjsym);
            if (how == FaceStorage::mirrored) {
                const auto& src = faces[static_cast<std::size_t>(partner)];
                if (src.sigma.size() != r) corrupted("conjugate faces have different ranks");
                f = {src.u.conjugate(), src.sigma, src.v.conjugate()};
                continue;
            }
            const bool real_only = how == FaceStorage::real_only;
            f.u = data.matrix<D>(m, r, real_only);
            f.sigma = data.matrix<double>(r, 1);
            f.v = data.matrix<D>(p, r, real_only);
        }
    return faces;
}

FourDRep read_fourd(const SectionMap& s, int d, bool conjsym) {
    ByteReader h = s.reader(tag("HDR", d));
    FourDRep rep;
    rep.dims = get_dims<4>(h);
    const auto [m, p, n, q] = rep.dims;
    rep.gamma = h.f64();
    rep.retained_energy = h.f64();
    rep.discarded_energy = h.f64();
    ByteReader x = s.reader(tag("XFM", d));
    auto ts = get_transforms(x, 2);
    rep.tm = ts[0];
    rep.tb = ts[1];
    if (rep.tm.size() != n || rep.tb.size() != q) corrupted("transform sizes disagree with dims");
    ByteReader rk = s.reader(tag("RNK", d));
    rep.rho = get_ranks(rk, n * q, std::min(m, p));
    PayloadReader data = s.payload(tag("DAT", d));
    if (rep.tm.is_complex() || rep.tb.is_complex())
        rep.faces = read_fourd_faces<cplx>(rep, data, conjsym);
    else
        rep.faces = read_fourd_faces<double>(rep, data, conjsym);
    data.finish();
    return rep;
}

void write_side(Sections& s, int d, const SideRep& side, bool conjsym) {
    std::visit([&](const auto& r) { write_body(s, d, r, conjsym); }, side);
}

void write_body(Sections& s, int, const ConvexRep& rep, bool conjsym) {
    ByteWriter& h = s.add("CVX0");
    h.f64(rep.alpha);
    h.u8(static_cast<std::uint8_t>(rep.primary.index()));
    h.u8(static_cast<std::uint8_t>(rep.permuted.index()));
    write_side(s, 1, rep.primary, conjsym);
    write_side(s, 2, rep.permuted, conjsym);
}

SideRep read_side(const SectionMap& s, int d, std::uint8_t kind, bool conjsym) {
    if (kind == 0) return read_trank(s, d);
    if (kind == 1) return read_tsvdm2(s, d, conjsym);
    corrupted("unknown convex side kind");
}

ConvexRep read_convex(const SectionMap& s, bool conjsym) {
    ByteReader h = s.reader("CVX0");
    ConvexRep rep;
    rep.alpha = h.f64();
    const std::uint8_t k1 = h.u8(), k2 = h.u8();
    rep.primary = read_side(s, 1, k1, conjsym);
    rep.permuted = read_side(s, 2, k2, conjsym);
    return rep;
}

struct Parsed {
    ContainerInfo info;
    SectionMap sections;
};

Parsed parse(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4 || std::string(reinterpret_cast<const char*>(bytes.data()), 4) != "TTCR")
        throw FormatError("bad magic: not a TTCR container");
    ByteReader in(bytes, "payload");
    in.tag();
    Parsed out;
    out.info.version = in.u32();
    if (out.info.version != kContainerVersion)
        throw FormatError("unsupported container version " + std::to_string(out.info.version) + " (expected " +
                          std::to_string(kContainerVersion) + ")");
    const std::uint8_t method = in.u8();
    const std::uint8_t flags = in.u8();
    in.u8();
    in.u8();
    const std::uint32_t count = in.u32();
    if (method > static_cast<std::uint8_t>(Method::fourd)) corrupted("unknown method tag");
    out.info.method = static_cast<Method>(method);
    out.info.conjsym = (flags & 1u) != 0;

    if (count > (bytes.size() - kHeaderBytes) / kEntryBytes) throw FormatError("truncated payload");
    std::uint64_t end = kHeaderBytes + static_cast<std::uint64_t>(count) * kEntryBytes;
    for (std::uint32_t i = 0; i < count; ++i) {
        SectionInfo s;
        s.tag = in.tag();
        s.offset = in.u64();
        s.length = in.u64();
        if (s.offset != end) corrupted("section table is not contiguous");
        if (s.length > bytes.size() || s.offset > bytes.size() - s.length) throw FormatError("truncated payload");
        end = s.offset + s.length;
        out.info.sections.push_back(std::move(s));
    }
    if (bytes.size() < end + 4) throw FormatError("truncated payload");
    if (bytes.size() > end + 4) corrupted("trailing bytes after checksum");
    ByteReader tail(bytes.subspan(end), "payload");
    if (tail.u32() != crc_of(bytes.first(end))) throw FormatError("checksum mismatch");

    for (const SectionInfo& s : out.info.sections) {
        const auto body = bytes.subspan(s.offset, s.length);
        out.sections.put(s.tag, body);
        if (s.tag.rfind("DAT", 0) == 0) {
            ByteReader r(body, "payload");
            out.info.payload_floats += static_cast<Index>(r.u64());
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::tsvdm: return "tsvdm";
        case Method::tsvdm2: return "tsvdm2";
        case Method::matrix: return "matrix";
        case Method::hosvd: return "hosvd";
        case Method::sequential: return "sequential";
        case Method::convex: return "convex";
        case Method::fourd: return "fourd";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (std::uint8_t i = 0; i <= static_cast<std::uint8_t>(Method::fourd); ++i)
        if (to_string(static_cast<Method>(i)) == name) return static_cast<Method>(i);
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (tsvdm, tsvdm2, matrix, hosvd, sequential, convex, fourd)");
}

Method method_of(const AnyRep& rep) { return static_cast<Method>(rep.index()); }

std::vector<std::uint8_t> encode(const Container& c) {
    Sections sections;
    std::visit([&](const auto& r) { write_body(sections, 0, r, c.conjsym); }, c.rep);

    ByteWriter out;
    out.tag("TTCR");
    out.u32(kContainerVersion);
    out.u8(static_cast<std::uint8_t>(method_of(c.rep)));
    out.u8(c.conjsym ? 1 : 0);
    out.u8(0);
    out.u8(0);
    out.u32(static_cast<std::uint32_t>(sections.list.size()));
    std::uint64_t offset = kHeaderBytes + sections.list.size() * kEntryBytes;
    for (const auto& [t, body] : sections.list) {
        out.tag(t);
        out.u64(offset);
        out.u64(body.size());
        offset += body.size();
    }
    for (const auto& [t, body] : sections.list) out.bytes(body.buffer());
    const std::uint32_t crc = crc_of(out.buffer());
    out.u32(crc);
    return out.take();
}

Container decode(std::span<const std::uint8_t> bytes) {
    const Parsed p = parse(bytes);
    Container c;
    c.conjsym = p.info.conjsym;
    switch (p.info.method) {
        case Method::tsvdm: c.rep = read_trank(p.sections, 0); break;
        case Method::tsvdm2: c.rep = read_tsvdm2(p.sections, 0, c.conjsym); break;
        case Method::matrix: c.rep = read_matrix(p.sections, 0); break;
        case Method::hosvd: c.rep = read_hosvd(p.sections, 0); break;
        case Method::sequential: c.rep = read_sequential(p.sections, 0); break;
        case Method::convex: c.rep = read_convex(p.sections, c.conjsym); break;
        case Method::fourd: c.rep = read_fourd(p.sections, 0, c.conjsym); break;
    }
    return c;
}

void save(const Container& c, const std::filesystem::path& path) { write_file(path, encode(c)); }
Container load(const std::filesystem::path& path) { return decode(read_file(path)); }

ContainerInfo inspect(std::span<const std::uint8_t> bytes) {
    decode(bytes);  // full validation
    return parse(bytes).info;
}

StorageCount storage_count(const Container& c) {
    return std::visit(
        [&](const auto& r) -> StorageCount {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, TSvdmIIRep> || std::is_same_v<R, ConvexRep> || std::is_same_v<R, FourDRep>)
                return storage_count(r, c.conjsym);
            else
                return storage_count(r);
        },
        c.rep);
}

std::vector<Index> original_dims(const Container& c) {
    return std::visit(
        [](const auto& r) -> std::vector<Index> {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, TrankRep>) return {r.u.rows(), r.c.cols(), r.u.faces()};
            else if constexpr (std::is_same_v<R, TSvdmIIRep> || std::is_same_v<R, MatrixSvdRep>)
                return {r.dims[0], r.dims[1], r.dims[2]};
            else if constexpr (std::is_same_v<R, HosvdRep>) {
                const auto d = r.dims();
                return {d[0], d[1], d[2]};
            } else if constexpr (std::is_same_v<R, SequentialRep>)
                return {r.u.rows(), r.g.cols(), r.u.faces()};
            else if constexpr (std::is_same_v<R, ConvexRep>) {
                const Tensor3 x = reconstruct(r.primary);
                return {x.rows(), x.cols(), x.faces()};
            } else
                return {r.dims[0], r.dims[1], r.dims[2], r.dims[3]};
        },
        c.rep);
}

AnyTensor reconstruct(const Container& c) {
    return std::visit([](const auto& r) -> AnyTensor { return r.reconstruct(); }, c.rep);
}

}  // namespace tcomp
