#include "tcomp/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace tcomp {
namespace {

namespace fs = std::filesystem;

std::uint32_t checked_extent(Index e) {
    if (e < 0 || e > std::numeric_limits<std::uint32_t>::max())
        throw DimensionError("tensor extent does not fit the file format");
    return static_cast<std::uint32_t>(e);
}

template <std::size_t N>
std::array<Index, N> read_header(ByteReader& in) {
    const std::uint32_t version = in.u32();
    if (version != kTensorFileVersion)
        throw FormatError("unsupported tensor file version " + std::to_string(version) + " (expected " +
                          std::to_string(kTensorFileVersion) + ")");
    std::array<Index, N> dims{};
    for (auto& d : dims) d = in.u32();
    return dims;
}

std::vector<double> read_values(ByteReader& in, Index count) {
    if (in.remaining() < static_cast<std::size_t>(count) * 8) throw FormatError("truncated payload");
    std::vector<double> v = in.f64s(static_cast<std::size_t>(count));
    if (in.remaining() != 0) throw FormatError("trailing bytes after tensor payload");
    return v;
}

// Next whitespace-delimited PGM header token, skipping '#' comments.
std::string pgm_token(std::span<const std::uint8_t> b, std::size_t& pos) {
    while (pos < b.size()) {
        if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else if (std::isspace(b[pos])) {
            ++pos;
        } else {
            break;
        }
    }
    std::string tok;
    while (pos < b.size() && !std::isspace(b[pos]) && b[pos] != '#') tok.push_back(static_cast<char>(b[pos++]));
    if (tok.empty()) throw FormatError("truncated PGM header");
    return tok;
}

long pgm_number(std::span<const std::uint8_t> b, std::size_t& pos) {
    const std::string tok = pgm_token(b, pos);
    if (!std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw FormatError("malformed PGM header field '" + tok + "'");
    return std::stol(tok);
}

}  // namespace

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<std::uint8_t> encode_tensor(const Tensor3& a) {
    ByteWriter w;
    w.tag("TEN3");
    w.u32(kTensorFileVersion);
    for (Index d : a.dims()) w.u32(checked_extent(d));
    w.f64s(a.values());
    return w.take();
}

std::vector<std::uint8_t> encode_tensor(const Tensor4& a) {
    ByteWriter w;
    w.tag("TEN4");
    w.u32(kTensorFileVersion);
    for (Index d : a.dims()) w.u32(checked_extent(d));
    w.f64s(a.values());
    return w.take();
}

AnyTensor decode_tensor(std::span<const std::uint8_t> bytes) {
    ByteReader in(bytes, "tensor header");
    const std::string magic = in.tag();
    if (magic == "TEN3") {
        const auto d = read_header<3>(in);
        return Tensor3(d[0], d[1], d[2], read_values(in, d[0] * d[1] * d[2]));
    }
    if (magic == "TEN4") {
        const auto d = read_header<4>(in);
        return Tensor4(d[0], d[1], d[2], d[3], read_values(in, d[0] * d[1] * d[2] * d[3]));
    }
    throw FormatError("bad magic: not a TEN3/TEN4 tensor file");
}

void save_tensor(const fs::path& path, const Tensor3& a) { write_file(path, encode_tensor(a)); }
void save_tensor(const fs::path& path, const Tensor4& a) { write_file(path, encode_tensor(a)); }
AnyTensor load_tensor(const fs::path& path) { return decode_tensor(read_file(path)); }

Tensor3 load_tensor3(const fs::path& path) {
    AnyTensor t = load_tensor(path);
    if (auto* a = std::get_if<Tensor3>(&t)) return std::move(*a);
    throw FormatError("'" + path.string() + "' holds a fourth-order tensor, expected third-order");
}

Tensor4 load_tensor4(const fs::path& path) {
    AnyTensor t = load_tensor(path);
    if (auto* a = std::get_if<Tensor4>(&t)) return std::move(*a);
    throw FormatError("'" + path.string() + "' holds a third-order tensor, expected fourth-order");
}

// ---------------------------------------------------------------------------

MatR read_pgm(const fs::path& path) {
    const std::vector<std::uint8_t> b = read_file(path);
    if (b.size() < 2 || b[0] != 'P' || b[1] != '5') throw FormatError("bad magic: '" + path.string() + "' is not a P5 PGM");
    std::size_t pos = 2;
    const long width = pgm_number(b, pos), height = pgm_number(b, pos), maxval = pgm_number(b, pos);
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535) throw FormatError("invalid PGM header in '" + path.string() + "'");
    ++pos;  // single whitespace byte before the raster
    const std::size_t bytes_per = maxval < 256 ? 1 : 2;
    const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * bytes_per;
    if (b.size() < pos + need) throw FormatError("truncated payload in '" + path.string() + "'");
    MatR im(height, width);
    for (long r = 0; r < height; ++r)
        for (long c = 0; c < width; ++c) {
            const std::size_t at = pos + (static_cast<std::size_t>(r) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)) * bytes_per;
            im(r, c) = bytes_per == 1 ? b[at] : (b[at] << 8 | b[at + 1]);
        }
    return im;
}

void write_pgm(const fs::path& path, const MatR& image, int maxval) {
    if (maxval <= 0 || maxval > 65535) throw std::invalid_argument("PGM maxval must lie in [1, 65535]");
    std::ostringstream header;
    header << "P5\n" << image.cols() << " " << image.rows() << "\n" << maxval << "\n";
    const std::string h = header.str();
    std::vector<std::uint8_t> out(h.begin(), h.end());
    for (Index r = 0; r < image.rows(); ++r)
        for (Index c = 0; c < image.cols(); ++c) {
            const long v = std::lround(std::clamp(image(r, c), 0.0, static_cast<double>(maxval)));
            if (maxval >= 256) out.push_back(static_cast<std::uint8_t>(v >> 8));
            out.push_back(static_cast<std::uint8_t>(v & 0xff));
        }
    write_file(path, out);
}

std::string_view to_string(ImageOrientation o) {
    switch (o) {
        case ImageOrientation::lateral: return "lateral";
        case ImageOrientation::lateral_transposed: return "lateral-transposed";
        case ImageOrientation::frontal: return "frontal";
    }
    return "unknown";
}

ImageOrientation parse_image_orientation(std::string_view name) {
    if (name == "lateral") return ImageOrientation::lateral;
    if (name == "lateral-transposed" || name == "lateral_transposed") return ImageOrientation::lateral_transposed;
    if (name == "frontal") return ImageOrientation::frontal;
    throw std::invalid_argument("unknown image orientation '" + std::string(name) +
                                "' (lateral, lateral-transposed, frontal)");
}

Tensor3 stack_images(const std::vector<MatR>& images, ImageOrientation o) {
    if (images.empty()) throw std::invalid_argument("no images to stack");
    const Index m = images.front().rows(), n = images.front().cols(), l = static_cast<Index>(images.size());
    for (const MatR& im : images)
        if (im.rows() != m || im.cols() != n)
            throw DimensionError("images differ in size: " + std::to_string(m) + "x" + std::to_string(n) + " vs " +
                                 std::to_string(im.rows()) + "x" + std::to_string(im.cols()));
    Tensor3 a;
    switch (o) {
        case ImageOrientation::lateral:
            a = Tensor3(m, l, n);
            for (Index s = 0; s < l; ++s)
                for (Index c = 0; c < n; ++c)
                    for (Index r = 0; r < m; ++r) a(r, s, c) = images[static_cast<std::size_t>(s)](r, c);
            break;
        case ImageOrientation::lateral_transposed:
            a = Tensor3(n, l, m);
            for (Index s = 0; s < l; ++s)
                for (Index c = 0; c < n; ++c)
                    for (Index r = 0; r < m; ++r) a(c, s, r) = images[static_cast<std::size_t>(s)](r, c);
            break;
        case ImageOrientation::frontal:
            a = Tensor3(m, n, l);
            for (Index s = 0; s < l; ++s) a.face(s) = images[static_cast<std::size_t>(s)];
            break;
    }
    return a;
}

std::vector<MatR> load_images(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
    if (files.empty()) throw std::invalid_argument("no .pgm images in '" + dir.string() + "'");
    std::sort(files.begin(), files.end());
    std::vector<MatR> images;
    images.reserve(files.size());
    for (const auto& f : files) images.push_back(read_pgm(f));
    return images;
}

Tensor3 load_image_stack(const fs::path& path, ImageOrientation o) {
    if (fs::is_directory(path)) return stack_images(load_images(path), o);
    if (path.extension() == ".pgm") return stack_images({read_pgm(path)}, o);
    return load_tensor3(path);
}

}  // namespace tcomp
