#include "tcomp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

namespace tcomp {
namespace {

template <typename T>
T parse_number(std::string_view s, const char* what) {
    T v{};
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size())
        throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t at = s.find(sep, start);
        out.push_back(s.substr(start, at - start));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return out;
}

double need_gamma(const CompressOptions& o) {
    if (!o.gamma) throw std::invalid_argument("this method needs --gamma");
    if (!(*o.gamma > 0.0 && *o.gamma <= 1.0)) throw std::invalid_argument("gamma must lie in (0, 1]");
    return *o.gamma;
}

Index need_trank(const CompressOptions& o) {
    if (!o.trank) throw std::invalid_argument("this method needs --trank");
    return *o.trank;
}

template <typename T>
double error_of(const T& a, const Container& c) {
    return relative_error(a, std::get<T>(reconstruct(c)));
}

template <typename T, typename Cell>
std::vector<SweepRow> run_grid(const T& a, Method method, const std::vector<std::string>& grid, unsigned threads,
                               Cell&& cell) {
    std::vector<SweepRow> rows(grid.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < grid.size();) {
            SweepRow& row = rows[i];
            row.method = method;
            row.parameter = grid[i];
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const Container c = cell(grid[i]);
                const StorageCount s = storage_count(c);
                row.payload_floats = s.floats;
                row.payload_integers = s.integers;
                row.compression_ratio = compression_ratio(a.size(), s);
                row.relative_error = error_of(a, c);
            } catch (const std::exception& e) {
                row.status = e.what();
            }
            row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
        work();
    }  // joined before rows leaves
    return rows;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

Transform make_transform(const CompressOptions& opt, Index n, int which) {
    // the golden-ratio offset keeps the side transforms' streams apart
    const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(which) * 0x9e3779b97f4a7c15ull;
    return Transform::make(opt.transform, n, seed);
}

Container compress(const Tensor3& a, Method method, const CompressOptions& opt) {
    const Index m = a.rows(), p = a.cols(), n = a.faces();
    Container c;
    c.conjsym = opt.conjsym;
    switch (method) {
        case Method::tsvdm: c.rep = compress_trank(a, make_transform(opt, n), need_trank(opt)); break;
        case Method::tsvdm2: c.rep = tsvdm2(a, make_transform(opt, n), need_gamma(opt)); break;
        case Method::matrix:
            if (opt.trank)
                c.rep = matrix_truncated_svd(a, opt.orientation, *opt.trank);
            else
                c.rep = matrix_truncated_svd_energy(a, opt.orientation, need_gamma(opt));
            break;
        case Method::hosvd:
            if (opt.triple)
                c.rep = tr_hosvd(a, *opt.triple);
            else if (opt.hosvd_ratio)
                c.rep = tr_hosvd(a, proportional_triple({m, p, n}, *opt.hosvd_ratio));
            else
                throw std::invalid_argument("hosvd needs --triple k1,k2,k3");
            break;
        case Method::sequential: {
            if (!opt.pair) throw std::invalid_argument("sequential needs --pair k,q");
            const auto [k, q] = *opt.pair;
            c.rep = sequential_tsvdmb(a, make_transform(opt, n), make_transform(opt, k, 1), k, q);
            break;
        }
        case Method::convex: {
            ConvexSpec spec;
            if (opt.trank)
                spec = TrankPair{*opt.trank, *opt.trank};
            else
                spec = EnergyPair{need_gamma(opt), *opt.gamma};
            c.rep = convex_combo(a, make_transform(opt, n), make_transform(opt, m, 1), spec, opt.alpha).rep;
            break;
        }
        case Method::fourd: throw std::invalid_argument("fourd compresses fourth-order (TEN4) tensors");
    }
    return c;
}

Container compress(const Tensor4& a, const CompressOptions& opt) {
    Container c;
    c.conjsym = opt.conjsym;
    c.rep = tsvdm2_4d(a, make_transform(opt, a.extent(3)), make_transform(opt, a.extent(4), 1), need_gamma(opt));
    return c;
}

void apply_parameter(Method method, const std::string& value, CompressOptions& opt) {
    switch (method) {
        case Method::tsvdm: opt.trank = parse_number<Index>(value, "t-rank"); break;
        case Method::tsvdm2:
        case Method::fourd: opt.gamma = parse_number<double>(value, "gamma"); break;
        case Method::matrix:
            if (value.find_first_of(".eE") == std::string::npos) {
                opt.trank = parse_number<Index>(value, "rank");
            } else {
                opt.trank.reset();
                opt.gamma = parse_number<double>(value, "gamma");
            }
            break;
        case Method::hosvd: {
            const auto parts = split(value, ',');
            if (parts.size() == 3) {
                opt.triple = Triple{parse_number<Index>(parts[0], "k1"), parse_number<Index>(parts[1], "k2"),
                                    parse_number<Index>(parts[2], "k3")};
            } else {
                const double r = parse_number<double>(value, "mode ratio");
                if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("mode ratio must lie in (0, 1]");
                opt.triple.reset();
                opt.hosvd_ratio = r;
            }
            break;
        }
        case Method::sequential: {
            const auto parts = split(value, ',');
            if (parts.size() != 2) throw std::invalid_argument("expected k,q but got '" + value + "'");
            opt.pair = {parse_number<Index>(parts[0], "k"), parse_number<Index>(parts[1], "q")};
            break;
        }
        case Method::convex: opt.alpha = parse_number<double>(value, "alpha"); break;
    }
}

std::vector<SweepRow> sweep(const Tensor3& a, Method method, const std::vector<std::string>& grid,
                            const CompressOptions& base, unsigned threads) {
    return run_grid(a, method, grid, threads, [&](const std::string& v) {
        CompressOptions opt = base;
        apply_parameter(method, v, opt);
        return compress(a, method, opt);
    });
}

std::vector<SweepRow> sweep(const Tensor4& a, const std::vector<std::string>& grid, const CompressOptions& base,
                            unsigned threads) {
    return run_grid(a, Method::fourd, grid, threads, [&](const std::string& v) {
        CompressOptions opt = base;
        apply_parameter(Method::fourd, v, opt);
        return compress(a, opt);
    });
}

std::string to_csv(const std::vector<SweepRow>& rows, bool header) {
    std::ostringstream out;
    out.precision(10);
    if (header) out << "method,parameter,compression_ratio,relative_error,seconds,payload_floats,payload_integers,status\n";
    for (const SweepRow& r : rows) {
        out << to_string(r.method) << ',' << csv_field(r.parameter) << ',';
        if (r.ok())
            out << r.compression_ratio << ',' << r.relative_error << ',';
        else
            out << ",,";
        out << r.seconds << ',' << r.payload_floats << ',' << r.payload_integers << ',' << csv_field(r.status) << '\n';
    }
    return out.str();
}

}  // namespace tcomp
