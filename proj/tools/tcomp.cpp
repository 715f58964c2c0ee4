// tcomp: compress, inspect and evaluate tensors with transform-based SVDs.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tcomp/fourd.hpp"
#include "tcomp/pipeline.hpp"
#include "tcomp/synthetic.hpp"

namespace fs = std::filesystem;
using namespace tcomp;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string part; std::getline(in, part, sep);)
        if (!part.empty()) out.push_back(part);
    return out;
}

std::vector<Index> parse_ints(const std::string& s, std::size_t count, const char* what) {
    std::vector<Index> out;
    for (const auto& part : split(s, ',')) {
        std::size_t used = 0;
        const long long v = std::stoll(part, &used);
        if (used != part.size() || v < 0) throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
        out.push_back(static_cast<Index>(v));
    }
    if (out.size() != count)
        throw std::invalid_argument(std::string(what) + " expects " + std::to_string(count) + " comma-separated integers");
    return out;
}

// Flags shared by compress and sweep.
struct Flags {
    std::string method = "tsvdm2";
    std::string transform = "dft";
    std::uint64_t seed = 0;
    std::optional<double> gamma;
    std::optional<Index> trank;
    std::string triple, pair, patch;
    double alpha = 0.5;
    std::string orientation = "lateral";
    bool conjsym = false;
    std::string output;

    void add_to(CLI::App* app, bool sweeping) {
        app->add_option("--method", method, "tsvdm, tsvdm2, matrix, hosvd, sequential, convex, fourd")
            ->capture_default_str();
        app->add_option("--transform", transform, "identity, dft, dct, haar, randorth")->capture_default_str();
        app->add_option("--seed", seed, "seed for randorth transforms")->capture_default_str();
        app->add_option("--orientation", orientation,
                        "image placement (lateral, lateral-transposed, frontal); for --method matrix the "
                        "unfolding (lateral, frontal)")
            ->capture_default_str();
        app->add_option("--patch", patch, "x,y: split images into an x-by-y patch grid (fourth-order input)");
        app->add_flag("--conjsym", conjsym, "store one face per conjugate pair under the DFT");
        app->add_option("--gamma", gamma, "energy fraction in (0, 1]");
        app->add_option("--trank", trank, "t-rank / matrix rank k");
        app->add_option("--triple", triple, "k1,k2,k3 for hosvd");
        app->add_option("--alpha", alpha, "convex weight in [0, 1]")->capture_default_str();
        app->add_option("--pair", pair, "k,q for sequential");
        app->add_option("--output,-o", output, sweeping ? "CSV file (default: stdout)" : "output file")
            ->required(!sweeping);
    }

    CompressOptions options() const {
        CompressOptions o;
        o.transform = parse_transform_kind(transform);
        if (o.transform == TransformKind::explicit_matrix)
            throw std::invalid_argument("explicit transforms cannot be chosen on the command line");
        o.seed = seed;
        o.conjsym = conjsym;
        o.gamma = gamma;
        o.trank = trank;
        o.alpha = alpha;
        if (!triple.empty()) {
            const auto t = parse_ints(triple, 3, "--triple");
            o.triple = Triple{t[0], t[1], t[2]};
        }
        if (!pair.empty()) {
            const auto t = parse_ints(pair, 2, "--pair");
            o.pair = std::pair{t[0], t[1]};
        }
        if (parse_method(method) == Method::matrix) o.orientation = parse_matrix_orientation(orientation);
        return o;
    }
};

bool is_image_input(const fs::path& p) { return fs::is_directory(p) || p.extension() == ".pgm"; }

// Images, TEN3/TEN4 files, or a TTCR container (reconstructed).
AnyTensor load_input(const fs::path& path, const Flags& f) {
    if (is_image_input(path)) {
        if (!f.patch.empty()) {
            const auto xy = parse_ints(f.patch, 2, "--patch");
            std::vector<MatR> ims = fs::is_directory(path) ? load_images(path) : std::vector<MatR>{read_pgm(path)};
            return patchify(ims, xy[0], xy[1]);
        }
        const std::string o = parse_method(f.method) == Method::matrix ? "lateral" : f.orientation;
        return load_image_stack(path, parse_image_orientation(o));
    }
    const auto bytes = read_file(path);
    if (bytes.size() >= 4 && std::string(bytes.begin(), bytes.begin() + 4) == "TTCR") return reconstruct(decode(bytes));
    return decode_tensor(bytes);
}

std::string dims_string(const std::vector<Index>& d) {
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "x" : "") + std::to_string(d[i]);
    return s;
}

std::vector<Index> dims_of(const AnyTensor& t) {
    return std::visit([](const auto& a) { return std::vector<Index>(a.dims().begin(), a.dims().end()); }, t);
}

void write_frames(const fs::path& dir, const std::vector<MatR>& frames) {
    fs::create_directories(dir);
    char name[32];
    for (std::size_t i = 0; i < frames.size(); ++i) {
        std::snprintf(name, sizeof name, "frame_%05zu.pgm", i);
        write_pgm(dir / name, frames[i]);
    }
}

std::vector<MatR> unstack(const Tensor3& a, ImageOrientation o) {
    std::vector<MatR> out;
    switch (o) {
        case ImageOrientation::lateral:
        case ImageOrientation::lateral_transposed:
            for (Index s = 0; s < a.cols(); ++s) {
                MatR im(a.rows(), a.faces());
                for (Index c = 0; c < a.faces(); ++c)
                    for (Index r = 0; r < a.rows(); ++r) im(r, c) = a(r, s, c);
                out.push_back(o == ImageOrientation::lateral ? im : MatR(im.transpose()));
            }
            break;
        case ImageOrientation::frontal:
            for (Index s = 0; s < a.faces(); ++s) out.push_back(a.face(s));
            break;
    }
    return out;
}

void print_report(const std::string& label, const AnyTensor& original, const Container& c) {
    const StorageCount s = storage_count(c);
    const AnyTensor x = reconstruct(c);
    const double re = std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            return relative_error(a, std::get<T>(x));
        },
        original);
    const Index n = std::visit([](const auto& a) { return a.size(); }, original);
    std::printf("%s method=%s dims=%s payload_floats=%lld integers=%lld compression_ratio=%.6g relative_error=%.6g\n",
                label.c_str(), std::string(to_string(method_of(c.rep))).c_str(), dims_string(dims_of(original)).c_str(),
                static_cast<long long>(s.floats), static_cast<long long>(s.integers), compression_ratio(n, s), re);
}

std::vector<std::string> default_grid(Method m, const AnyTensor& a) {
    const auto d = dims_of(a);
    switch (m) {
        case Method::tsvdm2:
        case Method::fourd: return {"0.5", "0.8", "0.9", "0.95", "0.99", "0.995", "1.0"};
        case Method::matrix: return {"0.5", "0.8", "0.9", "0.95", "0.99", "0.995", "1.0"};
        case Method::hosvd: return {"0.1", "0.25", "0.5", "0.75", "1.0"};
        case Method::convex: return {"0", "0.25", "0.5", "0.75", "1"};
        case Method::tsvdm:
        case Method::sequential: {
            std::vector<std::string> g;
            const Index top = std::min(d[0], d[1]);
            for (Index k = 1; k <= top; k = k < 4 ? k + 1 : k * 2) {
                if (m == Method::tsvdm) g.push_back(std::to_string(k));
                else g.push_back(std::to_string(std::min(k, d[1])) + "," + std::to_string(std::min(d[1], d[2])));
            }
            return g;
        }
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensor compression with transform-based (star-M) SVDs"};
    app.require_subcommand(1);

    Flags cf;
    std::string compress_in;
    auto* compress_cmd = app.add_subcommand("compress", "compress a tensor or image stack into a TTCR container");
    compress_cmd->add_option("input", compress_in, "TEN3/TEN4 file, .pgm image or directory of .pgm images")
        ->required();
    cf.add_to(compress_cmd, false);

    std::string recon_in, recon_out, recon_frames, recon_patch, recon_orientation = "lateral";
    auto* recon_cmd = app.add_subcommand("reconstruct", "expand a TTCR container to a raw tensor or images");
    recon_cmd->add_option("input", recon_in, "TTCR container")->required();
    recon_cmd->add_option("--output,-o", recon_out, "TEN3/TEN4 output file");
    recon_cmd->add_option("--frames", recon_frames, "also write the frames as .pgm images into this directory");
    recon_cmd->add_option("--orientation", recon_orientation, "image placement used at compression time")
        ->capture_default_str();
    recon_cmd->add_option("--patch", recon_patch, "x,y patch grid used at compression time");

    std::string info_in;
    bool info_json = false;
    auto* info_cmd = app.add_subcommand("info", "describe a TTCR container or raw tensor file");
    info_cmd->add_option("input", info_in)->required();
    info_cmd->add_flag("--json", info_json, "machine-readable output");

    Flags sf;
    std::string sweep_in, sweep_grid;
    unsigned sweep_threads = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "CR / RE table over a parameter grid (CSV)");
    sweep_cmd->add_option("input", sweep_in)->required();
    sf.add_to(sweep_cmd, true);
    sweep_cmd->add_option("--grid", sweep_grid,
                          "';'-separated cells: k | gamma | k or gamma | k1,k2,k3 or ratio | k,q | alpha "
                          "(per method)");
    sweep_cmd->add_option("--threads", sweep_threads, "worker threads (0 = all cores)")->capture_default_str();

    std::string gen_kind = "lowrank_plus_noise", gen_dims = "32,16,32", gen_out;
    std::uint64_t gen_seed = 0;
    double gen_noise = -1.0;
    Index gen_rank = 0;
    auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic TEN3 tensor");
    gen_cmd->add_option("kind", gen_kind, "circulant_slices, random_dense, lowrank_plus_noise")->capture_default_str();
    gen_cmd->add_option("--dims", gen_dims, "m,p,n")->capture_default_str();
    gen_cmd->add_option("--seed", gen_seed)->capture_default_str();
    gen_cmd->add_option("--noise", gen_noise, "relative noise level (negative = kind default)");
    gen_cmd->add_option("--rank", gen_rank, "t-rank of the low-rank part (0 = auto)");
    gen_cmd->add_option("--output,-o", gen_out)->required();

    std::string cmp_a, cmp_b;
    auto* cmp_cmd = app.add_subcommand("compare", "relative error between two tensors (TEN or TTCR)");
    cmp_cmd->add_option("reference", cmp_a)->required();
    cmp_cmd->add_option("approximation", cmp_b)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compress_cmd) {
            const Method m = parse_method(cf.method);
            const AnyTensor a = load_input(compress_in, cf);
            const CompressOptions opt = cf.options();
            const Container c = std::holds_alternative<Tensor4>(a)
                                    ? (m == Method::fourd ? compress(std::get<Tensor4>(a), opt)
                                                          : throw std::invalid_argument(
                                                                "fourth-order input needs --method fourd"))
                                    : compress(std::get<Tensor3>(a), m, opt);
            save(c, cf.output);
            print_report(cf.output, a, c);
        } else if (*recon_cmd) {
            if (recon_out.empty() && recon_frames.empty())
                throw std::invalid_argument("reconstruct needs --output and/or --frames");
            const AnyTensor x = reconstruct(load(recon_in));
            if (!recon_out.empty()) std::visit([&](const auto& a) { save_tensor(recon_out, a); }, x);
            if (!recon_frames.empty()) {
                if (const auto* t4 = std::get_if<Tensor4>(&x)) {
                    if (recon_patch.empty()) throw std::invalid_argument("fourth-order frames need --patch x,y");
                    const auto xy = parse_ints(recon_patch, 2, "--patch");
                    write_frames(recon_frames, unpatchify(*t4, xy[0], xy[1], xy[0] * t4->extent(1),
                                                          xy[1] * t4->extent(3)));
                } else {
                    write_frames(recon_frames,
                                 unstack(std::get<Tensor3>(x), parse_image_orientation(recon_orientation)));
                }
            }
            std::printf("%s dims=%s\n", recon_in.c_str(), dims_string(dims_of(x)).c_str());
        } else if (*info_cmd) {
            const auto bytes = read_file(info_in);
            nlohmann::ordered_json j;
            if (bytes.size() >= 4 && std::string(bytes.begin(), bytes.begin() + 4) == "TTCR") {
                const ContainerInfo info = inspect(bytes);
                const Container c = decode(bytes);
                const auto dims = original_dims(c);
                Index orig = 1;
                for (Index d : dims) orig *= d;
                const StorageCount s = storage_count(c);
                j["format"] = "TTCR";
                j["version"] = info.version;
                j["method"] = to_string(info.method);
                j["conjsym"] = info.conjsym;
                j["dims"] = dims;
                j["payload_floats"] = s.floats;
                j["payload_integers"] = s.integers;
                j["compression_ratio"] = compression_ratio(orig, s);
                j["file_bytes"] = bytes.size();
                for (const auto& sec : info.sections)
                    j["sections"].push_back({{"tag", sec.tag}, {"offset", sec.offset}, {"length", sec.length}});
            } else {
                const AnyTensor t = decode_tensor(bytes);
                j["format"] = std::holds_alternative<Tensor3>(t) ? "TEN3" : "TEN4";
                j["dims"] = dims_of(t);
                j["frobenius_norm"] = std::visit([](const auto& a) { return frobenius_norm(a); }, t);
            }
            if (info_json) {
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& [k, v] : j.items()) {
                    if (k == "sections") {
                        for (const auto& sec : v)
                            std::printf("section %s offset=%llu length=%llu\n",
                                        sec["tag"].get<std::string>().c_str(),
                                        static_cast<unsigned long long>(sec["offset"].get<std::uint64_t>()),
                                        static_cast<unsigned long long>(sec["length"].get<std::uint64_t>()));
                    } else {
                        std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
                    }
                }
            }
        } else if (*sweep_cmd) {
            const Method m = parse_method(sf.method);
            const AnyTensor a = load_input(sweep_in, sf);
            const std::vector<std::string> grid = sweep_grid.empty() ? default_grid(m, a) : split(sweep_grid, ';');
            CompressOptions opt = sf.options();
            std::vector<SweepRow> rows;
            if (const auto* t4 = std::get_if<Tensor4>(&a)) {
                if (m != Method::fourd) throw std::invalid_argument("fourth-order input needs --method fourd");
                rows = sweep(*t4, grid, opt, sweep_threads);
            } else {
                rows = sweep(std::get<Tensor3>(a), m, grid, opt, sweep_threads);
            }
            const std::string csv = to_csv(rows);
            if (sf.output.empty()) {
                std::cout << csv;
            } else {
                std::ofstream(sf.output) << csv;
            }
        } else if (*gen_cmd) {
            const auto d = parse_ints(gen_dims, 3, "--dims");
            SyntheticOptions o;
            o.noise = gen_noise;
            o.rank = gen_rank;
            const Tensor3 a = gen_synthetic(parse_synthetic_kind(gen_kind), {d[0], d[1], d[2]}, gen_seed, o);
            save_tensor(gen_out, a);
            std::printf("%s dims=%s kind=%s seed=%llu\n", gen_out.c_str(), dims_string(d).c_str(), gen_kind.c_str(),
                        static_cast<unsigned long long>(gen_seed));
        } else if (*cmp_cmd) {
            Flags none;
            const AnyTensor a = load_input(cmp_a, none), b = load_input(cmp_b, none);
            if (dims_of(a) != dims_of(b))
                throw std::invalid_argument("dimension mismatch: " + dims_string(dims_of(a)) + " vs " +
                                            dims_string(dims_of(b)));
            const double re = std::visit(
                [&](const auto& x) { return relative_error(x, std::get<std::decay_t<decltype(x)>>(b)); }, a);
            double max_abs = 0.0;
            std::visit(
                [&](const auto& x) {
                    const auto& y = std::get<std::decay_t<decltype(x)>>(b);
                    for (Index t = 0; t < x.size(); ++t) max_abs = std::max(max_abs, std::abs(x.data()[t] - y.data()[t]));
                },
                a);
            std::printf("relative_error=%.10g max_abs_difference=%.10g\n", re, max_abs);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
