// Acceptance run: one PASS/FAIL line per criterion; exit status reflects the
// gated criteria (1-12).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/SVD>

#include "tcomp/fourd.hpp"
#include "tcomp/mprod.hpp"
#include "tcomp/pipeline.hpp"
#include "tcomp/synthetic.hpp"
#include "test_util.hpp"

using namespace tcomp;
using testing::random_tensor;
using testing::random_tensor4;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Transform make(TransformKind k, Index n, std::uint64_t seed = 1) { return Transform::make(k, n, seed); }

// Scaled-unitary kinds usable at size n.
std::vector<Transform> kinds_at(Index n, std::uint64_t seed) {
    std::vector<Transform> out{make(TransformKind::identity, n), make(TransformKind::dft_unnormalized, n),
                               make(TransformKind::dct_orthogonal, n),
                               make(TransformKind::random_orthogonal, n, seed)};
    if ((n & (n - 1)) == 0) out.push_back(make(TransformKind::haar_orthogonal, n));
    return out;
}

double matrix_error(const Tensor3& a, Index k) {
    return frobenius_norm(a - matrix_truncated_svd(a, MatrixOrientation::lateral, k).reconstruct());
}

// ---------------------------------------------------------------------------

Outcome exact_reconstruction() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int count = 0;
    for (int i = 0; i < 25; ++i) {
        const Tensor3 a = random_tensor(8, 6, 5, 100 + i);
        const std::vector<TransformKind> ks{TransformKind::identity, TransformKind::dft_unnormalized,
                                            TransformKind::dct_orthogonal, TransformKind::random_orthogonal};
        for (auto k : ks) {
            worst = std::max(worst, relative_error(a, tsvdm(a, make(k, 5, 7 + i)).reconstruct()));
            ++count;
        }
        // haar needs a power-of-two third mode
        for (Index n : {4, 8}) {
            const Tensor3 b = random_tensor(8, 6, n, 200 + i);
            worst = std::max(worst, relative_error(b, tsvdm(b, make(TransformKind::haar_orthogonal, n)).reconstruct()));
            ++count;
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-10 && secs < 2.0,
            fmt("%d reconstructions (haar on 8x6x4, 8x6x8), max RE %.2e, %.3f s", count, worst, secs)};
}

Outcome worked_example() {
    const Tensor3 a = testing::worked_example();
    const TSvdmFactors f = tsvdm(a, make(TransformKind::dft_unnormalized, 2));
    const double tensor_err = frobenius_norm(a - truncate_trank(f, 1).reconstruct());
    const double matrix_err = matrix_error(a, 1);
    return {std::abs(tensor_err - 0.59236) <= 1e-4 && std::abs(matrix_err - 1.0) <= 1e-10,
            fmt("t-SVDM k=1 error %.6f (0.59236), matrix rank-1 error %.12f (1)", tensor_err, matrix_err)};
}

Outcome dominance() {
    std::mt19937_64 rng(3);
    double worst = -1e300;
    int cases = 0;
    for (int i = 0; i < 100; ++i) {
        const Index m = 2 + static_cast<Index>(rng() % 6), p = 2 + static_cast<Index>(rng() % 6),
                    n = 2 + static_cast<Index>(rng() % 6);
        const Tensor3 a = random_tensor(m, p, n, 300 + i);
        const auto ts = kinds_at(n, 400 + i);
        const Transform& t = ts[static_cast<std::size_t>(i) % ts.size()];
        const TSvdmFactors f = tsvdm(a, t);
        for (Index k = 1; k <= std::min(m, p); ++k) {
            const double te = frobenius_norm(a - truncate_trank(f, k).reconstruct());
            worst = std::max(worst, te - matrix_error(a, k));
            ++cases;
        }
    }
    return {worst <= 1e-10, fmt("%d (tensor, k) cases over all kinds, max(tensor - matrix error) = %.2e", cases, worst)};
}

Index matrix_rank(const Tensor3& a) {
    Eigen::JacobiSVD<MatR> svd(arrange(a, MatrixOrientation::lateral));
    svd.setThreshold(1e-10);
    return svd.rank();
}

Outcome trank_le_matrix_rank() {
    int bad = 0, cases = 0;
    for (int i = 0; i < 100; ++i) {
        const Index m = 3 + i % 4, p = 2 + i % 5, n = 2 + i % 3;
        Tensor3 a = random_tensor(m, p, n, 500 + i);
        if (i % 2 == 1) {
            // structured: lateral slices span an r-dimensional space
            const Index r = 1 + i % std::min(m, p);
            const MatR basis = testing::random_matrix(m * n, r, 600 + i) * testing::random_matrix(r, p, 700 + i);
            a = unarrange(basis, MatrixOrientation::lateral, {m, p, n});
        }
        const Index mr = matrix_rank(a);
        for (const Transform& t : kinds_at(n, 800 + i)) {
            ++cases;
            if (trank(tsvdm(a, t)) > mr) ++bad;
        }
    }
    return {bad == 0, fmt("%d (tensor, transform) cases incl. identity and low matrix rank, %d violations", cases, bad)};
}

Outcome energy_identities() {
    double worst_norm = 0.0, worst_gap = 0.0, worst_pred = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Tensor3 a = random_tensor(7, 5, 6, 900 + i);
        const double na = frobenius_norm(a);
        for (const Transform& t : kinds_at(6, 950 + i)) {
            const TSvdmFactors f = tsvdm(a, t);
            const auto tn = f.tube_norms();
            double s = 0.0;
            for (std::size_t j = 0; j < tn.size(); ++j) {
                s += tn[j] * tn[j];
                if (j > 0) worst_gap = std::max(worst_gap, (tn[j] - tn[j - 1]) / na);
            }
            worst_norm = std::max(worst_norm, std::abs(s - na * na) / (na * na));
            for (double g : {0.5, 0.8, 0.9, 0.99, 1.0}) {
                const TSvdmIIRep rep = tsvdm2(a, t, g);
                const double measured = frobenius_norm(a - rep.reconstruct());
                worst_pred = std::max(worst_pred, std::abs(measured - rep.predicted_error()) / na);
            }
        }
    }
    return {worst_norm <= 1e-8 && worst_gap <= 1e-8 && worst_pred <= 1e-8,
            fmt("energy identity %.1e, tube-norm increase %.1e, t-SVDMII error vs formula %.1e (relative)", worst_norm,
                worst_gap, worst_pred)};
}

Outcome eckart_young() {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    double worst = -1e300;
    const auto ts = kinds_at(4, 12);
    for (int i = 0; i < 200; ++i) {
        const Transform& t = ts[static_cast<std::size_t>(i) % ts.size()];
        const Tensor3 a = random_tensor(5, 4, 4, 1000 + static_cast<std::uint64_t>(i % 20));
        const Index k = 1 + i % 3;
        const TSvdmFactors fk = truncate_trank(tsvdm(a, t), k);
        const double best = frobenius_norm(a - fk.reconstruct());
        // competitor X * Y of t-rank <= k; half are perturbations of the optimum
        Tensor3 x = random_tensor(5, k, 4, 2000 + i), y = random_tensor(k, 4, 4, 3000 + i);
        if (i % 2 == 0) {
            const double eps = std::pow(10.0, -1.0 - (i % 8) * 0.5);
            x = fk.u + eps * x;
            y = mprod(fk.s, conj_transpose(fk.v, t), t) + eps * y;
        }
        const double err = frobenius_norm(a - mprod(x, y, t));
        worst = std::max(worst, best - err);
    }
    return {worst <= 1e-9, fmt("200 competitors (random and perturbed optimum), max advantage %.2e", worst)};
}

Outcome hosvd_bridge() {
    double worst_eq = 0.0, worst_dom = -1e300;
    for (int s = 0; s < 3; ++s) {
        const Tensor3 a = random_tensor(6, 7, 5, 1100 + s);
        const Transform t = hosvd_mode3_transform(a);
        const TSvdmFactors f = tsvdm(a, t);
        for (Index k1 : {1, 3, 6})
            for (Index k2 : {1, 4, 7})
                for (Index k3 : {1, 3, 5}) {
                    const Triple k{k1, k2, k3};
                    const Tensor3 h = tr_hosvd(a, k).reconstruct();
                    worst_eq = std::max(worst_eq, max_abs_diff(hosvd_as_mprod(a, k), h));
                    const double ak = frobenius_norm(a - truncate_trank(f, std::min(k1, k2)).reconstruct());
                    worst_dom = std::max(worst_dom, ak - frobenius_norm(a - h));
                }
    }
    return {worst_eq <= 1e-10 && worst_dom <= 1e-10,
            fmt("mprod form vs tr-HOSVD max diff %.1e; error(A_kappa) - error(tr-HOSVD) <= %.1e", worst_eq, worst_dom)};
}

Outcome cp_export() {
    double worst_eq = 0.0, worst_tail = 0.0;
    for (int s = 0; s < 4; ++s)
        for (const Transform& t : kinds_at(4, 1200 + s)) {
            const Tensor3 a = random_tensor(5, 4, 4, 1250 + s);
            const TSvdmIIRep full = tsvdm2(a, t, 1.0);
            const CpRep cp = to_cp(full);
            worst_eq = std::max(worst_eq, max_abs_diff(real_part(reconstruct_cp(cp)), full.reconstruct()));
            const double na2 = std::pow(frobenius_norm(a), 2);
            for (Index j = 0; j <= cp.terms(); ++j) {
                const double err2 = std::pow(frobenius_norm(a - reconstruct_cp(cp, j)), 2);
                const double tail = cp.lambda.tail(cp.terms() - j).squaredNorm();
                worst_tail = std::max(worst_tail, std::abs(err2 - tail) / na2);
            }
        }
    return {worst_eq <= 1e-10 && worst_tail <= 1e-8,
            fmt("CP reconstruction max diff %.1e; truncation error^2 vs lambda tail %.1e (relative)", worst_eq,
                worst_tail)};
}

Outcome multisided() {
    double worst_bound = -1e300, worst_end = 0.0, worst_pyth = 0.0;
    bool storage_ok = true;
    for (int s = 0; s < 5; ++s) {
        const Tensor3 a = random_tensor(6, 5, 4, 1300 + s);
        const Transform tm = make(TransformKind::dct_orthogonal, 4), tb = make(TransformKind::dft_unnormalized, 6);
        for (double alpha : {0.0, 0.3, 0.7, 1.0}) {
            const ConvexResult r = convex_combo(a, tm, tb, EnergyPair{0.8, 0.85}, alpha);
            worst_bound = std::max(worst_bound, r.report.error - r.report.bound);
            if (alpha == 1.0) worst_end = std::max(worst_end, std::abs(r.report.error - r.report.primary_error));
            if (alpha == 0.0) worst_end = std::max(worst_end, std::abs(r.report.error - r.report.permuted_error));
        }
        for (Index k = 1; k <= 4; ++k)
            for (Index q = 1; q <= 4; ++q) {
                const Transform sb = make(TransformKind::random_orthogonal, k, 1400 + s);
                const SequentialRep rep = sequential_tsvdmb(a, tm, sb, k, q);
                const double err = frobenius_norm(a - rep.reconstruct());
                const double pyth = std::sqrt(rep.stage1_discarded + rep.stage2_discarded) / std::abs(tm.scale());
                worst_pyth = std::max(worst_pyth, std::abs(err * err - pyth * pyth) / std::pow(frobenius_norm(a), 2));
                const Index formula = q * 5 * k + 6 * k * 4 + k * q * 4;
                storage_ok = storage_ok && inspect(encode({rep, false})).payload_floats == formula &&
                             storage_count(rep).floats == formula;
            }
    }
    return {worst_bound <= 1e-10 && worst_end <= 1e-10 && worst_pyth <= 1e-8 && storage_ok,
            fmt("convex error - bound <= %.1e, endpoint gap %.1e, sequential Pythagoras %.1e, storage %s", worst_bound,
                worst_end, worst_pyth, storage_ok ? "exact" : "MISMATCH")};
}

// Best CR with RE <= limit across a sweep; 0 if none qualifies.
double best_cr(const std::vector<SweepRow>& rows, double limit) {
    double cr = 0.0;
    for (const auto& r : rows)
        if (r.ok() && r.relative_error <= limit) cr = std::max(cr, r.compression_ratio);
    return cr;
}

Outcome synthetic_trend() {
    const auto t0 = std::chrono::steady_clock::now();
    SyntheticOptions o;
    o.noise = 0.01;
    const Tensor3 a = gen_synthetic(SyntheticKind::circulant_slices, {32, 16, 32}, 2024, o);
    std::vector<std::string> gammas;
    for (int i = 0; i <= 100; ++i) gammas.push_back(fmt("%.4f", 0.9 + 0.001 * i));
    std::vector<std::string> ranks;
    for (Index k = 1; k <= 16; ++k) ranks.push_back(std::to_string(k));

    CompressOptions dft;
    dft.transform = TransformKind::dft_unnormalized;
    CompressOptions half = dft;
    half.conjsym = true;
    CompressOptions ro;
    ro.transform = TransformKind::random_orthogonal;
    ro.seed = 5;

    const double cr_dft = best_cr(sweep(a, Method::tsvdm2, gammas, dft), 0.05);
    const double cr_half = best_cr(sweep(a, Method::tsvdm2, gammas, half), 0.05);
    const double cr_ro = best_cr(sweep(a, Method::tsvdm2, gammas, ro), 0.05);
    const double cr_mx = best_cr(sweep(a, Method::matrix, ranks, CompressOptions{}), 0.05);
    const double secs = seconds_since(t0);
    // gated on the full complex accounting; the conjugate-symmetric figure is reported alongside
    return {cr_dft >= 2.0 * cr_mx && cr_dft >= 2.0 * cr_ro && cr_mx > 0.0 && secs < 10.0,
            fmt("CR at RE<=0.05: DFT t-SVDMII %.2f (conjsym %.2f), matrix %.2f, randorth t-SVDMII %.2f; %.2f s",
                cr_dft, cr_half, cr_mx, cr_ro, secs)};
}

Outcome example_law() {
    double worst = 0.0;
    bool trank_one = true;
    for (auto [m, p, n] : {std::array<Index, 3>{4, 2, 4}, {6, 3, 5}, {7, 4, 6}, {8, 8, 8}}) {
        // the law needs orthonormal columns in U, i.e. m >= n
        SyntheticOptions o;
        o.noise = 0.0;
        const Tensor3 a = gen_synthetic(SyntheticKind::circulant_slices, {m, p, n}, 77, o);
        trank_one = trank_one && trank(tsvdm(a, make(TransformKind::dft_unnormalized, n))) == 1;
        for (Index k = 1; k <= p; ++k) {
            const double e = matrix_error(a, k);
            worst = std::max(worst, std::abs(e * e - static_cast<double>((p - k) * n)));
        }
    }
    return {worst <= 1e-8 && trank_one,
            fmt("max |matrix error^2 - (p-k)n| = %.1e; t-rank 1 under DFT: %s", worst, trank_one ? "yes" : "NO")};
}

Outcome fourd() {
    double exact = 0.0, formula = 0.0, degenerate = 0.0;
    for (int s = 0; s < 3; ++s) {
        const Tensor4 a = random_tensor4(5, 4, 4, 3, 1500 + s);
        const double na = frobenius_norm(a);
        for (const Transform& tm : kinds_at(4, 1600 + s)) {
            const Transform tb = make(s == 0 ? TransformKind::dft_unnormalized : TransformKind::dct_orthogonal, 3);
            exact = std::max(exact, relative_error(a, tsvdm2_4d(a, tm, tb, 1.0).reconstruct()));
            for (double g : {0.5, 0.8, 0.95}) {
                const FourDRep rep = tsvdm2_4d(a, tm, tb, g);
                const double measured = frobenius_norm(difference(a, rep.reconstruct()));
                formula = std::max(formula, std::abs(measured - rep.predicted_error()) / na);
            }
            // q = 1: same as the third-order algorithm
            const Tensor3 b = random_tensor(5, 4, 4, 1700 + s);
            const Tensor4 b4(5, 4, 4, 1, std::vector<double>(b.values().begin(), b.values().end()));
            for (double g : {0.6, 0.9, 1.0}) {
                const Tensor4 x = tsvdm2_4d(b4, tm, make(TransformKind::identity, 1), g).reconstruct();
                const Tensor3 y = tsvdm2(b, tm, g).reconstruct();
                for (Index t = 0; t < y.size(); ++t)
                    degenerate = std::max(degenerate, std::abs(x.data()[t] - y.data()[t]));
            }
        }
    }
    std::vector<MatR> ims{testing::random_matrix(6, 8, 1), testing::random_matrix(6, 8, 2)};
    bool round_trip = true;
    for (auto [x, y] : {std::pair<Index, Index>{1, 1}, {2, 2}, {3, 4}, {6, 8}}) {
        const auto back = unpatchify(patchify(ims, x, y), x, y, 6, 8);
        round_trip = round_trip && back.size() == ims.size() && back[0] == ims[0] && back[1] == ims[1];
    }
    return {exact <= 1e-10 && formula <= 1e-8 && degenerate <= 1e-10 && round_trip,
            fmt("gamma=1 RE %.1e, error formula %.1e, q=1 vs third order %.1e, patchify round trip %s", exact, formula,
                degenerate, round_trip ? "bit-exact" : "BROKEN")};
}

// Frames of a directory, oriented as transposed lateral slices, at gamma = .998.
std::pair<SweepRow, SweepRow> video_rows(const Tensor3& a) {
    CompressOptions opt;
    opt.transform = TransformKind::dct_orthogonal;
    const SweepRow t = sweep(a, Method::tsvdm2, {"0.998"}, opt)[0];
    const SweepRow m = sweep(a, Method::matrix, {"0.998"}, opt)[0];
    return {t, m};
}

Outcome dataset_mode() {
    if (const char* dir = std::getenv("TCOMP_VIDEO_DIR")) {
        const auto [t, m] = video_rows(load_image_stack(dir, ImageOrientation::lateral_transposed));
        const bool hit = std::abs(t.compression_ratio - 4.76) <= 0.05 * 4.76 &&
                         std::abs(t.relative_error - 0.044) <= 0.05 * 0.044;
        return {hit, fmt("not gated; %s: t-SVDMII CR %.3f RE %.4f (target 4.76 / 0.044 +-5%%), matrix CR %.3f RE %.4f",
                         dir, t.compression_ratio, t.relative_error, m.compression_ratio, m.relative_error)};
    }
    // no dataset: exercise the same path on a small synthetic frame stack
    const auto tmp = std::filesystem::temp_directory_path() / fmt("tcomp_frames_%d", static_cast<int>(std::random_device{}()));
    std::filesystem::create_directories(tmp);
    const Tensor3 base = gen_synthetic(SyntheticKind::lowrank_plus_noise, {12, 10, 16}, 3);
    for (Index f = 0; f < 10; ++f) {
        MatR im(12, 16);
        for (Index c = 0; c < 16; ++c)
            for (Index r = 0; r < 12; ++r) im(r, c) = 128.0 + 40.0 * base(r, f, c);
        write_pgm(tmp / fmt("frame_%03d.pgm", static_cast<int>(f)), im);
    }
    const Tensor3 a = load_image_stack(tmp, ImageOrientation::lateral_transposed);
    std::filesystem::remove_all(tmp);
    const auto [t, m] = video_rows(a);
    const bool ok = t.ok() && m.ok() && a.rows() == 16 && a.cols() == 10 && a.faces() == 12 &&
                    to_csv({t}).find("tsvdm2,0.998,") != std::string::npos;
    return {ok, fmt("not gated; no TCOMP_VIDEO_DIR, pipeline check on synthetic frames only (CR %.2f, RE %.4f)",
                    t.compression_ratio, t.relative_error)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"exact reconstruction", exact_reconstruction},
        {"worked example", worked_example},
        {"dominance over matrix SVD", dominance},
        {"t-rank <= matrix rank", trank_le_matrix_rank},
        {"energy identities", energy_identities},
        {"Eckart-Young sampling", eckart_young},
        {"tr-HOSVD bridge", hosvd_bridge},
        {"CP export", cp_export},
        {"multi-sided", multisided},
        {"synthetic trend", synthetic_trend},
        {"circulant example law", example_law},
        {"fourth order", fourd},
        {"dataset mode", dataset_mode},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        const bool gated = i + 1 <= 12;
        if (gated && !r.pass) ++failed;
        std::printf("criterion %2zu %s: %s  %s\n", i + 1, r.pass ? "PASS" : "FAIL", criteria[i].first, r.detail.c_str());
    }
    std::printf("%d gated criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
