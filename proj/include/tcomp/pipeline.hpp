#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcomp/container.hpp"

namespace tcomp {

/// Everything the compress entry points need besides the tensor. Unset
/// optionals fall back to per-method defaults or raise invalid_argument.
struct CompressOptions {
    TransformKind transform = TransformKind::dft_unnormalized;
    std::uint64_t seed = 0;
    MatrixOrientation orientation = MatrixOrientation::lateral;
    bool conjsym = false;
    std::optional<double> gamma;
    std::optional<Index> trank;
    std::optional<Triple> triple;
    std::optional<double> hosvd_ratio;
    double alpha = 0.5;
    std::optional<std::pair<Index, Index>> pair;
};

/// Transform of the chosen kind at size n. Random orthogonal transforms of
/// different sizes draw from distinct seeds derived from opt.seed.
Transform make_transform(const CompressOptions& opt, Index n, int which = 0);

Container compress(const Tensor3& a, Method method, const CompressOptions& opt);
/// Method::fourd only; tm sized n, tb sized q.
Container compress(const Tensor4& a, const CompressOptions& opt);

/// Applies one sweep cell to opt:
///   tsvdm       k
///   tsvdm2      gamma
///   matrix      k (integer) or gamma (real)
///   hosvd       k1,k2,k3 or a mode ratio in (0, 1]
///   sequential  k,q
///   convex      alpha
///   fourd       gamma
void apply_parameter(Method method, const std::string& value, CompressOptions& opt);

struct SweepRow {
    Method method = Method::tsvdm;
    std::string parameter;
    double compression_ratio = 0.0;
    double relative_error = 0.0;
    double seconds = 0.0;
    Index payload_floats = 0;
    Index payload_integers = 0;
    std::string status = "ok";  // error message on failure
    bool ok() const { return status == "ok"; }
};

/// One row per parameter in grid order; cells run on up to `threads`
/// workers (0 = hardware concurrency). Failures are reported per row.
std::vector<SweepRow> sweep(const Tensor3& a, Method method, const std::vector<std::string>& grid,
                            const CompressOptions& base, unsigned threads = 0);
std::vector<SweepRow> sweep(const Tensor4& a, const std::vector<std::string>& grid, const CompressOptions& base,
                            unsigned threads = 0);

/// method,parameter,compression_ratio,relative_error,seconds,payload_floats,payload_integers,status
std::string to_csv(const std::vector<SweepRow>& rows, bool header = true);

}  // namespace tcomp
