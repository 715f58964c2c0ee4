#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "tcomp/tensor.hpp"

namespace tcomp {

enum class SyntheticKind : std::uint8_t { circulant_slices, random_dense, lowrank_plus_noise };

std::string_view to_string(SyntheticKind k);
SyntheticKind parse_synthetic_kind(std::string_view name);

struct SyntheticOptions {
    /// t-rank of the low-rank part (lowrank_plus_noise); 0 picks max(1, min(m,p)/4).
    Index rank = 0;
    /// Gaussian noise with ||noise||_F = noise * ||A||_F; negative picks the
    /// kind's default (0.01 for lowrank_plus_noise, 0 otherwise).
    double noise = -1.0;
};

/// circulant_slices: A(:, i, :) = twist(U circ(c_i)) with C (n x p) having
///   orthonormal columns and U (m x n) orthonormal columns when m >= n
///   (orthonormal rows otherwise). t-rank 1 under the DFT; requires p <= n.
/// random_dense: i.i.d. standard normal entries.
/// lowrank_plus_noise: X * Y under the orthogonal DCT, X m x r x n, Y r x p x n.
Tensor3 gen_synthetic(SyntheticKind kind, const std::array<Index, 3>& dims, std::uint64_t seed,
                      const SyntheticOptions& opt = {});

}  // namespace tcomp
