#pragma once

#include <cstdint>
#include <vector>

#include "tcomp/random.hpp"
#include "tcomp/tensor.hpp"
#include "tcomp/transform.hpp"

namespace tcomp::testing {

inline Tensor3 random_tensor(Index m, Index p, Index n, std::uint64_t seed) {
    NormalStream normal(seed);
    Tensor3 a(m, p, n);
    for (auto& v : a.values()) v = normal();
    return a;
}

inline Tensor4 random_tensor4(Index m, Index p, Index n, Index q, std::uint64_t seed) {
    NormalStream normal(seed);
    Tensor4 a(m, p, n, q);
    for (Index t = 0; t < a.size(); ++t) a.data()[t] = normal();
    return a;
}

inline MatR random_matrix(Index r, Index c, std::uint64_t seed) {
    NormalStream normal(seed);
    MatR m(r, c);
    for (Index j = 0; j < c; ++j)
        for (Index i = 0; i < r; ++i) m(i, j) = normal();
    return m;
}

/// The 2x2x2 worked example: faces [[1,1],[1,4]] and [[0,0],[0,-3]].
inline Tensor3 worked_example() {
    Tensor3 a(2, 2, 2);
    a(0, 0, 0) = 1; a(0, 1, 0) = 1; a(1, 0, 0) = 1; a(1, 1, 0) = 4;
    a(1, 1, 1) = -3;
    return a;
}

/// Every transform kind at size n (haar only when n is a power of two).
inline std::vector<Transform> all_transforms(Index n, std::uint64_t seed = 11) {
    std::vector<Transform> out{Transform::make(TransformKind::identity, n),
                               Transform::make(TransformKind::dft_unnormalized, n),
                               Transform::make(TransformKind::dct_orthogonal, n),
                               Transform::make(TransformKind::random_orthogonal, n, seed)};
    if ((n & (n - 1)) == 0) out.push_back(Transform::make(TransformKind::haar_orthogonal, n));
    return out;
}

}  // namespace tcomp::testing
