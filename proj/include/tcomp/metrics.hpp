#pragma once

#include "tcomp/baselines.hpp"
#include "tcomp/fourd.hpp"
#include "tcomp/multiside.hpp"
#include "tcomp/tensor.hpp"
#include "tcomp/tsvd.hpp"

namespace tcomp {

/// Payload size of a compressed representation. Complex scalars count as
/// two floats; integer side data (multi-rank arrays, CP face pointers) is
/// reported separately and excluded from the float count.
struct StorageCount {
    Index floats = 0;
    Index integers = 0;
};

/// With conjsym set, a representation under the DFT stores only one face of
/// every conjugate pair; self-conjugate faces are real and count one float
/// per scalar. Ignored for real transforms.
StorageCount storage_count(const TSvdmIIRep& rep, bool conjsym = false);
StorageCount storage_count(const TrankRep& rep);
StorageCount storage_count(const MatrixSvdRep& rep);
StorageCount storage_count(const HosvdRep& rep);
StorageCount storage_count(const SequentialRep& rep);
StorageCount storage_count(const ConvexRep& rep, bool conjsym = false);
StorageCount storage_count(const FourDRep& rep, bool conjsym = false);
StorageCount storage_count(const CpRep& rep);

/// original_floats / payload floats; infinity for an empty payload.
double compression_ratio(Index original_floats, const StorageCount& s);

template <typename Rep, typename... Opt>
double compression_ratio(const Tensor3& a, const Rep& rep, Opt... opt) {
    return compression_ratio(a.size(), storage_count(rep, opt...));
}

/// ||A - X||_F / ||A||_F (0 when both vanish, infinity when only A does).
double relative_error(const Tensor3& a, const Tensor3& approx);
double relative_error(const Tensor4& a, const Tensor4& approx);

}  // namespace tcomp
