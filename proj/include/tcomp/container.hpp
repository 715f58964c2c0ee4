#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tcomp/baselines.hpp"
#include "tcomp/fourd.hpp"
#include "tcomp/io.hpp"
#include "tcomp/metrics.hpp"
#include "tcomp/multiside.hpp"
#include "tcomp/tsvd.hpp"

namespace tcomp {

enum class Method : std::uint8_t { tsvdm = 0, tsvdm2 = 1, matrix = 2, hosvd = 3, sequential = 4, convex = 5, fourd = 6 };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

using AnyRep = std::variant<TrankRep, TSvdmIIRep, MatrixSvdRep, HosvdRep, SequentialRep, ConvexRep, FourDRep>;

Method method_of(const AnyRep& rep);

struct Container {
    AnyRep rep;
    /// Store one face per conjugate pair for DFT representations.
    bool conjsym = false;
};

// Wire format (little-endian):
//   "TTCR" | version u32 | method u8 | flags u8 | reserved u16 | section count u32
//   section table: { tag[4], offset u64, length u64 } per section
//   section bodies
//   CRC-32 u32 of every preceding byte
// Sections: HDRd (dims, parameters), XFMd (transform descriptors), RNKd
// (integer ranks), DATd (u64 count + f64 payload); d is 0 for a single
// representation and 1/2 for the sides of a convex combination (CVX0 holds
// alpha and the side kinds).
inline constexpr std::uint32_t kContainerVersion = 1;

std::vector<std::uint8_t> encode(const Container& c);
Container decode(std::span<const std::uint8_t> bytes);

void save(const Container& c, const std::filesystem::path& path);
Container load(const std::filesystem::path& path);

struct SectionInfo {
    std::string tag;
    std::uint64_t offset = 0;
    std::uint64_t length = 0;
};

struct ContainerInfo {
    std::uint32_t version = 0;
    Method method = Method::tsvdm;
    bool conjsym = false;
    std::vector<SectionInfo> sections;
    Index payload_floats = 0;  // sum of the DAT section counts
};

/// Header, section table and payload size, after full validation.
ContainerInfo inspect(std::span<const std::uint8_t> bytes);

StorageCount storage_count(const Container& c);
/// Original tensor dims (three or four extents).
std::vector<Index> original_dims(const Container& c);
AnyTensor reconstruct(const Container& c);

}  // namespace tcomp
