#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <variant>
#include <vector>

#include "tcomp/bytes.hpp"
#include "tcomp/tensor.hpp"

namespace tcomp {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

// Raw tensor files: magic "TEN3"/"TEN4", version u32, one u32 per extent,
// then f64 little-endian values in column-major order.
inline constexpr std::uint32_t kTensorFileVersion = 1;

std::vector<std::uint8_t> encode_tensor(const Tensor3& a);
std::vector<std::uint8_t> encode_tensor(const Tensor4& a);
using AnyTensor = std::variant<Tensor3, Tensor4>;
AnyTensor decode_tensor(std::span<const std::uint8_t> bytes);

void save_tensor(const std::filesystem::path& path, const Tensor3& a);
void save_tensor(const std::filesystem::path& path, const Tensor4& a);
AnyTensor load_tensor(const std::filesystem::path& path);
Tensor3 load_tensor3(const std::filesystem::path& path);
Tensor4 load_tensor4(const std::filesystem::path& path);

// Binary grayscale (P5) images; 16-bit samples are big-endian.
MatR read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const MatR& image, int maxval = 255);

/// lateral:            m x l x n, A(:, l, :) = twist(image_l)
/// lateral_transposed: n x l x m, A(:, l, :) = twist(image_l^T)
/// frontal:            m x n x l, A(:, :, l) = image_l
enum class ImageOrientation : std::uint8_t { lateral, lateral_transposed, frontal };

std::string_view to_string(ImageOrientation o);
ImageOrientation parse_image_orientation(std::string_view name);

Tensor3 stack_images(const std::vector<MatR>& images, ImageOrientation o);

/// A directory of .pgm files (lexicographic filename order), a single .pgm
/// file, or a raw TEN3 file (returned as stored; orientation is ignored).
Tensor3 load_image_stack(const std::filesystem::path& path, ImageOrientation o);

/// All .pgm images of a directory in lexicographic order.
std::vector<MatR> load_images(const std::filesystem::path& dir);

}  // namespace tcomp
