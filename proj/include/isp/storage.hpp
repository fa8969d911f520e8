// SPDX-License-Identifier: Apache-2.0

#ifndef ISP_STORAGE_HPP
#define ISP_STORAGE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isp/grid.hpp"

namespace isp
{

//
// TensorFile layout (little-endian, no padding):
//
//   offset  size      field
//   0       4         magic "TNSR"
//   4       2         version (u16) = 1
//   6       1         dtype (u8): 0 = f32 real, 1 = complex as (f32 re, f32 im)
//   7       1         rank (u8)
//   8       4*rank    dims (u32 each)
//   8+4r    ...       row-major payload, prod(dims) scalars
//
enum class DType : std::uint8_t
{
  Real32 = 0,
  Complex64 = 1,
};

inline constexpr std::uint16_t kTensorVersion = 1;

struct Tensor
{
  DType dtype = DType::Real32;
  std::vector<std::uint32_t> dims;
  std::vector<float> data;  // complex payloads interleave (re, im)

  std::size_t element_count() const;
  std::size_t scalars_per_element() const { return dtype == DType::Complex64 ? 2 : 1; }

  // Same dtype/dims and bit-identical payload.
  bool bit_equal(const Tensor &other) const;
};

std::vector<std::uint8_t> encode_tensor(const Tensor &t);
Tensor decode_tensor(std::span<const std::uint8_t> bytes);
void write_tensor(const std::filesystem::path &path, const Tensor &t);
Tensor read_tensor(const std::filesystem::path &path);

Tensor to_tensor(const SourceRaster &raster);
Tensor to_tensor(const ReconstructionRaster &raster);
Tensor to_tensor(const FarFieldSet &data);

// Square rank-2 real tensor to raster values; throws isp::Error otherwise.
std::vector<double> raster_values(const Tensor &t);
int raster_side(const Tensor &t);
SourceRaster source_from_tensor(const Tensor &t, double a);
std::vector<Complex> complex_values(const Tensor &t);

struct ManifestFile
{
  std::string input;
  std::string target;
  std::uint64_t sample_seed = 0;

  friend bool operator==(const ManifestFile &, const ManifestFile &) = default;
};

// Dataset index written next to the pair files. Paths in `files` are relative to the
// manifest's directory; the first split_train entries form the training split.
struct DatasetManifest
{
  int format_version = 1;
  std::string kind;  // "disks" or "rasters"
  double a = 1.0;
  int n = 64;
  int N = 0;
  double lambda = kDefaultLambda;
  double delta = 0.0;
  std::uint64_t master_seed = 0;
  std::size_t count = 0;
  std::size_t split_train = 0;
  std::size_t split_test = 0;
  std::vector<ManifestFile> files;
  std::string source_provenance;

  friend bool operator==(const DatasetManifest &, const DatasetManifest &) = default;
};

std::string manifest_to_json(const DatasetManifest &m);
// Parses and validates (field types, count == files.size() == train + test, kind).
DatasetManifest manifest_from_json(std::string_view text);
void write_manifest(const std::filesystem::path &path, const DatasetManifest &m);
DatasetManifest read_manifest(const std::filesystem::path &path);

std::string plan_to_json(const MeasurementPlan &plan);
// Rebuilds the plan from (N, a, lambda) and checks any listed entries against it.
MeasurementPlan plan_from_json(std::string_view text);

struct GrayImage
{
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  friend bool operator==(const GrayImage &, const GrayImage &) = default;
};

// Binary PGM: "P5\n<w> <h>\n255\n" followed by w*h bytes.
std::vector<std::uint8_t> encode_pgm(const GrayImage &img);
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);

// Linear map of [lo, hi] onto [0, 255], clamped, rounded half away from zero.
GrayImage to_gray(std::span<const double> values, int width, int height, double lo, double hi);
void export_pgm(std::span<const double> values, int side, const std::filesystem::path &path,
                double lo, double hi);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path &path);
void write_file_bytes(const std::filesystem::path &path, std::span<const std::uint8_t> bytes);
std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

}  // namespace isp

#endif  // ISP_STORAGE_HPP
