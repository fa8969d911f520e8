// SPDX-License-Identifier: Apache-2.0

#ifndef ISP_DATAGEN_HPP
#define ISP_DATAGEN_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "isp/forward.hpp"
#include "isp/grid.hpp"
#include "isp/rng.hpp"
#include "isp/storage.hpp"

namespace isp
{

template <typename T>
struct Interval
{
  T lo;
  T hi;
};

struct DiskSceneConfig
{
  Interval<int> count_range{1, 3};
  Interval<double> radius_range{0.1, 0.2};
  Interval<double> amplitude_range{-1.0, 1.0};
  double a = 1.0;
  int n = 64;

  // Throws std::invalid_argument on empty ranges or radius_max >= a/2.
  void validate() const;
};

struct DiskScene
{
  SourceRaster raster;
  std::vector<DiskSpec> disks;
};

inline constexpr int kMaxDiskDraws = 10'000;

// Pixel-center membership rasterization; later disks overwrite earlier ones.
SourceRaster rasterize_disks(const GridSpec &grid, const std::vector<DiskSpec> &disks);

//
// Draws 1..3 disks (per config). Each disk draws center uniformly over V0 and radius
// uniformly, retrying until it is contained in V0, then draws its amplitude.
//
DiskScene sample_disk_scene(const DiskSceneConfig &config, std::uint64_t seed);

// Image in [0, 1], row-major.
struct GrayRaster
{
  int rows = 0;
  int cols = 0;
  std::vector<double> values;
};

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;

// IDX image file (big-endian magic 0x00000803, count, rows, cols, then bytes). Bytes are
// scaled by 1/255. `limit` truncates after that many images.
std::vector<GrayRaster> ingest_idx_images(const std::filesystem::path &path,
                                          std::optional<std::size_t> limit = std::nullopt);
// Directory of raw 28x28 byte rasters (exactly 784 bytes each), taken in filename order.
std::vector<GrayRaster> ingest_raw_rasters(const std::filesystem::path &dir,
                                           std::optional<std::size_t> limit = std::nullopt);

inline constexpr double kRasterThreshold = 0.1;

// Bilinear resize (pixel-center aligned) onto `grid`, clamp to [0, 1], zero values < 0.1.
SourceRaster prepare_raster(const GrayRaster &img, const GridSpec &grid = GridSpec(1.0, 64));

struct PairMetadata
{
  int N = 0;
  double delta = 0.0;
  std::string source_kind;
};

struct PairSample
{
  ReconstructionRaster input;
  SourceRaster target;
  std::uint64_t sample_seed = 0;
  PairMetadata metadata;
};

// plan -> synthesize -> add_noise -> recover_coefficients -> evaluate_series, on the source's
// own grid.
PairSample build_pair(const SourceRaster &source, int N, double delta, std::uint64_t seed,
                      double lambda = kDefaultLambda, const std::string &source_kind = "");

enum class SourceKind
{
  Disks,
  Rasters,
};

struct DatasetRequest
{
  SourceKind kind = SourceKind::Disks;
  std::size_t count = 1;
  int N = 3;
  double delta = 0.0;
  std::uint64_t master_seed = 0;
  double train_fraction = 0.8;
  double lambda = kDefaultLambda;
  DiskSceneConfig disks;                 // used for SourceKind::Disks (also sets a, n)
  std::vector<GrayRaster> images;        // used for SourceKind::Rasters, in order
  std::string source_provenance;
};

inline std::uint64_t sample_seed(std::uint64_t master_seed, std::size_t index)
{
  return derive_seed(master_seed, {static_cast<std::int64_t>(index)});
}

// Training split size: round(count * train_fraction), indices [0, train) train.
std::size_t train_count(std::size_t count, double train_fraction);

//
// Writes <out_dir>/manifest.json and pair tensors under <out_dir>/{train,test}/{input,target}/
// <index>.tnsr (index zero-padded to 6 digits). Samples are generated on worker threads;
// sample i depends only on sample_seed(master_seed, i) and its source.
//
DatasetManifest build_dataset(const DatasetRequest &request, const std::filesystem::path &out_dir,
                              std::size_t workers = 0);

}  // namespace isp

#endif  // ISP_DATAGEN_HPP
