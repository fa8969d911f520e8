// SPDX-License-Identifier: Apache-2.0

#include "isp/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "isp/error.hpp"
#include "isp/inversion.hpp"
#include "isp/parallel.hpp"

namespace isp
{

namespace
{

// Substreams of a sample seed.
constexpr std::int64_t kSceneStream = 0;
constexpr std::int64_t kNoiseStream = 1;

std::uint32_t big_endian_u32(std::span<const std::uint8_t> b, std::size_t off)
{
  return (static_cast<std::uint32_t>(b[off]) << 24) | (static_cast<std::uint32_t>(b[off + 1]) << 16) |
         (static_cast<std::uint32_t>(b[off + 2]) << 8) | static_cast<std::uint32_t>(b[off + 3]);
}

std::string padded_index(std::size_t i)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06zu", i);
  return buf;
}

}  // namespace

void DiskSceneConfig::validate() const
{
  if (count_range.lo < 1 || count_range.hi < count_range.lo)
  {
    throw std::invalid_argument("disk count range must be a non-empty interval of positive integers");
  }
  if (!(radius_range.lo > 0.0) || radius_range.hi < radius_range.lo)
  {
    throw std::invalid_argument("disk radius range must be non-empty with positive radii");
  }
  if (!(radius_range.hi < 0.5 * a))
  {
    throw std::invalid_argument("maximum disk radius must be < a/2");
  }
  if (amplitude_range.hi < amplitude_range.lo)
  {
    throw std::invalid_argument("disk amplitude range is empty");
  }
  GridSpec(a, n);
}

SourceRaster rasterize_disks(const GridSpec &grid, const std::vector<DiskSpec> &disks)
{
  const int n = grid.size();
  std::vector<double> values(grid.pixel_count(), 0.0);
  for (const auto &d : disks)
  {
    const double r2 = d.radius * d.radius;
    for (int i = 0; i < n; i++)
    {
      const double dy = grid.row_x2(i) - d.center.x2;
      for (int j = 0; j < n; j++)
      {
        const double dx = grid.column_x1(j) - d.center.x1;
        if (dx * dx + dy * dy <= r2)
        {
          values[static_cast<std::size_t>(i) * n + j] = d.amplitude;
        }
      }
    }
  }
  return SourceRaster(grid, std::move(values));
}

DiskScene sample_disk_scene(const DiskSceneConfig &config, std::uint64_t seed)
{
  config.validate();
  Rng rng(derive_seed(seed, {kSceneStream}));
  const double half = 0.5 * config.a;
  const auto count = rng.uniform_int(config.count_range.lo, config.count_range.hi);

  std::vector<DiskSpec> disks;
  for (std::int64_t d = 0; d < count; d++)
  {
    DiskSpec disk;
    int draws = 0;
    do
    {
      if (++draws > kMaxDiskDraws)
      {
        throw Error("disk rejection sampling exceeded " + std::to_string(kMaxDiskDraws) +
                    " draws");
      }
      disk.center = {rng.uniform(-half, half), rng.uniform(-half, half)};
      disk.radius = rng.uniform(config.radius_range.lo, config.radius_range.hi);
    } while (!disk.contained_in(config.a));
    disk.amplitude = rng.uniform(config.amplitude_range.lo, config.amplitude_range.hi);
    disks.push_back(disk);
  }
  return {rasterize_disks(GridSpec(config.a, config.n), disks), std::move(disks)};
}

std::vector<GrayRaster> ingest_idx_images(const std::filesystem::path &path,
                                          std::optional<std::size_t> limit)
{
  const auto bytes = read_file_bytes(path);
  const auto where = path.string() + ": ";
  if (bytes.size() < 16)
  {
    throw FormatError(where + "IDX header truncated", bytes.size());
  }
  const std::uint32_t magic = big_endian_u32(bytes, 0);
  if (magic != kIdxImageMagic)
  {
    throw FormatError(where + "bad IDX magic, expected 0x00000803", 0);
  }
  const std::size_t count = big_endian_u32(bytes, 4);
  const int rows = static_cast<int>(big_endian_u32(bytes, 8));
  const int cols = static_cast<int>(big_endian_u32(bytes, 12));
  if (rows <= 0 || cols <= 0 || rows > 4096 || cols > 4096)
  {
    throw FormatError(where + "IDX image dimensions out of range", 8);
  }
  const std::size_t image_bytes = static_cast<std::size_t>(rows) * cols;
  const std::size_t wanted = limit ? std::min(*limit, count) : count;

  std::vector<GrayRaster> images;
  images.reserve(wanted);
  for (std::size_t k = 0; k < wanted; k++)
  {
    const std::size_t off = 16 + k * image_bytes;
    if (off + image_bytes > bytes.size())
    {
      throw FormatError(where + "IDX payload truncated in image " + std::to_string(k),
                        bytes.size());
    }
    GrayRaster img{rows, cols, std::vector<double>(image_bytes)};
    for (std::size_t p = 0; p < image_bytes; p++)
    {
      img.values[p] = bytes[off + p] / 255.0;
    }
    images.push_back(std::move(img));
  }
  if (!limit && 16 + count * image_bytes != bytes.size())
  {
    throw FormatError(where + "IDX payload length does not match header count",
                      std::min(bytes.size(), 16 + count * image_bytes));
  }
  return images;
}

std::vector<GrayRaster> ingest_raw_rasters(const std::filesystem::path &dir,
                                           std::optional<std::size_t> limit)
{
  constexpr int kSide = 28;
  if (!std::filesystem::is_directory(dir))
  {
    throw IoError("not a directory", dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto &e : std::filesystem::directory_iterator(dir))
  {
    if (e.is_regular_file())
    {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (limit && files.size() > *limit)
  {
    files.resize(*limit);
  }
  std::vector<GrayRaster> images;
  for (const auto &f : files)
  {
    const auto bytes = read_file_bytes(f);
    if (bytes.size() != kSide * kSide)
    {
      throw FormatError(f.string() + ": raw raster must be exactly 784 bytes",
                        std::min<std::size_t>(bytes.size(), kSide * kSide));
    }
    GrayRaster img{kSide, kSide, std::vector<double>(bytes.size())};
    for (std::size_t p = 0; p < bytes.size(); p++)
    {
      img.values[p] = bytes[p] / 255.0;
    }
    images.push_back(std::move(img));
  }
  return images;
}

SourceRaster prepare_raster(const GrayRaster &img, const GridSpec &grid)
{
  if (img.rows < 1 || img.cols < 1 ||
      img.values.size() != static_cast<std::size_t>(img.rows) * img.cols)
  {
    throw std::invalid_argument("input raster dimensions do not match its values");
  }
  const int n = grid.size();
  const double sy = static_cast<double>(img.rows) / n;
  const double sx = static_cast<double>(img.cols) / n;
  auto pixel = [&](int r, int c) { return img.values[static_cast<std::size_t>(r) * img.cols + c]; };

  std::vector<double> out(grid.pixel_count());
  for (int i = 0; i < n; i++)
  {
    const double y = std::clamp((i + 0.5) * sy - 0.5, 0.0, img.rows - 1.0);
    const int r0 = static_cast<int>(std::floor(y));
    const int r1 = std::min(r0 + 1, img.rows - 1);
    const double fy = y - r0;
    for (int j = 0; j < n; j++)
    {
      const double x = std::clamp((j + 0.5) * sx - 0.5, 0.0, img.cols - 1.0);
      const int c0 = static_cast<int>(std::floor(x));
      const int c1 = std::min(c0 + 1, img.cols - 1);
      const double fx = x - c0;
      const double top = pixel(r0, c0) + fx * (pixel(r0, c1) - pixel(r0, c0));
      const double bottom = pixel(r1, c0) + fx * (pixel(r1, c1) - pixel(r1, c0));
      double v = std::clamp(top + fy * (bottom - top), 0.0, 1.0);
      if (v < kRasterThreshold)
      {
        v = 0.0;
      }
      out[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  return SourceRaster(grid, std::move(out));
}

PairSample build_pair(const SourceRaster &source, int N, double delta, std::uint64_t seed,
                      double lambda, const std::string &source_kind)
{
  const auto plan = build_measurement_plan(N, source.grid().edge(), lambda);
  const auto clean = synthesize(source, plan);
  const auto noisy = add_noise(clean, delta, derive_seed(seed, {kNoiseStream}));
  const auto coeffs = recover_coefficients(noisy, plan);
  return {evaluate_series(coeffs, source.grid()), source, seed, {N, delta, source_kind}};
}

std::size_t train_count(std::size_t count, double train_fraction)
{
  if (!(train_fraction >= 0.0 && train_fraction <= 1.0))
  {
    throw std::invalid_argument("train fraction must lie in [0, 1]");
  }
  return std::min(count, static_cast<std::size_t>(std::llround(count * train_fraction)));
}

DatasetManifest build_dataset(const DatasetRequest &request, const std::filesystem::path &out_dir,
                              std::size_t workers)
{
  if (request.count < 1)
  {
    throw std::invalid_argument("dataset count must be >= 1");
  }
  const bool disks = request.kind == SourceKind::Disks;
  if (disks)
  {
    request.disks.validate();
  }
  else if (request.images.size() < request.count)
  {
    throw Error("requested " + std::to_string(request.count) + " samples but only " +
                std::to_string(request.images.size()) + " images are available");
  }
  // Validate the plan parameters once before spawning workers.
  const GridSpec grid = disks ? GridSpec(request.disks.a, request.disks.n) : GridSpec(1.0, 64);
  build_measurement_plan(request.N, grid.edge(), request.lambda);

  const std::size_t train = train_count(request.count, request.train_fraction);
  DatasetManifest m;
  m.kind = disks ? "disks" : "rasters";
  m.a = grid.edge();
  m.n = grid.size();
  m.N = request.N;
  m.lambda = request.lambda;
  m.delta = request.delta;
  m.master_seed = request.master_seed;
  m.count = request.count;
  m.split_train = train;
  m.split_test = request.count - train;
  m.source_provenance = request.source_provenance;
  m.files.resize(request.count);

  std::filesystem::create_directories(out_dir);
  parallel_for(
      request.count,
      [&](std::size_t i) {
        const std::uint64_t seed = sample_seed(request.master_seed, i);
        const SourceRaster source = disks ? sample_disk_scene(request.disks, seed).raster
                                          : prepare_raster(request.images[i], grid);
        const auto pair = build_pair(source, request.N, request.delta, seed, request.lambda, m.kind);
        const std::string split = i < train ? "train" : "test";
        const std::string name = padded_index(i) + ".tnsr";
        ManifestFile f{split + "/input/" + name, split + "/target/" + name, seed};
        write_tensor(out_dir / f.input, to_tensor(pair.input));
        write_tensor(out_dir / f.target, to_tensor(pair.target));
        m.files[i] = std::move(f);
      },
      workers == 0 ? worker_count() : workers);

  write_manifest(out_dir / "manifest.json", m);
  return m;
}

}  // namespace isp
