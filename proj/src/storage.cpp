// SPDX-License-Identifier: Apache-2.0

#include "isp/storage.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isp/error.hpp"

namespace isp
{

using nlohmann::json;

namespace
{

constexpr std::uint8_t kMagic[4] = {'T', 'N', 'S', 'R'};
constexpr std::size_t kFixedHeader = 8;

void put_u16(std::vector<std::uint8_t> &out, std::uint16_t v)
{
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v)
{
  for (int s = 0; s < 32; s += 8)
  {
    out.push_back(static_cast<std::uint8_t>((v >> s) & 0xFF));
  }
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t off)
{
  return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

Tensor real_tensor(const GridSpec &grid, std::span<const double> values)
{
  Tensor t;
  t.dtype = DType::Real32;
  const auto n = static_cast<std::uint32_t>(grid.size());
  t.dims = {n, n};
  t.data.assign(values.begin(), values.end());
  return t;
}

template <typename T>
T field(const json &j, const char *key, const char *where)
{
  if (!j.contains(key))
  {
    throw Error(std::string(where) + ": missing field \"" + key + "\"");
  }
  try
  {
    return j.at(key).get<T>();
  }
  catch (const json::exception &e)
  {
    throw Error(std::string(where) + ": field \"" + key + "\" has the wrong type");
  }
}

json parse_json(std::string_view text, const char *what)
{
  try
  {
    return json::parse(text);
  }
  catch (const json::parse_error &e)
  {
    throw FormatError(std::string(what) + " is not valid JSON", e.byte);
  }
}

}  // namespace

std::size_t Tensor::element_count() const
{
  std::size_t c = 1;
  for (auto d : dims)
  {
    c *= d;
  }
  return c;
}

bool Tensor::bit_equal(const Tensor &other) const
{
  return dtype == other.dtype && dims == other.dims && data.size() == other.data.size() &&
         std::memcmp(data.data(), other.data.data(), data.size() * sizeof(float)) == 0;
}

std::vector<std::uint8_t> encode_tensor(const Tensor &t)
{
  if (t.dims.size() > 255)
  {
    throw std::invalid_argument("tensor rank exceeds 255");
  }
  if (t.data.size() != t.element_count() * t.scalars_per_element())
  {
    throw std::invalid_argument("tensor payload has " + std::to_string(t.data.size()) +
                                " scalars, dims require " +
                                std::to_string(t.element_count() * t.scalars_per_element()));
  }
  std::vector<std::uint8_t> out;
  out.reserve(kFixedHeader + 4 * t.dims.size() + 4 * t.data.size());
  for (auto b : kMagic)
  {
    out.push_back(b);
  }
  put_u16(out, kTensorVersion);
  out.push_back(static_cast<std::uint8_t>(t.dtype));
  out.push_back(static_cast<std::uint8_t>(t.dims.size()));
  for (auto d : t.dims)
  {
    put_u32(out, d);
  }
  for (float f : t.data)
  {
    put_u32(out, std::bit_cast<std::uint32_t>(f));
  }
  return out;
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() < kFixedHeader)
  {
    throw FormatError("tensor header truncated", bytes.size());
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0)
  {
    throw FormatError("bad tensor magic, expected \"TNSR\"", 0);
  }
  const std::uint16_t version = static_cast<std::uint16_t>(bytes[4] | (bytes[5] << 8));
  if (version != kTensorVersion)
  {
    throw FormatError("unsupported tensor version " + std::to_string(version), 4);
  }
  if (bytes[6] > 1)
  {
    throw FormatError("unknown tensor dtype " + std::to_string(bytes[6]), 6);
  }
  Tensor t;
  t.dtype = static_cast<DType>(bytes[6]);
  const std::size_t rank = bytes[7];
  const std::size_t payload_offset = kFixedHeader + 4 * rank;
  if (bytes.size() < payload_offset)
  {
    throw FormatError("tensor dims truncated", bytes.size());
  }
  t.dims.resize(rank);
  for (std::size_t r = 0; r < rank; r++)
  {
    t.dims[r] = get_u32(bytes, kFixedHeader + 4 * r);
  }
  const std::size_t scalars = t.element_count() * t.scalars_per_element();
  if (bytes.size() - payload_offset != 4 * scalars)
  {
    throw FormatError("tensor payload is " + std::to_string(bytes.size() - payload_offset) +
                          " bytes, dims require " + std::to_string(4 * scalars),
                      payload_offset);
  }
  t.data.resize(scalars);
  for (std::size_t s = 0; s < scalars; s++)
  {
    t.data[s] = std::bit_cast<float>(get_u32(bytes, payload_offset + 4 * s));
  }
  return t;
}

void write_tensor(const std::filesystem::path &path, const Tensor &t)
{
  write_file_bytes(path, encode_tensor(t));
}

Tensor read_tensor(const std::filesystem::path &path)
{
  const auto bytes = read_file_bytes(path);
  try
  {
    return decode_tensor(bytes);
  }
  catch (const FormatError &e)
  {
    throw FormatError(path.string() + ": " + e.what(), e.offset());
  }
}

Tensor to_tensor(const SourceRaster &raster) { return real_tensor(raster.grid(), raster.values()); }

Tensor to_tensor(const ReconstructionRaster &raster)
{
  return real_tensor(raster.grid(), raster.values());
}

Tensor to_tensor(const FarFieldSet &data)
{
  Tensor t;
  t.dtype = DType::Complex64;
  t.dims = {static_cast<std::uint32_t>(data.values().size())};
  for (const auto &u : data.values())
  {
    t.data.push_back(static_cast<float>(u.real()));
    t.data.push_back(static_cast<float>(u.imag()));
  }
  return t;
}

int raster_side(const Tensor &t)
{
  if (t.dtype != DType::Real32 || t.dims.size() != 2 || t.dims[0] != t.dims[1] || t.dims[0] < 2)
  {
    throw Error("expected a square real rank-2 tensor");
  }
  return static_cast<int>(t.dims[0]);
}

std::vector<double> raster_values(const Tensor &t)
{
  raster_side(t);
  return {t.data.begin(), t.data.end()};
}

SourceRaster source_from_tensor(const Tensor &t, double a)
{
  const int n = raster_side(t);
  return SourceRaster(GridSpec(a, n), raster_values(t));
}

std::vector<Complex> complex_values(const Tensor &t)
{
  if (t.dtype != DType::Complex64 || t.dims.size() != 1)
  {
    throw Error("expected a complex rank-1 tensor");
  }
  std::vector<Complex> out(t.dims[0]);
  for (std::size_t p = 0; p < out.size(); p++)
  {
    out[p] = {t.data[2 * p], t.data[2 * p + 1]};
  }
  return out;
}

std::string manifest_to_json(const DatasetManifest &m)
{
  json files = json::array();
  for (const auto &f : m.files)
  {
    files.push_back({{"input", f.input}, {"target", f.target}, {"sample_seed", f.sample_seed}});
  }
  json j = {
      {"format_version", m.format_version},
      {"kind", m.kind},
      {"grid", {{"a", m.a}, {"n", m.n}}},
      {"N", m.N},
      {"lambda", m.lambda},
      {"delta", m.delta},
      {"master_seed", m.master_seed},
      {"count", m.count},
      {"split", {{"train", m.split_train}, {"test", m.split_test}}},
      {"files", files},
      {"source_provenance", m.source_provenance},
  };
  return j.dump(2) + "\n";
}

DatasetManifest manifest_from_json(std::string_view text)
{
  const json j = parse_json(text, "manifest");
  constexpr const char *where = "manifest";
  if (!j.is_object())
  {
    throw Error("manifest: top level must be an object");
  }
  DatasetManifest m;
  m.format_version = field<int>(j, "format_version", where);
  if (m.format_version != 1)
  {
    throw Error("manifest: unsupported format_version " + std::to_string(m.format_version));
  }
  m.kind = field<std::string>(j, "kind", where);
  if (m.kind != "disks" && m.kind != "rasters")
  {
    throw Error("manifest: kind must be \"disks\" or \"rasters\", got \"" + m.kind + "\"");
  }
  const auto grid = field<json>(j, "grid", where);
  m.a = field<double>(grid, "a", "manifest.grid");
  m.n = field<int>(grid, "n", "manifest.grid");
  m.N = field<int>(j, "N", where);
  m.lambda = field<double>(j, "lambda", where);
  m.delta = field<double>(j, "delta", where);
  if (!j.contains("master_seed") || !j.at("master_seed").is_number_unsigned())
  {
    throw Error("manifest: master_seed must be an unsigned 64-bit integer");
  }
  m.master_seed = j.at("master_seed").get<std::uint64_t>();
  m.count = field<std::size_t>(j, "count", where);
  const auto split = field<json>(j, "split", where);
  m.split_train = field<std::size_t>(split, "train", "manifest.split");
  m.split_test = field<std::size_t>(split, "test", "manifest.split");
  const auto files = field<json>(j, "files", where);
  if (!files.is_array())
  {
    throw Error("manifest: files must be an array");
  }
  for (const auto &f : files)
  {
    if (!f.contains("sample_seed") || !f.at("sample_seed").is_number_unsigned())
    {
      throw Error("manifest.files: sample_seed must be an unsigned 64-bit integer");
    }
    m.files.push_back({field<std::string>(f, "input", "manifest.files"),
                       field<std::string>(f, "target", "manifest.files"),
                       f.at("sample_seed").get<std::uint64_t>()});
  }
  m.source_provenance = field<std::string>(j, "source_provenance", where);

  if (!(m.a > 0.0) || m.n < 2 || m.N < 1 || !(m.lambda > 0.0) || !(m.delta >= 0.0))
  {
    throw Error("manifest: grid/N/lambda/delta out of range");
  }
  if (m.count != m.files.size() || m.count != m.split_train + m.split_test || m.count == 0)
  {
    throw Error("manifest: count " + std::to_string(m.count) + " inconsistent with " +
                std::to_string(m.files.size()) + " files and split " +
                std::to_string(m.split_train) + "/" + std::to_string(m.split_test));
  }
  return m;
}

void write_manifest(const std::filesystem::path &path, const DatasetManifest &m)
{
  write_text_file(path, manifest_to_json(m));
}

DatasetManifest read_manifest(const std::filesystem::path &path)
{
  try
  {
    return manifest_from_json(read_text_file(path));
  }
  catch (const FormatError &e)
  {
    throw FormatError(path.string() + ": " + e.what(), e.offset());
  }
  catch (const IoError &)
  {
    throw;
  }
  catch (const Error &e)
  {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string plan_to_json(const MeasurementPlan &plan)
{
  json entries = json::array();
  for (const auto &e : plan.entries())
  {
    entries.push_back({{"l", {e.index.l1, e.index.l2}},
                       {"k", e.wavenumber},
                       {"direction", {e.direction.x1, e.direction.x2}}});
  }
  json j = {{"N", plan.truncation()},
            {"a", plan.edge()},
            {"lambda", plan.lambda()},
            {"count", plan.size()},
            {"ordering", "lexicographic (l1, l2)"},
            {"entries", entries}};
  return j.dump(2) + "\n";
}

MeasurementPlan plan_from_json(std::string_view text)
{
  const json j = parse_json(text, "plan");
  constexpr const char *where = "plan";
  auto plan = build_measurement_plan(field<int>(j, "N", where), field<double>(j, "a", where),
                                     field<double>(j, "lambda", where));
  if (j.contains("entries"))
  {
    const auto &entries = j.at("entries");
    if (!entries.is_array() || entries.size() != plan.size())
    {
      throw Error("plan: entry list does not match (2N+1)^2 = " + std::to_string(plan.size()));
    }
    for (std::size_t p = 0; p < plan.size(); p++)
    {
      const auto &e = plan.entries()[p];
      try
      {
        const auto l = entries[p].at("l").get<std::vector<int>>();
        const double k = entries[p].at("k").get<double>();
        if (l.size() != 2 || l[0] != e.index.l1 || l[1] != e.index.l2 ||
            std::abs(k - e.wavenumber) > 1e-12 * std::max(1.0, e.wavenumber))
        {
          throw Error("plan: entry " + std::to_string(p) + " disagrees with index " +
                      to_string(e.index));
        }
      }
      catch (const json::exception &)
      {
        throw Error("plan: entry " + std::to_string(p) + " is malformed");
      }
    }
  }
  return plan;
}

std::vector<std::uint8_t> encode_pgm(const GrayImage &img)
{
  if (img.width <= 0 || img.height <= 0 ||
      img.pixels.size() != static_cast<std::size_t>(img.width) * img.height)
  {
    throw std::invalid_argument("PGM image dimensions do not match pixel count");
  }
  const std::string header =
      "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes)
{
  std::size_t pos = 0;
  auto skip_space = [&]() {
    while (pos < bytes.size())
    {
      if (bytes[pos] == '#')
      {
        while (pos < bytes.size() && bytes[pos] != '\n')
        {
          pos++;
        }
      }
      else if (std::isspace(bytes[pos]))
      {
        pos++;
      }
      else
      {
        break;
      }
    }
  };
  auto read_int = [&]() {
    skip_space();
    const std::size_t start = pos;
    long v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos]))
    {
      v = v * 10 + (bytes[pos] - '0');
      if (v > 1'000'000)
      {
        throw FormatError("PGM header value too large", start);
      }
      pos++;
    }
    if (pos == start)
    {
      throw FormatError("PGM header expected an integer", start);
    }
    return static_cast<int>(v);
  };

  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
  {
    throw FormatError("not a binary PGM (missing \"P5\")", 0);
  }
  pos = 2;
  GrayImage img;
  img.width = read_int();
  img.height = read_int();
  const std::size_t maxval_at = pos;
  const int maxval = read_int();
  if (maxval != 255)
  {
    throw FormatError("PGM maxval must be 255", maxval_at);
  }
  if (pos >= bytes.size() || !std::isspace(bytes[pos]))
  {
    throw FormatError("PGM header must end with one whitespace byte", pos);
  }
  pos++;
  const auto expected = static_cast<std::size_t>(img.width) * img.height;
  if (img.width == 0 || img.height == 0 || bytes.size() - pos != expected)
  {
    throw FormatError("PGM payload is " + std::to_string(bytes.size() - pos) +
                          " bytes, header requires " + std::to_string(expected),
                      pos);
  }
  img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return img;
}

GrayImage to_gray(std::span<const double> values, int width, int height, double lo, double hi)
{
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
  {
    throw std::invalid_argument("degenerate PGM value range");
  }
  if (values.size() != static_cast<std::size_t>(width) * height)
  {
    throw std::invalid_argument("raster size does not match image dimensions");
  }
  GrayImage img{width, height, std::vector<std::uint8_t>(values.size())};
  for (std::size_t p = 0; p < values.size(); p++)
  {
    if (!std::isfinite(values[p]))
    {
      throw Error("cannot export non-finite raster value at flat index " + std::to_string(p));
    }
    const double scaled = std::round(255.0 * (values[p] - lo) / (hi - lo));
    img.pixels[p] = static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
  }
  return img;
}

void export_pgm(std::span<const double> values, int side, const std::filesystem::path &path,
                double lo, double hi)
{
  write_file_bytes(path, encode_pgm(to_gray(values, side, side, lo, hi)));
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw IoError("cannot open file for reading", path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad())
  {
    throw IoError("read failed", path.string());
  }
  return bytes;
}

void write_file_bytes(const std::filesystem::path &path, std::span<const std::uint8_t> bytes)
{
  if (path.has_parent_path())
  {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
  {
    throw IoError("cannot open file for writing", path.string());
  }
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out)
  {
    throw IoError("write failed", path.string());
  }
}

std::string read_text_file(const std::filesystem::path &path)
{
  const auto bytes = read_file_bytes(path);
  return {bytes.begin(), bytes.end()};
}

void write_text_file(const std::filesystem::path &path, std::string_view text)
{
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()),
                                   text.size()));
}

}  // namespace isp
