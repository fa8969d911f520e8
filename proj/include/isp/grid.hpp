// SPDX-License-Identifier: Apache-2.0

#ifndef ISP_GRID_HPP
#define ISP_GRID_HPP

#include <compare>
#include <cstdint>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace isp
{

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Reference value of the zero-frequency offset used by the measurement design.
inline constexpr double kDefaultLambda = 1e-3;

struct Vec2
{
  double x1 = 0.0;
  double x2 = 0.0;

  friend bool operator==(const Vec2 &, const Vec2 &) = default;
};

inline double dot(const Vec2 &u, const Vec2 &v) { return u.x1 * v.x1 + u.x2 * v.x2; }

//
// Square sampling domain V0 = (-a/2, a/2)^2 discretized into n x n pixels. Pixel (i, j)
// follows the image convention: row i runs downward (decreasing x2), column j runs to the
// right (increasing x1).
//
class GridSpec
{
public:
  GridSpec(double a = 1.0, int n = 64);

  double edge() const { return a_; }
  int size() const { return n_; }
  double pixel_width() const { return a_ / n_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(n_) * n_; }

  // Coordinates of the pixel center; throws std::out_of_range outside [0, n).
  Vec2 pixel_center(int i, int j) const;

  // Unchecked per-axis coordinates of pixel centers.
  double column_x1(int j) const { return -0.5 * a_ + (j + 0.5) * pixel_width(); }
  double row_x2(int i) const { return 0.5 * a_ - (i + 0.5) * pixel_width(); }

  friend bool operator==(const GridSpec &, const GridSpec &) = default;

private:
  double a_;
  int n_;
};

struct MultiIndex
{
  int l1 = 0;
  int l2 = 0;

  int inf_norm() const;
  double euclidean_norm() const;
  bool is_zero() const { return l1 == 0 && l2 == 0; }
  MultiIndex operator-() const { return {-l1, -l2}; }

  friend auto operator<=>(const MultiIndex &, const MultiIndex &) = default;
};

std::string to_string(const MultiIndex &l);

// Position of l in the lexicographic (l1, l2) ordering of {|l|_inf <= N}.
std::size_t lexicographic_position(const MultiIndex &l, int N);
std::size_t index_count(int N);
MultiIndex index_at_position(std::size_t position, int N);

// Real-valued source image S on a grid. All entries are finite.
class SourceRaster
{
public:
  explicit SourceRaster(GridSpec grid);
  SourceRaster(GridSpec grid, std::vector<double> values);

  template <typename F>
  static SourceRaster sample(const GridSpec &grid, F &&f)
  {
    std::vector<double> v(grid.pixel_count());
    for (int i = 0; i < grid.size(); i++)
    {
      for (int j = 0; j < grid.size(); j++)
      {
        v[static_cast<std::size_t>(i) * grid.size() + j] = f(grid.pixel_center(i, j));
      }
    }
    return SourceRaster(grid, std::move(v));
  }

  const GridSpec &grid() const { return grid_; }
  double operator()(int i, int j) const
  {
    return values_[static_cast<std::size_t>(i) * grid_.size() + j];
  }
  std::span<const double> values() const { return values_; }

private:
  GridSpec grid_;
  std::vector<double> values_;
};

// Real part of an evaluated truncated series together with the largest imaginary
// magnitude that was dropped.
class ReconstructionRaster
{
public:
  ReconstructionRaster(GridSpec grid, std::vector<double> values, double max_imag_residual);

  const GridSpec &grid() const { return grid_; }
  double operator()(int i, int j) const
  {
    return values_[static_cast<std::size_t>(i) * grid_.size() + j];
  }
  std::span<const double> values() const { return values_; }
  double max_imag_residual() const { return max_imag_residual_; }

private:
  GridSpec grid_;
  std::vector<double> values_;
  double max_imag_residual_;
};

struct PlanEntry
{
  MultiIndex index;
  double wavenumber;
  Vec2 direction;
};

// Identity of a measurement plan: two plans with equal keys have identical entries.
struct PlanKey
{
  int N = 0;
  double a = 0.0;
  double lambda = 0.0;

  friend bool operator==(const PlanKey &, const PlanKey &) = default;
};

//
// Wavenumbers and observation directions for every |l|_inf <= N, in lexicographic (l1, l2)
// order. For l != 0, k = 2 pi |l| / a and the direction is l / |l|; the zero index uses
// k = 2 pi lambda / a along (1, 0), which requires 0 < 2 pi lambda / a < 1/2.
//
class MeasurementPlan
{
public:
  int truncation() const { return key_.N; }
  double edge() const { return key_.a; }
  double lambda() const { return key_.lambda; }
  const PlanKey &key() const { return key_; }

  std::span<const PlanEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const PlanEntry &entry(const MultiIndex &l) const;

  // Throws std::out_of_range if |l|_inf > N.
  std::size_t position(const MultiIndex &l) const;

private:
  friend MeasurementPlan build_measurement_plan(int N, double a, double lambda);
  MeasurementPlan(PlanKey key, std::vector<PlanEntry> entries)
    : key_(key), entries_(std::move(entries))
  {
  }

  PlanKey key_;
  std::vector<PlanEntry> entries_;
};

MeasurementPlan build_measurement_plan(int N, double a = 1.0, double lambda = kDefaultLambda);

// Far-field values u_inf(x_l; k_l) aligned with a plan's entry order.
class FarFieldSet
{
public:
  FarFieldSet(const MeasurementPlan &plan, std::vector<Complex> values, double noise_delta = 0.0,
              std::optional<std::uint64_t> seed = std::nullopt);
  FarFieldSet(const PlanKey &key, std::vector<Complex> values, double noise_delta = 0.0,
              std::optional<std::uint64_t> seed = std::nullopt);

  // Build from an index-keyed map; every plan index must be present.
  static FarFieldSet from_map(const MeasurementPlan &plan,
                              const std::vector<std::pair<MultiIndex, Complex>> &entries);

  const PlanKey &plan_key() const { return key_; }
  std::span<const Complex> values() const { return values_; }
  Complex at(const MultiIndex &l) const;
  MultiIndex index_at(std::size_t position) const;
  double noise_delta() const { return noise_delta_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

private:
  PlanKey key_;
  std::vector<Complex> values_;
  double noise_delta_;
  std::optional<std::uint64_t> seed_;
};

// Fourier coefficients s_l for |l|_inf <= N in lexicographic order.
class CoefficientSet
{
public:
  CoefficientSet(int N, std::vector<Complex> coefficients);
  static CoefficientSet zeros(int N);

  int truncation() const { return N_; }
  std::span<const Complex> values() const { return coefficients_; }
  Complex at(const MultiIndex &l) const;
  void set(const MultiIndex &l, Complex value);

private:
  int N_;
  std::vector<Complex> coefficients_;
};

}  // namespace isp

#endif  // ISP_GRID_HPP
