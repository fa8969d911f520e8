// SPDX-License-Identifier: Apache-2.0

#include "isp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "isp/error.hpp"

namespace isp
{

namespace
{

void require_finite(std::span<const double> values, const char *what)
{
  for (std::size_t p = 0; p < values.size(); p++)
  {
    if (!std::isfinite(values[p]))
    {
      throw Error(std::string(what) + " has a non-finite entry at flat index " +
                  std::to_string(p));
    }
  }
}

void require_finite(std::span<const Complex> values, const char *what)
{
  for (std::size_t p = 0; p < values.size(); p++)
  {
    if (!std::isfinite(values[p].real()) || !std::isfinite(values[p].imag()))
    {
      throw Error(std::string(what) + " has a non-finite entry at position " +
                  std::to_string(p));
    }
  }
}

}  // namespace

GridSpec::GridSpec(double a, int n) : a_(a), n_(n)
{
  if (!(a > 0.0) || !std::isfinite(a))
  {
    throw std::invalid_argument("grid edge length a must be finite and > 0");
  }
  if (n < 2)
  {
    throw std::invalid_argument("grid size n must be >= 2");
  }
}

Vec2 GridSpec::pixel_center(int i, int j) const
{
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
  {
    throw std::out_of_range("pixel index (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") outside [0, " + std::to_string(n_) + ")");
  }
  return {column_x1(j), row_x2(i)};
}

int MultiIndex::inf_norm() const { return std::max(std::abs(l1), std::abs(l2)); }

double MultiIndex::euclidean_norm() const
{
  return std::hypot(static_cast<double>(l1), static_cast<double>(l2));
}

std::string to_string(const MultiIndex &l)
{
  return "(" + std::to_string(l.l1) + ", " + std::to_string(l.l2) + ")";
}

std::size_t index_count(int N)
{
  const auto side = static_cast<std::size_t>(2 * N + 1);
  return side * side;
}

std::size_t lexicographic_position(const MultiIndex &l, int N)
{
  if (l.inf_norm() > N)
  {
    throw std::out_of_range("index " + to_string(l) + " exceeds truncation N = " +
                            std::to_string(N));
  }
  const auto side = static_cast<std::size_t>(2 * N + 1);
  return static_cast<std::size_t>(l.l1 + N) * side + static_cast<std::size_t>(l.l2 + N);
}

MultiIndex index_at_position(std::size_t position, int N)
{
  const auto side = static_cast<std::size_t>(2 * N + 1);
  if (position >= side * side)
  {
    throw std::out_of_range("position " + std::to_string(position) + " outside index set");
  }
  return {static_cast<int>(position / side) - N, static_cast<int>(position % side) - N};
}

SourceRaster::SourceRaster(GridSpec grid) : grid_(grid), values_(grid.pixel_count(), 0.0) {}

SourceRaster::SourceRaster(GridSpec grid, std::vector<double> values)
  : grid_(grid), values_(std::move(values))
{
  if (values_.size() != grid_.pixel_count())
  {
    throw std::invalid_argument("source raster has " + std::to_string(values_.size()) +
                                " values, grid expects " + std::to_string(grid_.pixel_count()));
  }
  require_finite(values_, "source raster");
}

ReconstructionRaster::ReconstructionRaster(GridSpec grid, std::vector<double> values,
                                           double max_imag_residual)
  : grid_(grid), values_(std::move(values)), max_imag_residual_(max_imag_residual)
{
  if (values_.size() != grid_.pixel_count())
  {
    throw std::invalid_argument("reconstruction has " + std::to_string(values_.size()) +
                                " values, grid expects " + std::to_string(grid_.pixel_count()));
  }
  require_finite(values_, "reconstruction raster");
  if (!(max_imag_residual_ >= 0.0))
  {
    throw std::invalid_argument("max_imag_residual must be >= 0");
  }
}

MeasurementPlan build_measurement_plan(int N, double a, double lambda)
{
  if (N < 1)
  {
    throw std::invalid_argument("truncation N must be >= 1");
  }
  if (!(a > 0.0) || !std::isfinite(a))
  {
    throw std::invalid_argument("edge length a must be finite and > 0");
  }
  const double base = 2.0 * kPi / a;
  if (!(lambda > 0.0) || !(base * lambda < 0.5))
  {
    std::ostringstream msg;
    msg << "lambda = " << lambda << " violates 0 < (2*pi/a)*lambda < 1/2 (a = " << a
        << ", bound lambda < " << a / (4.0 * kPi) << ")";
    throw std::invalid_argument(msg.str());
  }

  std::vector<PlanEntry> entries;
  entries.reserve(index_count(N));
  for (int l1 = -N; l1 <= N; l1++)
  {
    for (int l2 = -N; l2 <= N; l2++)
    {
      const MultiIndex l{l1, l2};
      if (l.is_zero())
      {
        entries.push_back({l, base * lambda, {1.0, 0.0}});
      }
      else
      {
        const double norm = l.euclidean_norm();
        entries.push_back({l, base * norm, {l1 / norm, l2 / norm}});
      }
    }
  }
  return MeasurementPlan({N, a, lambda}, std::move(entries));
}

std::size_t MeasurementPlan::position(const MultiIndex &l) const
{
  return lexicographic_position(l, key_.N);
}

const PlanEntry &MeasurementPlan::entry(const MultiIndex &l) const
{
  return entries_[position(l)];
}

FarFieldSet::FarFieldSet(const MeasurementPlan &plan, std::vector<Complex> values,
                         double noise_delta, std::optional<std::uint64_t> seed)
  : FarFieldSet(plan.key(), std::move(values), noise_delta, seed)
{
}

FarFieldSet::FarFieldSet(const PlanKey &key, std::vector<Complex> values, double noise_delta,
                         std::optional<std::uint64_t> seed)
  : key_(key), values_(std::move(values)), noise_delta_(noise_delta), seed_(seed)
{
  if (values_.size() != index_count(key_.N))
  {
    throw Error("far-field set has " + std::to_string(values_.size()) +
                " values, plan has " + std::to_string(index_count(key_.N)) + " entries");
  }
  if (!(noise_delta >= 0.0))
  {
    throw std::invalid_argument("noise level must be >= 0");
  }
  require_finite(values_, "far-field set");
}

FarFieldSet FarFieldSet::from_map(const MeasurementPlan &plan,
                                  const std::vector<std::pair<MultiIndex, Complex>> &entries)
{
  std::vector<Complex> values(plan.size());
  std::vector<bool> seen(plan.size(), false);
  for (const auto &[l, u] : entries)
  {
    if (l.inf_norm() > plan.truncation())
    {
      throw Error("far-field index " + to_string(l) + " is not part of the plan");
    }
    const auto p = plan.position(l);
    values[p] = u;
    seen[p] = true;
  }
  for (std::size_t p = 0; p < seen.size(); p++)
  {
    if (!seen[p])
    {
      throw Error("far-field data is missing plan index " + to_string(plan.entries()[p].index));
    }
  }
  return FarFieldSet(plan, std::move(values));
}

Complex FarFieldSet::at(const MultiIndex &l) const
{
  return values_[lexicographic_position(l, key_.N)];
}

MultiIndex FarFieldSet::index_at(std::size_t position) const
{
  return index_at_position(position, key_.N);
}

CoefficientSet::CoefficientSet(int N, std::vector<Complex> coefficients)
  : N_(N), coefficients_(std::move(coefficients))
{
  if (N < 0)
  {
    throw std::invalid_argument("coefficient truncation must be >= 0");
  }
  if (coefficients_.size() != index_count(N))
  {
    throw std::invalid_argument("coefficient set for N = " + std::to_string(N) + " needs " +
                                std::to_string(index_count(N)) + " entries, got " +
                                std::to_string(coefficients_.size()));
  }
  require_finite(coefficients_, "coefficient set");
}

CoefficientSet CoefficientSet::zeros(int N)
{
  return CoefficientSet(N, std::vector<Complex>(index_count(N)));
}

Complex CoefficientSet::at(const MultiIndex &l) const
{
  return coefficients_[lexicographic_position(l, N_)];
}

void CoefficientSet::set(const MultiIndex &l, Complex value)
{
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
  {
    throw Error("coefficient for " + to_string(l) + " is not finite");
  }
  coefficients_[lexicographic_position(l, N_)] = value;
}

}  // namespace isp
