// SPDX-License-Identifier: Apache-2.0

#include "isp/forward.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "isp/error.hpp"
#include "isp/rng.hpp"
#include "isp/special.hpp"

namespace isp
{

bool DiskSpec::contained_in(double a) const
{
  return std::abs(center.x1) + radius <= 0.5 * a && std::abs(center.x2) + radius <= 0.5 * a;
}

Complex far_field_gamma(double k)
{
  if (!(k > 0.0) || !std::isfinite(k))
  {
    throw std::invalid_argument("gamma(k) requires finite k > 0");
  }
  return std::polar(1.0, 0.25 * kPi) / std::sqrt(8.0 * kPi * k);
}

Complex far_field(const SourceRaster &source, double k, const Vec2 &direction)
{
  const Complex g = far_field_gamma(k);
  const auto &grid = source.grid();
  const int n = grid.size();
  const double h = grid.pixel_width();

  std::vector<Complex> phase_x1(n), phase_x2(n);
  for (int j = 0; j < n; j++)
  {
    phase_x1[j] = std::polar(1.0, -k * (direction.x1 * grid.column_x1(j)));
  }
  for (int i = 0; i < n; i++)
  {
    phase_x2[i] = std::polar(1.0, -k * (direction.x2 * grid.row_x2(i)));
  }

  Complex total = 0.0;
  for (int i = 0; i < n; i++)
  {
    Complex row = 0.0;
    for (int j = 0; j < n; j++)
    {
      row += source(i, j) * phase_x1[j];
    }
    total += row * phase_x2[i];
  }
  return -g * (h * h) * total;
}

FarFieldSet synthesize(const SourceRaster &source, const MeasurementPlan &plan)
{
  if (source.grid().edge() != plan.edge())
  {
    throw std::invalid_argument("source grid edge a = " + std::to_string(source.grid().edge()) +
                                " differs from plan edge a = " + std::to_string(plan.edge()));
  }
  std::vector<Complex> values;
  values.reserve(plan.size());
  for (const auto &e : plan.entries())
  {
    values.push_back(far_field(source, e.wavenumber, e.direction));
  }
  return FarFieldSet(plan.key(), std::move(values));
}

FarFieldSet add_noise(const FarFieldSet &data, double delta, std::uint64_t seed)
{
  if (!(delta >= 0.0) || !std::isfinite(delta))
  {
    throw std::invalid_argument("noise level delta must be finite and >= 0");
  }
  const auto clean = data.values();
  std::vector<Complex> noisy(clean.begin(), clean.end());
  if (delta != 0.0)
  {
    for (std::size_t p = 0; p < noisy.size(); p++)
    {
      const MultiIndex l = data.index_at(p);
      Rng rng(derive_seed(seed, {l.l1, l.l2}));
      const double r1 = rng.uniform(-1.0, 1.0);
      const double r2 = rng.uniform(-1.0, 1.0);
      noisy[p] += delta * std::abs(clean[p]) * r1 * std::polar(1.0, kPi * r2);
    }
  }
  return FarFieldSet(data.plan_key(), std::move(noisy), delta, seed);
}

Complex analytic_disk_far_field(const DiskSpec &disk, double k, const Vec2 &direction)
{
  const Complex g = far_field_gamma(k);
  if (!(disk.radius > 0.0))
  {
    throw std::invalid_argument("disk radius must be > 0");
  }
  const double R = disk.radius;
  const Complex shift = std::polar(1.0, -k * dot(direction, disk.center));
  return -g * disk.amplitude * shift * (2.0 * kPi * R * bessel_j1(k * R) / k);
}

}  // namespace isp
