// SPDX-License-Identifier: Apache-2.0

#include "isp/inversion.hpp"

#include <cmath>
#include <vector>

#include "isp/error.hpp"
#include "isp/forward.hpp"

namespace isp
{

double basis_inner_product(const MultiIndex &l, double lambda, double a)
{
  if (l.l2 != 0)
  {
    return 0.0;
  }
  const double sign = (l.l1 % 2 == 0) ? -1.0 : 1.0;  // (-1)^(l1+1)
  return a * a * sign * std::sin(kPi * lambda) / (kPi * (l.l1 - lambda));
}

CoefficientSet recover_coefficients(const FarFieldSet &data, const MeasurementPlan &plan)
{
  if (!(data.plan_key() == plan.key()))
  {
    const auto &k = data.plan_key();
    throw Error("far-field data was taken with plan (N = " + std::to_string(k.N) +
                ", a = " + std::to_string(k.a) + ", lambda = " + std::to_string(k.lambda) +
                "), not the given plan (N = " + std::to_string(plan.truncation()) + ")");
  }
  const double a = plan.edge();
  const double lambda = plan.lambda();
  const double a2 = a * a;

  std::vector<Complex> coeffs(plan.size());
  const auto values = data.values();
  const auto entries = plan.entries();
  std::size_t zero_pos = 0;
  for (std::size_t p = 0; p < entries.size(); p++)
  {
    if (entries[p].index.is_zero())
    {
      zero_pos = p;
      continue;
    }
    coeffs[p] = -values[p] / (a2 * far_field_gamma(entries[p].wavenumber));
  }

  // Lexicographic accumulation keeps the correction sum order fixed.
  Complex correction = 0.0;
  for (std::size_t p = 0; p < entries.size(); p++)
  {
    if (p == zero_pos || entries[p].index.l2 != 0)
    {
      continue;
    }
    correction += coeffs[p] * basis_inner_product(entries[p].index, lambda, a);
  }
  const Complex u0 = values[zero_pos] / far_field_gamma(entries[zero_pos].wavenumber);
  coeffs[zero_pos] = -(lambda * kPi) / (a2 * std::sin(lambda * kPi)) * (u0 + correction);

  return CoefficientSet(plan.truncation(), std::move(coeffs));
}

ReconstructionRaster evaluate_series(const CoefficientSet &coeffs, const GridSpec &grid)
{
  const int N = coeffs.truncation();
  const int n = grid.size();
  const int side = 2 * N + 1;
  const double omega = 2.0 * kPi / grid.edge();

  // basis_x1[m][j] = exp(i omega (m - N) x1_j), likewise on rows.
  std::vector<Complex> basis_x1(static_cast<std::size_t>(side) * n);
  std::vector<Complex> basis_x2(static_cast<std::size_t>(side) * n);
  for (int m = 0; m < side; m++)
  {
    for (int t = 0; t < n; t++)
    {
      basis_x1[static_cast<std::size_t>(m) * n + t] =
          std::polar(1.0, omega * (m - N) * grid.column_x1(t));
      basis_x2[static_cast<std::size_t>(m) * n + t] =
          std::polar(1.0, omega * (m - N) * grid.row_x2(t));
    }
  }

  // partial[m1][i] = sum_{l2} s_{(l1, l2)} exp(i omega l2 x2_i)
  std::vector<Complex> partial(static_cast<std::size_t>(side) * n);
  for (int m1 = 0; m1 < side; m1++)
  {
    for (int i = 0; i < n; i++)
    {
      Complex acc = 0.0;
      for (int m2 = 0; m2 < side; m2++)
      {
        acc += coeffs.at({m1 - N, m2 - N}) * basis_x2[static_cast<std::size_t>(m2) * n + i];
      }
      partial[static_cast<std::size_t>(m1) * n + i] = acc;
    }
  }

  std::vector<double> values(grid.pixel_count());
  double residual = 0.0;
  for (int i = 0; i < n; i++)
  {
    for (int j = 0; j < n; j++)
    {
      Complex acc = 0.0;
      for (int m1 = 0; m1 < side; m1++)
      {
        acc += partial[static_cast<std::size_t>(m1) * n + i] *
               basis_x1[static_cast<std::size_t>(m1) * n + j];
      }
      values[static_cast<std::size_t>(i) * n + j] = acc.real();
      residual = std::max(residual, std::abs(acc.imag()));
    }
  }
  return ReconstructionRaster(grid, std::move(values), residual);
}

}  // namespace isp
