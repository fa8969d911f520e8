// SPDX-License-Identifier: Apache-2.0

#include "isp/special.hpp"

#include <cmath>
#include <stdexcept>

namespace isp
{

namespace
{

double j1_series(double x)
{
  // sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!)
  const double half = 0.5 * x;
  const double q = -half * half;
  double term = half;
  double sum = term;
  for (int k = 1; k < 60; k++)
  {
    term *= q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum))
    {
      break;
    }
  }
  return sum;
}

double j1_miller(double x)
{
  constexpr double kRescale = 1e250;
  int start = static_cast<int>(x + std::sqrt(160.0 * x) + 20.0);
  start += start % 2;

  // Recurrence J_{m-1} = (2m/x) J_m - J_{m+1}, run downward from a tiny seed.
  double next = 0.0;  // J_{m+1}
  double curr = 1e-300;  // J_m
  double j1 = 0.0;
  double even_sum = 0.0;  // sum of J_{2k}, k >= 1
  for (int m = start; m >= 1; m--)
  {
    const double prev = (2.0 * m / x) * curr - next;
    next = curr;
    curr = prev;  // now J_{m-1}
    if (m - 1 == 1)
    {
      j1 = curr;
    }
    if ((m - 1) % 2 == 0 && m - 1 > 0)
    {
      even_sum += curr;
    }
    if (std::abs(curr) > kRescale)
    {
      curr /= kRescale;
      next /= kRescale;
      j1 /= kRescale;
      even_sum /= kRescale;
    }
  }
  // curr holds J_0; 1 = J_0 + 2 sum J_{2k}.
  return j1 / (curr + 2.0 * even_sum);
}

}  // namespace

double bessel_j1(double x)
{
  if (!std::isfinite(x))
  {
    throw std::invalid_argument("bessel_j1 requires a finite argument");
  }
  if (x < 0.0)
  {
    return -bessel_j1(-x);
  }
  if (x <= 8.0)
  {
    return j1_series(x);
  }
  return j1_miller(x);
}

}  // namespace isp
