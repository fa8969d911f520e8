// SPDX-License-Identifier: Apache-2.0

// Independent reference computations used only by tests. None of these call into the
// library's quadrature, series or Bessel code.

#ifndef ISP_TESTS_ORACLES_HPP
#define ISP_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>

namespace isp::oracle
{

inline constexpr double kPi = 3.14159265358979323846;

// J1(x) = (1/pi) int_0^pi cos(t - x sin t) dt. The integrand extends to a smooth periodic
// function, so the trapezoid rule converges geometrically once samples >> x.
inline double bessel_j1_integral(double x, int samples = 4096)
{
  const double h = kPi / samples;
  double sum = 0.5 * (std::cos(0.0) + std::cos(kPi - x * std::sin(kPi)));
  for (int s = 1; s < samples; s++)
  {
    const double t = s * h;
    sum += std::cos(t - x * std::sin(t));
  }
  return sum * h / kPi;
}

// Brute-force midpoint sum of -gamma(k) int S(y) exp(-i k d.y) dy with one exponential per
// pixel. `value(x1, x2)` is the source evaluated at a pixel center.
inline std::complex<double> far_field_bruteforce(const std::function<double(double, double)> &value,
                                                 double a, int n, double k, double d1, double d2)
{
  const double h = a / n;
  std::complex<double> sum = 0.0;
  for (int i = 0; i < n; i++)
  {
    const double x2 = 0.5 * a - (i + 0.5) * h;
    for (int j = 0; j < n; j++)
    {
      const double x1 = -0.5 * a + (j + 0.5) * h;
      const double s = value(x1, x2);
      if (s != 0.0)
      {
        sum += s * std::exp(std::complex<double>(0.0, -k * (d1 * x1 + d2 * x2)));
      }
    }
  }
  const std::complex<double> gamma =
      std::exp(std::complex<double>(0.0, kPi / 4)) / std::sqrt(8.0 * kPi * k);
  return -gamma * h * h * sum;
}

// 2D midpoint quadrature of phi_l(y) conj(phi_{(lambda, 0)}(y)) over (-a/2, a/2)^2.
inline std::complex<double> basis_inner_product_quadrature(int l1, int l2, double lambda, double a,
                                                           int n = 1024)
{
  const double h = a / n;
  const double w = 2.0 * kPi / a;
  std::complex<double> sum = 0.0;
  for (int i = 0; i < n; i++)
  {
    const double y2 = -0.5 * a + (i + 0.5) * h;
    std::complex<double> row = 0.0;
    for (int j = 0; j < n; j++)
    {
      const double y1 = -0.5 * a + (j + 0.5) * h;
      row += std::exp(std::complex<double>(0.0, w * ((l1 - lambda) * y1 + l2 * y2)));
    }
    sum += row;
  }
  return sum * h * h;
}

}  // namespace isp::oracle

#endif  // ISP_TESTS_ORACLES_HPP
