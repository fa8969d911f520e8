// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <catch_amalgamated.hpp>

#include "isp/special.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;

TEST_CASE("J1 matches the integral representation on (0, 200]", "[bessel]")
{
  double worst = 0.0;
  for (int s = 1; s <= 4000; s++)
  {
    const double x = 0.05 * s;
    const double ref = isp::oracle::bessel_j1_integral(x);
    worst = std::max(worst, std::abs(isp::bessel_j1(x) - ref));
  }
  INFO("max |J1 - oracle| = " << worst);
  CHECK(worst < 1e-10);

  for (double x : {1e-8, 1e-3, 0.5, 3.8317059702075, 7.999, 8.0, 8.001, 12.0, 57.3, 199.99})
  {
    CHECK_THAT(isp::bessel_j1(x), WithinAbs(isp::oracle::bessel_j1_integral(x), 1e-10));
  }
}

TEST_CASE("J1 agrees with the standard library special function", "[bessel]")
{
  for (double x = 0.01; x <= 200.0; x += 0.37)
  {
    CHECK_THAT(isp::bessel_j1(x), WithinAbs(std::cyl_bessel_j(1.0, x), 1e-10));
  }
}

TEST_CASE("J1 is odd and behaves like x/2 near zero", "[bessel]")
{
  CHECK(isp::bessel_j1(0.0) == 0.0);
  for (double x : {0.3, 5.0, 40.0})
  {
    CHECK(isp::bessel_j1(-x) == -isp::bessel_j1(x));
  }
  CHECK_THAT(isp::bessel_j1(1e-6), WithinAbs(5e-7, 1e-18));
  CHECK_THROWS_AS(isp::bessel_j1(NAN), std::invalid_argument);
}
