// SPDX-License-Identifier: Apache-2.0

#ifndef ISP_SPECIAL_HPP
#define ISP_SPECIAL_HPP

namespace isp
{

// Bessel function of the first kind, order one. Power series for |x| <= 8, Miller's
// normalized backward recurrence beyond; absolute error below 1e-13 for |x| <= 200.
double bessel_j1(double x);

}  // namespace isp

#endif  // ISP_SPECIAL_HPP
