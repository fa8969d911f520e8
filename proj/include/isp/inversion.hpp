// SPDX-License-Identifier: Apache-2.0

#ifndef ISP_INVERSION_HPP
#define ISP_INVERSION_HPP

#include "isp/grid.hpp"

namespace isp
{

//
// Exact value of int_{V0} phi_l(y) conj(phi_{l0}(y)) dy with l0 = (lambda, 0) and
// phi_m(y) = exp(i 2 pi m.y / a). The integral separates per axis:
//
//   l2 != 0 : 0
//   l2 == 0 : a^2 (-1)^(l1+1) sin(pi lambda) / (pi (l1 - lambda))
//
// which is real. For l = 0 this reduces to a^2 sin(pi lambda) / (pi lambda).
//
double basis_inner_product(const MultiIndex &l, double lambda, double a);

//
// Explicit Fourier coefficients from far-field data:
//   s_l = -u_inf(x_l; k_l) / (a^2 gamma(k_l))                                   l != 0
//   s_0 = -(lambda pi)/(a^2 sin(lambda pi)) [u_inf(x_0; k_0)/gamma(k_0)
//                                           + sum_{l != 0} s_l <phi_l, phi_l0>]
// Throws isp::Error if the data was not taken with this plan.
//
CoefficientSet recover_coefficients(const FarFieldSet &data, const MeasurementPlan &plan);

// S_N(x) = sum_{|l|_inf <= N} s_l phi_l(x) at every pixel center. The real part is kept;
// the largest discarded |Im| is reported.
ReconstructionRaster evaluate_series(const CoefficientSet &coeffs, const GridSpec &grid);

}  // namespace isp

#endif  // ISP_INVERSION_HPP
