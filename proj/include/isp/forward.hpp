// SPDX-License-Identifier: Apache-2.0

#ifndef ISP_FORWARD_HPP
#define ISP_FORWARD_HPP

#include <cstdint>

#include "isp/grid.hpp"

namespace isp
{

// Constant-valued disk inside V0.
struct DiskSpec
{
  Vec2 center;
  double radius = 0.0;
  double amplitude = 0.0;

  // |c_1| + r <= a/2 and |c_2| + r <= a/2.
  bool contained_in(double a) const;
};

// gamma(k) = e^{i pi/4} / sqrt(8 pi k).
Complex far_field_gamma(double k);

//
// Far-field pattern u_inf(x; k) = -gamma(k) int_{V0} S(y) e^{-i k x.y} dy, with the integral
// taken by the midpoint rule over pixel centers (S piecewise constant on pixels). The phase
// factorizes per axis, so the sum costs O(n^2) multiply-adds and O(n) exponentials.
//
Complex far_field(const SourceRaster &source, double k, const Vec2 &direction);

// Evaluates far_field at every plan entry. The source grid must use the plan's edge length.
FarFieldSet synthesize(const SourceRaster &source, const MeasurementPlan &plan);

//
// Multiplicative noise u + delta |u| r1 e^{i pi r2}, r1 and r2 uniform on [-1, 1].
// Each entry l draws from its own generator seeded by derive_seed(seed, {l1, l2}), so the
// result is independent of evaluation order.
//
FarFieldSet add_noise(const FarFieldSet &data, double delta, std::uint64_t seed);

// Closed form for a constant disk: -gamma(k) A e^{-i k x.c} 2 pi R J1(kR) / k.
Complex analytic_disk_far_field(const DiskSpec &disk, double k, const Vec2 &direction);

}  // namespace isp

#endif  // ISP_FORWARD_HPP
