// SPDX-License-Identifier: Apache-2.0

#include "isp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "isp/error.hpp"

namespace isp
{

namespace
{

void require_same_shape(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size())
  {
    throw std::invalid_argument("raster sizes differ: " + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()));
  }
}

double mean_of(std::span<const double> v)
{
  double s = 0.0;
  for (double x : v)
  {
    s += x;
  }
  return s / v.size();
}

}  // namespace

double nmse(std::span<const double> pred, std::span<const double> truth)
{
  require_same_shape(pred, truth);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t p = 0; p < truth.size(); p++)
  {
    const double d = pred[p] - truth[p];
    num += d * d;
    den += truth[p] * truth[p];
  }
  if (!(den > 0.0))
  {
    throw Error("undefined NMSE: ground truth has zero norm");
  }
  return num / den;
}

double ssim_global(std::span<const double> x, std::span<const double> y)
{
  require_same_shape(x, y);
  if (x.size() < 2)
  {
    throw std::invalid_argument("SSIM needs at least 2 pixels");
  }
  const double c1 = (kSsimK1 * kSsimDynamicRange) * (kSsimK1 * kSsimDynamicRange);
  const double c2 = (kSsimK2 * kSsimDynamicRange) * (kSsimK2 * kSsimDynamicRange);

  const double mx = mean_of(x);
  const double my = mean_of(y);
  double vx = 0.0, vy = 0.0, cxy = 0.0;
  for (std::size_t p = 0; p < x.size(); p++)
  {
    const double dx = x[p] - mx;
    const double dy = y[p] - my;
    vx += dx * dx;
    vy += dy * dy;
    cxy += dx * dy;
  }
  vx /= x.size();
  vy /= x.size();
  cxy /= x.size();

  return ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) /
         ((mx * mx + my * my + c1) * (vx + vy + c2));
}

Histogram make_histogram(std::span<const double> values, std::size_t bins)
{
  if (bins == 0)
  {
    throw std::invalid_argument("histogram needs at least one bin");
  }
  if (values.empty())
  {
    throw std::invalid_argument("histogram of an empty sample");
  }
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  Histogram h{*mn, *mx, std::vector<std::size_t>(bins, 0)};
  if (!(h.hi > h.lo))
  {
    h.lo -= 0.5;
    h.hi += 0.5;
  }
  const double width = (h.hi - h.lo) / bins;
  for (double v : values)
  {
    auto b = static_cast<std::size_t>(std::floor((v - h.lo) / width));
    h.counts[std::min(b, bins - 1)]++;
  }
  return h;
}

NormalFit fit_normal(std::span<const double> values)
{
  if (values.empty())
  {
    throw std::invalid_argument("normal fit of an empty sample");
  }
  const double mu = mean_of(values);
  double ss = 0.0;
  for (double v : values)
  {
    ss += (v - mu) * (v - mu);
  }
  return {mu, std::sqrt(ss / values.size())};
}

BatchReport evaluate_batch(std::span<const RasterPair> pairs, std::size_t bins)
{
  if (pairs.empty())
  {
    throw std::invalid_argument("evaluate_batch needs at least one pair");
  }
  BatchReport report;
  std::vector<double> n_values, s_values;
  for (const auto &[pred, truth] : pairs)
  {
    const SampleMetrics m{nmse(pred, truth), ssim_global(pred, truth)};
    report.samples.push_back(m);
    n_values.push_back(m.nmse);
    s_values.push_back(m.ssim);
  }
  report.nmse = fit_normal(n_values);
  report.ssim = fit_normal(s_values);
  report.nmse_histogram = make_histogram(n_values, bins);
  report.ssim_histogram = make_histogram(s_values, bins);
  return report;
}

void write_metrics_csv(std::ostream &out, const BatchReport &report)
{
  const auto old = out.precision(17);
  out << "index,nmse,ssim\n";
  for (std::size_t i = 0; i < report.samples.size(); i++)
  {
    out << i << ',' << report.samples[i].nmse << ',' << report.samples[i].ssim << '\n';
  }
  out.precision(old);
}

void write_histogram_csv(std::ostream &out, const Histogram &hist)
{
  const auto old = out.precision(17);
  out << "bin_left,bin_right,count\n";
  const double w = hist.bin_width();
  for (std::size_t b = 0; b < hist.counts.size(); b++)
  {
    const double right = (b + 1 == hist.counts.size()) ? hist.hi : hist.lo + (b + 1) * w;
    out << hist.lo + b * w << ',' << right << ',' << hist.counts[b] << '\n';
  }
  out.precision(old);
}

}  // namespace isp
