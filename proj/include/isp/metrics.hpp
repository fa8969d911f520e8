// SPDX-License-Identifier: Apache-2.0

#ifndef ISP_METRICS_HPP
#define ISP_METRICS_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace isp
{

// ||pred - truth||^2 / ||truth||^2. Throws isp::Error when truth is identically zero.
double nmse(std::span<const double> pred, std::span<const double> truth);

inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;
inline constexpr double kSsimDynamicRange = 1.0;

//
// Single-window SSIM over the whole image with population moments:
//   (2 mu_x mu_y + C1)(2 s_xy + C2) / ((mu_x^2 + mu_y^2 + C1)(s_x^2 + s_y^2 + C2)),
// C1 = (K1 L)^2, C2 = (K2 L)^2.
//
double ssim_global(std::span<const double> x, std::span<const double> y);

struct Histogram
{
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;

  double bin_width() const { return counts.empty() ? 0.0 : (hi - lo) / counts.size(); }
};

// Equal-width bins over [min, max] of the data; the last bin is closed. A degenerate
// range is widened to [v - 0.5, v + 0.5].
Histogram make_histogram(std::span<const double> values, std::size_t bins);

// Moment-matched normal density parameters (population standard deviation).
struct NormalFit
{
  double mean = 0.0;
  double stddev = 0.0;
};

NormalFit fit_normal(std::span<const double> values);

struct SampleMetrics
{
  double nmse = 0.0;
  double ssim = 0.0;
};

struct BatchReport
{
  std::vector<SampleMetrics> samples;
  NormalFit nmse;
  NormalFit ssim;
  Histogram nmse_histogram;
  Histogram ssim_histogram;
};

inline constexpr std::size_t kDefaultHistogramBins = 30;

using RasterPair = std::pair<std::span<const double>, std::span<const double>>;  // (pred, truth)

BatchReport evaluate_batch(std::span<const RasterPair> pairs,
                           std::size_t bins = kDefaultHistogramBins);

// CSV with header "index,nmse,ssim".
void write_metrics_csv(std::ostream &out, const BatchReport &report);
// CSV with header "bin_left,bin_right,count".
void write_histogram_csv(std::ostream &out, const Histogram &hist);

}  // namespace isp

#endif  // ISP_METRICS_HPP
