// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite for the reconstruction toolkit. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <algorithm>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "isp/datagen.hpp"
#include "isp/forward.hpp"
#include "isp/inversion.hpp"
#include "isp/metrics.hpp"
#include "isp/parallel.hpp"
#include "isp/rng.hpp"
#include "isp/storage.hpp"

using namespace isp;

namespace
{

struct Outcome
{
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Random coefficients with c_{-l} = conj(c_l), so the series below is real.
CoefficientSet random_hermitian(int N, std::uint64_t seed)
{
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CoefficientSet c = CoefficientSet::zeros(N);
  for (const auto &e : build_measurement_plan(N).entries())
  {
    const MultiIndex l = e.index;
    if (l.is_zero())
    {
      c.set(l, Complex(u(gen), 0.0));
    }
    else if (l > -l)
    {
      const Complex v(u(gen), u(gen));
      c.set(l, v);
      c.set(-l, std::conj(v));
    }
  }
  return c;
}

double trig_poly(const CoefficientSet &c, double a, Vec2 x)
{
  Complex s = 0.0;
  const int N = c.truncation();
  for (int l1 = -N; l1 <= N; l1++)
  {
    for (int l2 = -N; l2 <= N; l2++)
    {
      s += c.at({l1, l2}) * std::polar(1.0, 2 * kPi * (l1 * x.x1 + l2 * x.x2) / a);
    }
  }
  return s.real();
}

// P1: 256^2 midpoint quadrature against the closed-form disk far field.
Outcome disk_oracle()
{
  const auto t0 = Clock::now();
  const auto plan = build_measurement_plan(3);
  const GridSpec grid(1.0, 256);
  Rng rng(derive_seed(0x50315eed, {}));
  double worst_l2 = 0.0, worst_entry = 0.0, tiny = 1e300;
  for (int d = 0; d < 20; d++)
  {
    DiskSpec disk;
    do
    {
      disk.radius = rng.uniform(0.1, 0.2);
      disk.center = {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    } while (!disk.contained_in(1.0));
    disk.amplitude = rng.uniform(-1.0, 1.0);
    const auto raster = rasterize_disks(grid, {disk});
    double num = 0.0, den = 0.0;
    for (const auto &e : plan.entries())
    {
      const Complex q = far_field(raster, e.wavenumber, e.direction);
      const Complex x = analytic_disk_far_field(disk, e.wavenumber, e.direction);
      num += std::norm(q - x);
      den += std::norm(x);
      worst_entry = std::max(worst_entry, std::abs(q - x) / std::abs(x));
      tiny = std::min(tiny, std::abs(x) / std::abs(disk.amplitude));
    }
    worst_l2 = std::max(worst_l2, std::sqrt(num / den));
  }
  const double t = seconds_since(t0);
  return {worst_l2 <= 0.01 && t < 10.0,
          fmt("worst per-disk relative l2 error %.3g%% (worst single entry %.3g%%, smallest "
              "|u|/amplitude %.3g), %.2f s",
              100 * worst_l2, 100 * worst_entry, tiny, t)};
}


// P2: band-limited sources are recovered up to quadrature error.
Outcome band_limited_round_trip()
{
  const auto t0 = Clock::now();
  const auto plan = build_measurement_plan(3);
  const GridSpec fine(1.0, 256);
  std::vector<double> coef_err(50), series_err(50);
  parallel_for(50, [&](std::size_t trial) {
    const auto truth = random_hermitian(3, 0x5032 + trial);
    const auto s = SourceRaster::sample(fine, [&](Vec2 x) { return trig_poly(truth, 1.0, x); });
    const auto c = recover_coefficients(synthesize(s, plan), plan);
    double ce = 0.0;
    for (const auto &e : plan.entries())
    {
      ce = std::max(ce, std::abs(c.at(e.index) - truth.at(e.index)));
    }
    const auto r = evaluate_series(c, fine);
    double se = 0.0;
    for (int i = 0; i < fine.size(); i++)
    {
      for (int j = 0; j < fine.size(); j++)
      {
        se = std::max(se, std::abs(r(i, j) - s(i, j)));
      }
    }
    coef_err[trial] = ce;
    series_err[trial] = se;
  });
  const double ce = *std::max_element(coef_err.begin(), coef_err.end());
  const double se = *std::max_element(series_err.begin(), series_err.end());
  const double t = seconds_since(t0);
  return {ce <= 1e-3 && se < 2e-3 && t < 30.0,
          fmt("max coefficient error %.3g, max series error %.3g, %.2f s", ce, se, t)};
}

// P3: the constant source exercises the zero-frequency correction.
Outcome constant_source()
{
  const auto plan = build_measurement_plan(3);
  const auto s = SourceRaster::sample(GridSpec(1.0, 256), [](Vec2) { return 1.0; });
  const Complex s0 = recover_coefficients(synthesize(s, plan), plan).at({0, 0});
  return {s0.real() >= 0.999 && s0.real() <= 1.001,
          fmt("s_0 = %.9f %+.3gi", s0.real(), s0.imag())};
}

// P4: Fourier-only reconstruction error on fresh disk scenes at N = 10.
Outcome disk_nmse_table()
{
  const auto t0 = Clock::now();
  const std::vector<std::pair<double, double>> rows = {{0.05, 0.0924}, {0.5, 0.1280}, {1.0, 0.2358}};
  const std::size_t count = 400;
  const std::uint64_t master = 0x503420;
  std::vector<SourceRaster> scenes;
  for (std::size_t i = 0; i < count; i++)
  {
    scenes.push_back(sample_disk_scene({}, sample_seed(master, i)).raster);
  }
  bool pass = true;
  std::ostringstream detail;
  for (const auto &[delta, reference] : rows)
  {
    std::vector<double> err(count);
    parallel_for(count, [&](std::size_t i) {
      const auto pair = build_pair(scenes[i], 10, delta, sample_seed(master, i));
      err[i] = nmse(pair.input.values(), pair.target.values());
    });
    const double mean = fit_normal(err).mean;
    pass = pass && std::abs(mean - reference) <= 0.04;
    detail << fmt("delta=%g: %.2f%% (reference %.2f%%); ", delta, 100 * mean, 100 * reference);
  }
  const double t = seconds_since(t0);
  detail << fmt("%.2f s", t);
  return {pass && t < 300.0, detail.str()};
}

// P5: bounded multiplicative noise with mean magnitude delta / 2.
Outcome noise_model()
{
  const auto plan = build_measurement_plan(158);  // 317^2 = 100489 draws
  std::vector<Complex> values(plan.size());
  std::mt19937_64 gen(0x5035);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (auto &v : values)
  {
    v = Complex(u(gen), u(gen));
  }
  const FarFieldSet clean(plan, values);
  bool pass = true;
  std::ostringstream detail;
  detail << plan.size() << " draws; ";
  for (double delta : {0.05, 0.5, 1.0})
  {
    const auto noisy = add_noise(clean, delta, 0x5035 + static_cast<std::uint64_t>(delta * 100));
    double sum = 0.0;
    std::size_t violations = 0;
    for (std::size_t p = 0; p < values.size(); p++)
    {
      const double rel = std::abs(noisy.values()[p] - values[p]) / std::abs(values[p]);
      violations += rel > delta * (1 + 1e-12) ? 1 : 0;
      sum += rel;
    }
    const double mean = sum / static_cast<double>(values.size());
    pass = pass && violations == 0 && std::abs(mean - delta / 2) <= 0.02 * delta / 2;
    detail << fmt("delta=%g: mean %.5g (target %.5g), %zu bound violations%s", delta, mean,
                  delta / 2, violations, delta < 1.0 ? "; " : "");
  }
  return {pass, detail.str()};
}

// P6: noise-free coefficients of real rasters are Hermitian.
Outcome hermitian_symmetry()
{
  const auto plan = build_measurement_plan(5);
  const GridSpec g(1.0, 64);
  std::mt19937_64 gen(0x5036);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; trial++)
  {
    std::vector<double> v(g.pixel_count());
    for (auto &x : v)
    {
      x = u(gen);
    }
    const auto c = recover_coefficients(synthesize(SourceRaster(g, v), plan), plan);
    for (const auto &e : plan.entries())
    {
      if (!e.index.is_zero())
      {
        worst = std::max(worst, std::abs(c.at(-e.index) - std::conj(c.at(e.index))));
      }
    }
  }
  return {worst <= 1e-12, fmt("max |s_-l - conj(s_l)| = %.3g over 20 rasters", worst)};
}

// P7: format round trips.
Outcome formats()
{
  std::mt19937_64 gen(0x5037);
  std::uniform_int_distribution<std::uint32_t> bits;
  std::uniform_int_distribution<int> small(1, 9);
  int tensor_fail = 0;
  for (int trial = 0; trial < 1000; trial++)
  {
    Tensor t;
    t.dtype = trial % 2 ? DType::Complex64 : DType::Real32;
    const int rank = 1 + trial % 3;
    for (int r = 0; r < rank; r++)
    {
      t.dims.push_back(static_cast<std::uint32_t>(small(gen)));
    }
    t.data.resize(t.element_count() * t.scalars_per_element());
    for (auto &f : t.data)
    {
      // Arbitrary bit patterns, including NaN payloads and denormals.
      const std::uint32_t b = bits(gen);
      std::memcpy(&f, &b, sizeof f);
    }
    const auto bytes = encode_tensor(t);
    const auto back = decode_tensor(bytes);
    tensor_fail += (back.bit_equal(t) && encode_tensor(back) == bytes) ? 0 : 1;
  }

  int manifest_fail = 0;
  for (int trial = 0; trial < 50; trial++)
  {
    DatasetManifest m;
    m.kind = trial % 2 ? "disks" : "rasters";
    m.N = small(gen);
    m.delta = std::ldexp(static_cast<double>(bits(gen)), -32);
    m.master_seed = (static_cast<std::uint64_t>(bits(gen)) << 32) | bits(gen);
    m.count = static_cast<std::size_t>(small(gen));
    m.split_train = m.count / 2;
    m.split_test = m.count - m.split_train;
    m.source_provenance = "fuzz \"quoted\" \\ " + std::to_string(trial);
    for (std::size_t i = 0; i < m.count; i++)
    {
      const std::string split = i < m.split_train ? "train" : "test";
      const std::string id = fmt("%06zu", i);
      m.files.push_back({split + "/input/" + id + ".tnsr", split + "/target/" + id + ".tnsr",
                         sample_seed(m.master_seed, i)});
    }
    const auto text = manifest_to_json(m);
    const auto back = manifest_from_json(text);
    manifest_fail += (back == m && manifest_to_json(back) == text) ? 0 : 1;
  }

  int pgm_fail = 0;
  for (int trial = 0; trial < 50; trial++)
  {
    GrayImage img;
    img.width = small(gen) * 7;
    img.height = small(gen) * 5;
    for (int p = 0; p < img.width * img.height; p++)
    {
      img.pixels.push_back(static_cast<std::uint8_t>(bits(gen)));
    }
    const auto bytes = encode_pgm(img);
    pgm_fail += (decode_pgm(bytes) == img && encode_pgm(decode_pgm(bytes)) == bytes) ? 0 : 1;
  }

  bool plans_ok = true;
  std::ostringstream sizes;
  for (int N : {2, 3, 10})
  {
    const auto plan = build_measurement_plan(N);
    const auto back = plan_from_json(plan_to_json(plan));
    const std::size_t want = static_cast<std::size_t>((2 * N + 1) * (2 * N + 1));
    plans_ok = plans_ok && plan.size() == want && back.size() == want;
    sizes << "N=" << N << ":" << plan.size() << " ";
  }
  return {tensor_fail == 0 && manifest_fail == 0 && pgm_fail == 0 && plans_ok,
          fmt("tensor mismatches %d/1000, manifest %d/50, pgm %d/50, plan sizes ", tensor_fail,
              manifest_fail, pgm_fail) +
              sizes.str()};
}

// P8: metric identities and the anti-correlated SSIM example.
Outcome metrics()
{
  std::mt19937_64 gen(0x5038);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> t(64 * 64);
  for (auto &x : t)
  {
    x = u(gen);
  }
  const std::vector<double> zero(t.size(), 0.0);
  double worst = std::abs(nmse(t, t)) + std::abs(nmse(zero, t) - 1.0);
  for (double c : {0.0, 0.5, 1.5, -2.0, 3.25})
  {
    std::vector<double> p(t);
    for (auto &x : p)
    {
      x *= c;
    }
    worst = std::max(worst, std::abs(nmse(p, t) - (c - 1) * (c - 1)));
  }
  const double self = ssim_global(t, t);
  // Independent evaluation: mean 1/2, variance 1/4, covariance -1/4, L = 1, K1 = .01, K2 = .03.
  const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  const double formula =
      (2 * 0.25 + c1) * (2 * -0.25 + c2) / ((0.25 + 0.25 + c1) * (0.25 + 0.25 + c2));
  const double anti = ssim_global(std::vector<double>{1, 0, 0, 1}, std::vector<double>{0, 1, 1, 0});
  return {worst <= 1e-12 && std::abs(self - 1.0) <= 1e-12 && std::abs(anti - formula) <= 1e-3 &&
              std::abs(anti + 0.9964) <= 1e-3,
          fmt("nmse identity error %.3g, ssim(X,X) = %.15g, anti-correlated %.6f (formula %.6f)",
              worst, self, anti, formula)};
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"P1 disk oracle quadrature", disk_oracle},
      {"P2 band-limited round trip", band_limited_round_trip},
      {"P3 constant source", constant_source},
      {"P4 disk NMSE at N=10", disk_nmse_table},
      {"P5 noise model", noise_model},
      {"P6 coefficient symmetry", hermitian_symmetry},
      {"P7 format round trips", formats},
      {"P8 metrics", metrics},
  };
  int failures = 0;
  for (const auto &[name, run] : criteria)
  {
    Outcome o;
    try
    {
      o = run();
    }
    catch (const std::exception &e)
    {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : fmt("%d criteria failed", failures))
            << std::endl;
  return failures == 0 ? 0 : 1;
}
