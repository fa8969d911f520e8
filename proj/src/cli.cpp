// SPDX-License-Identifier: Apache-2.0

#include "isp/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "isp/datagen.hpp"
#include "isp/error.hpp"
#include "isp/forward.hpp"
#include "isp/inversion.hpp"
#include "isp/metrics.hpp"
#include "isp/storage.hpp"

namespace isp
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

// `--config file.json` holds a flat JSON object whose keys are option names. Its entries are
// spliced in ahead of the command-line flags, and TakeLast lets the flags win.
std::string config_scalar(const json &v)
{
  if (v.is_string())
  {
    return v.get<std::string>();
  }
  if (v.is_boolean())
  {
    return v.get<bool>() ? "true" : "false";
  }
  if (v.is_number_float())
  {
    std::ostringstream s;
    s.precision(17);
    s << v.get<double>();
    return s.str();
  }
  if (v.is_number())
  {
    return v.dump();
  }
  throw CLI::ConversionError("config values must be scalars or arrays of scalars");
}

std::vector<std::string> config_tokens(const fs::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw CLI::FileError::Missing(path.string());
  }
  json j;
  try
  {
    in >> j;
  }
  catch (const json::exception &e)
  {
    throw CLI::ConversionError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object())
  {
    throw CLI::ConversionError("config file must hold a JSON object");
  }
  std::vector<std::string> tokens;
  for (const auto &[key, value] : j.items())
  {
    if (key == "config")
    {
      throw CLI::ConversionError("config files cannot nest");
    }
    tokens.push_back("--" + key);
    if (value.is_array())
    {
      std::string joined;
      for (const auto &v : value)
      {
        joined += (joined.empty() ? "" : ",") + config_scalar(v);
      }
      tokens.push_back(joined);
    }
    else
    {
      tokens.push_back(config_scalar(value));
    }
  }
  return tokens;
}

// args[0] is the subcommand name.
std::vector<std::string> expand_config(std::vector<std::string> args)
{
  for (std::size_t i = 1; i < args.size(); i++)
  {
    std::string file;
    std::size_t used = 0;
    if (args[i] == "--config" && i + 1 < args.size())
    {
      file = args[i + 1];
      used = 2;
    }
    else if (args[i].starts_with("--config="))
    {
      file = args[i].substr(9);
      used = 1;
    }
    if (used == 0)
    {
      continue;
    }
    auto tokens = config_tokens(file);
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
               args.begin() + static_cast<std::ptrdiff_t>(i + used));
    args.insert(args.begin() + 1, tokens.begin(), tokens.end());
    return args;
  }
  return args;
}

std::string one_line(std::string s)
{
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

struct CommonPlanArgs
{
  int N = 3;
  double a = 1.0;
  double lambda = kDefaultLambda;
};

void add_plan_args(CLI::App *cmd, CommonPlanArgs &p, bool require_n)
{
  auto *n = cmd->add_option("--N", p.N, "Truncation frequency N >= 1");
  if (require_n)
  {
    n->required();
  }
  cmd->add_option("--a", p.a, "Edge length of the square domain")->capture_default_str();
  cmd->add_option("--lambda", p.lambda, "Zero-frequency offset lambda")->capture_default_str();
}

void with_config(CLI::App *cmd)
{
  // Consumed by expand_config before parsing; registered so that help lists it.
  cmd->add_option("--config", "JSON config file; command-line flags override it");
}

void write_json(const fs::path &path, const json &j) { write_text_file(path, j.dump(2) + "\n"); }

fs::path sidecar_path(const fs::path &p) { return fs::path(p.string() + ".json"); }

std::vector<fs::path> tensor_files(const fs::path &dir)
{
  if (!fs::is_directory(dir))
  {
    throw IoError("not a directory", dir.string());
  }
  std::vector<fs::path> files;
  for (const auto &e : fs::directory_iterator(dir))
  {
    if (e.is_regular_file() && e.path().extension() == ".tnsr")
    {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Multi-frequency far-field simulation and truncated-Fourier source "
               "reconstruction",
               "isp"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  // plan
  CommonPlanArgs plan_args;
  std::string plan_out;
  auto *plan_cmd = app.add_subcommand("plan", "Write the measurement plan as JSON");
  with_config(plan_cmd);
  add_plan_args(plan_cmd, plan_args, true);
  plan_cmd->add_option("--out", plan_out, "Output JSON path (stdout if omitted)");

  // simulate
  CommonPlanArgs sim_plan;
  std::string sim_source, sim_out;
  double sim_delta = 0.0;
  std::uint64_t sim_seed = 0;
  auto *sim_cmd = app.add_subcommand("simulate", "Synthesize far-field data from a source tensor");
  with_config(sim_cmd);
  add_plan_args(sim_cmd, sim_plan, true);
  sim_cmd->add_option("--source", sim_source, "Source raster TensorFile")->required();
  sim_cmd->add_option("--delta", sim_delta, "Noise level delta")->capture_default_str();
  sim_cmd->add_option("--seed", sim_seed, "Noise seed")->capture_default_str();
  sim_cmd->add_option("--out", sim_out, "Far-field TensorFile to write")->required();

  // invert
  std::string inv_farfield, inv_plan, inv_out;
  int inv_n = 64;
  auto *inv_cmd = app.add_subcommand("invert", "Reconstruct a source from far-field data");
  with_config(inv_cmd);
  inv_cmd->add_option("--farfield", inv_farfield, "Far-field TensorFile")->required();
  inv_cmd->add_option("--plan", inv_plan, "Plan JSON written by `plan`")->required();
  inv_cmd->add_option("--n", inv_n, "Output grid size")->capture_default_str();
  inv_cmd->add_option("--out", inv_out, "Reconstruction TensorFile to write")->required();

  // gen-disks / gen-rasters
  struct GenArgs
  {
    CommonPlanArgs plan;
    std::size_t count = 0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    double split = 0.8;
    std::string out_dir;
    int n = 64;
  };
  GenArgs gd, gr;
  gr.split = 0.9;
  gr.plan.N = 2;
  auto add_gen = [&](CLI::App *cmd, GenArgs &g) {
    with_config(cmd);
    add_plan_args(cmd, g.plan, false);
    cmd->get_option("--N")->capture_default_str();
    cmd->add_option("--count", g.count, "Number of samples")->required();
    cmd->add_option("--delta", g.delta, "Noise level delta")->capture_default_str();
    cmd->add_option("--seed", g.seed, "Master seed")->capture_default_str();
    cmd->add_option("--split", g.split, "Training fraction in [0, 1]")->capture_default_str();
    cmd->add_option("--out-dir", g.out_dir, "Dataset directory")->required();
  };
  auto *gd_cmd = app.add_subcommand("gen-disks", "Generate a random-disk dataset");
  add_gen(gd_cmd, gd);
  gd_cmd->add_option("--n", gd.n, "Grid size")->capture_default_str();
  auto *gr_cmd = app.add_subcommand("gen-rasters", "Generate a dataset from 28x28 images");
  add_gen(gr_cmd, gr);
  std::string idx_path, raw_dir;
  auto *idx_opt = gr_cmd->add_option("--idx-path", idx_path, "IDX image file (magic 0x00000803)");
  auto *raw_opt = gr_cmd->add_option("--raw-dir", raw_dir, "Directory of raw 784-byte rasters");
  idx_opt->excludes(raw_opt);

  // eval
  std::string ev_pred, ev_truth, ev_manifest, ev_csv, ev_hist;
  std::string ev_split = "test";
  std::size_t ev_bins = kDefaultHistogramBins;
  auto *ev_cmd = app.add_subcommand("eval", "Compute NMSE/SSIM statistics");
  with_config(ev_cmd);
  auto *pred_opt = ev_cmd->add_option("--pred-dir", ev_pred, "Directory of predicted tensors");
  auto *truth_opt = ev_cmd->add_option("--truth-dir", ev_truth, "Directory of ground-truth tensors");
  auto *man_opt = ev_cmd->add_option("--manifest", ev_manifest,
                                     "Dataset manifest (compares input against target)");
  ev_cmd->add_option("--split-select", ev_split, "Manifest split: train, test or all")
      ->check(CLI::IsMember({"train", "test", "all"}))
      ->capture_default_str();
  ev_cmd->add_option("--out-csv", ev_csv, "Per-sample CSV (index,nmse,ssim)")->required();
  ev_cmd->add_option("--hist-prefix", ev_hist,
                     "Write <prefix>_nmse_hist.csv and <prefix>_ssim_hist.csv");
  ev_cmd->add_option("--bins", ev_bins, "Histogram bins")->capture_default_str();
  pred_opt->needs(truth_opt);
  truth_opt->needs(pred_opt);
  man_opt->excludes(pred_opt);

  // export-figure
  std::string fig_tensor, fig_pgm;
  std::vector<double> fig_range;
  auto *fig_cmd = app.add_subcommand("export-figure", "Export a raster tensor as binary PGM");
  with_config(fig_cmd);
  fig_cmd->add_option("--tensor", fig_tensor, "Raster TensorFile")->required();
  fig_cmd->add_option("--pgm", fig_pgm, "PGM path to write")->required();
  fig_cmd->add_option("--range", fig_range, "lo,hi (default: raster min,max)")
      ->delimiter(',')
      ->expected(2);

  try
  {
    std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    if (!rest.empty())
    {
      rest = expand_config(std::move(rest));
    }
    std::reverse(rest.begin(), rest.end());
    app.parse(rest);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e, out, err);
  }
  catch (const CLI::CallForAllHelp &e)
  {
    return app.exit(e, out, err);
  }
  catch (const CLI::ParseError &e)
  {
    err << "isp: error: kind=usage message=" << one_line(e.what()) << "\n";
    return kExitUsage;
  }

  try
  {
    if (plan_cmd->parsed())
    {
      const auto plan = build_measurement_plan(plan_args.N, plan_args.a, plan_args.lambda);
      const auto text = plan_to_json(plan);
      if (plan_out.empty())
      {
        out << text;
      }
      else
      {
        write_text_file(plan_out, text);
      }
    }
    else if (sim_cmd->parsed())
    {
      const auto plan = build_measurement_plan(sim_plan.N, sim_plan.a, sim_plan.lambda);
      const auto source = source_from_tensor(read_tensor(sim_source), sim_plan.a);
      auto data = synthesize(source, plan);
      if (sim_delta != 0.0)
      {
        data = add_noise(data, sim_delta, sim_seed);
      }
      write_tensor(sim_out, to_tensor(data));
      write_json(sidecar_path(sim_out), {{"N", plan.truncation()},
                                         {"a", plan.edge()},
                                         {"lambda", plan.lambda()},
                                         {"delta", sim_delta},
                                         {"seed", sim_seed},
                                         {"count", plan.size()},
                                         {"ordering", "lexicographic (l1, l2)"},
                                         {"source", sim_source}});
    }
    else if (inv_cmd->parsed())
    {
      const auto plan = plan_from_json(read_text_file(inv_plan));
      const auto values = complex_values(read_tensor(inv_farfield));
      if (values.size() != plan.size())
      {
        throw Error("far-field tensor has " + std::to_string(values.size()) +
                    " entries, plan expects " + std::to_string(plan.size()));
      }
      const FarFieldSet data(plan, values);
      const auto recon = evaluate_series(recover_coefficients(data, plan), GridSpec(plan.edge(), inv_n));
      write_tensor(inv_out, to_tensor(recon));
      write_json(sidecar_path(inv_out), {{"N", plan.truncation()},
                                         {"a", plan.edge()},
                                         {"lambda", plan.lambda()},
                                         {"n", inv_n},
                                         {"max_imag_residual", recon.max_imag_residual()}});
    }
    else if (gd_cmd->parsed() || gr_cmd->parsed())
    {
      const bool disks = gd_cmd->parsed();
      const GenArgs &g = disks ? gd : gr;
      DatasetRequest req;
      req.kind = disks ? SourceKind::Disks : SourceKind::Rasters;
      req.count = g.count;
      req.N = g.plan.N;
      req.delta = g.delta;
      req.master_seed = g.seed;
      req.train_fraction = g.split;
      req.lambda = g.plan.lambda;
      if (disks)
      {
        req.disks.a = g.plan.a;
        req.disks.n = g.n;
        req.source_provenance = "random disks: count [1, 3], radius [0.1, 0.2], amplitude [-1, 1]";
      }
      else
      {
        if (g.plan.a != 1.0)
        {
          throw std::invalid_argument("gen-rasters uses the unit domain (a = 1)");
        }
        if (!idx_path.empty())
        {
          req.images = ingest_idx_images(idx_path, g.count);
          req.source_provenance = "idx:" + idx_path;
        }
        else if (!raw_dir.empty())
        {
          req.images = ingest_raw_rasters(raw_dir, g.count);
          req.source_provenance = "raw-dir:" + raw_dir;
        }
        else
        {
          throw std::invalid_argument("gen-rasters needs --idx-path or --raw-dir");
        }
      }
      const auto m = build_dataset(req, g.out_dir);
      out << json{{"manifest", (fs::path(g.out_dir) / "manifest.json").string()},
                  {"count", m.count},
                  {"train", m.split_train},
                  {"test", m.split_test}}
                 .dump()
          << "\n";
    }
    else if (ev_cmd->parsed())
    {
      std::vector<std::pair<std::vector<double>, std::vector<double>>> loaded;
      if (!ev_manifest.empty())
      {
        const fs::path root = fs::path(ev_manifest).parent_path();
        const auto m = read_manifest(ev_manifest);
        for (std::size_t i = 0; i < m.files.size(); i++)
        {
          const bool is_train = i < m.split_train;
          if ((ev_split == "train" && !is_train) || (ev_split == "test" && is_train))
          {
            continue;
          }
          loaded.emplace_back(raster_values(read_tensor(root / m.files[i].input)),
                              raster_values(read_tensor(root / m.files[i].target)));
        }
      }
      else if (!ev_pred.empty())
      {
        for (const auto &truth_file : tensor_files(ev_truth))
        {
          const fs::path pred_file = fs::path(ev_pred) / truth_file.filename();
          if (!fs::exists(pred_file))
          {
            throw IoError("missing prediction for ground truth", pred_file.string());
          }
          loaded.emplace_back(raster_values(read_tensor(pred_file)),
                              raster_values(read_tensor(truth_file)));
        }
      }
      else
      {
        throw std::invalid_argument("eval needs --manifest or --pred-dir with --truth-dir");
      }
      if (loaded.empty())
      {
        throw Error("no samples to evaluate");
      }
      std::vector<RasterPair> pairs;
      for (const auto &[p, t] : loaded)
      {
        pairs.emplace_back(p, t);
      }
      const auto report = evaluate_batch(pairs, ev_bins);
      {
        std::ostringstream csv;
        write_metrics_csv(csv, report);
        write_text_file(ev_csv, csv.str());
      }
      if (!ev_hist.empty())
      {
        std::ostringstream hn, hs;
        write_histogram_csv(hn, report.nmse_histogram);
        write_histogram_csv(hs, report.ssim_histogram);
        write_text_file(ev_hist + "_nmse_hist.csv", hn.str());
        write_text_file(ev_hist + "_ssim_hist.csv", hs.str());
      }
      out << json{{"count", report.samples.size()},
                  {"nmse", {{"mean", report.nmse.mean}, {"std", report.nmse.stddev}}},
                  {"ssim", {{"mean", report.ssim.mean}, {"std", report.ssim.stddev}}}}
                 .dump()
          << "\n";
    }
    else if (fig_cmd->parsed())
    {
      const auto t = read_tensor(fig_tensor);
      const int side = raster_side(t);
      const auto values = raster_values(t);
      double lo, hi;
      if (fig_range.empty())
      {
        const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        lo = *mn;
        hi = *mx;
      }
      else
      {
        lo = fig_range[0];
        hi = fig_range[1];
      }
      export_pgm(values, side, fig_pgm, lo, hi);
    }
  }
  catch (const std::invalid_argument &e)
  {
    err << "isp: error: kind=usage message=" << one_line(e.what()) << "\n";
    return kExitUsage;
  }
  catch (const std::out_of_range &e)
  {
    err << "isp: error: kind=usage message=" << one_line(e.what()) << "\n";
    return kExitUsage;
  }
  catch (const std::exception &e)
  {
    err << "isp: error: kind=data message=" << one_line(e.what()) << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace isp
