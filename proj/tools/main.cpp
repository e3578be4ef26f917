// Copyright bellbeam contributors
// SPDX-License-Identifier: Apache-2.0
//
// bellbeam CLI: simulate (trial engine + histograms + CHSH estimate),
// sweep (test statistic over Werner p), pes (spin-orbit adiabats) and
// fit-dcs (Gaussian peak fitting of digitized DCS curves).
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bellbeam/errors.hpp"
#include "bellbeam/estimator.hpp"
#include "bellbeam/experiment.hpp"
#include "bellbeam/rng.hpp"
#include "bellbeam/serialize.hpp"
#include "bellbeam/version.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInsufficientData = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  int threads = 0;
  bool trial_log = false;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw bellbeam::ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("BELLBEAM_SEED");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (!end || *end != '\0')
    throw bellbeam::ConfigError(
        "BELLBEAM_SEED is set but is not an unsigned integer");
  return static_cast<std::uint64_t>(value);
}

/// Flag > config file > BELLBEAM_SEED > built-in default.
bellbeam::RunConfig load_config(const CommonOptions& opts) {
  bellbeam::RunConfig config;
  if (!opts.config_path.empty())
    config = bellbeam::config_from_json(read_file(opts.config_path));

  if (opts.seed) {
    config.experiment.seed = *opts.seed;
    config.seed_explicit = true;
  } else if (!config.seed_explicit) {
    if (const auto from_env = env_seed()) {
      config.experiment.seed = *from_env;
      config.seed_explicit = true;
    }
  }
  if (opts.trials) {
    if (*opts.trials < 1)
      throw bellbeam::ConfigError("trials must be a positive integer");
    config.experiment.trials = *opts.trials;
  }
  config.experiment.threads = opts.threads;
  if (opts.trial_log) config.trial_log = true;
  return config;
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    char* end = nullptr;
    const std::string trimmed = item.substr(first, last - first + 1);
    const double v = std::strtod(trimmed.c_str(), &end);
    if (!end || *end != '\0' || !(v >= 0.0 && v <= 1.0))
      throw bellbeam::ConfigError("p-list entry '" + trimmed +
                                  "' is not a number in [0, 1]");
    values.push_back(v);
  }
  if (values.empty())
    throw bellbeam::ConfigError("p-list is empty");
  return values;
}

int run_simulate(const CommonOptions& opts) {
  const bellbeam::RunConfig config = load_config(opts);
  fs::create_directories(opts.out_dir);
  const fs::path out_dir(opts.out_dir);

  bellbeam::cli::RunManifest manifest;
  manifest.command = "simulate";
  manifest.tool_version = bellbeam::kVersion;
  manifest.created_utc = bellbeam::cli::now_utc_iso8601();
  manifest.resolved_config_json = bellbeam::to_json_string(config, -1);

  const bellbeam::TrialResult result =
      bellbeam::run_trials(config.experiment);
  const std::vector<bellbeam::HistogramRow> rows =
      bellbeam::histogram_export(result.counts);

  for (const bellbeam::SettingPair pair : bellbeam::kAllSettingPairs) {
    const fs::path file =
        out_dir / ("hist_" + std::string(bellbeam::to_string(pair)) + ".csv");
    std::ofstream out(file, std::ios::binary);
    bellbeam::write_histogram_csv(out, rows, pair);
    out.close();
    bellbeam::cli::add_output(manifest, out_dir, file);
  }

  if (config.trial_log) {
    const fs::path file = out_dir / "trials.csv";
    std::ofstream out(file, std::ios::binary);
    bellbeam::write_trial_log_csv(out, result.records);
    out.close();
    bellbeam::cli::add_output(manifest, out_dir, file);
  }

  int exit_code = kExitOk;
  try {
    const bellbeam::VKernel kernel1(config.experiment.channel1);
    const bellbeam::VKernel kernel2(config.experiment.channel2);
    bellbeam::EstimatorOptions est = config.estimator;
    est.bootstrap_seed = bellbeam::substream_seed(
        config.experiment.seed, bellbeam::kBootstrapStream);
    const bellbeam::ChshEstimate estimate =
        bellbeam::estimate_chsh(result.records, kernel1, kernel2, est);

    const fs::path file = out_dir / "estimate.json";
    write_file(file, bellbeam::estimate_to_json(estimate) + "\n");
    bellbeam::cli::add_output(manifest, out_dir, file);
  } catch (const bellbeam::InsufficientDataError& e) {
    std::cerr << "bellbeam: estimate skipped: " << e.what() << "\n";
    exit_code = kExitInsufficientData;
  }

  bellbeam::cli::write_manifest(manifest, out_dir);
  return exit_code;
}

int run_sweep(const CommonOptions& opts, std::string p_list_text) {
  // A manifest written by a previous sweep carries its p list; honor it
  // when the flag is not given so a manifest alone reproduces the run.
  if (p_list_text.empty() && !opts.config_path.empty()) {
    const json doc = json::parse(read_file(opts.config_path), nullptr, false);
    if (doc.is_object() && doc.value("schema", "") == "bellbeam/manifest-v1" &&
        doc.contains("p_list")) {
      std::string joined;
      for (const auto& v : doc.at("p_list"))
        joined += (joined.empty() ? "" : ",") + bellbeam::fmt17(v.get<double>());
      p_list_text = joined;
    }
  }
  if (p_list_text.empty())
    throw bellbeam::ConfigError("sweep needs --p-list");
  const std::vector<double> grid = parse_p_list(p_list_text);

  const bellbeam::RunConfig config = load_config(opts);
  fs::create_directories(opts.out_dir);
  const fs::path out_dir(opts.out_dir);

  const std::vector<bellbeam::SweepPoint> points =
      bellbeam::sweep_p(grid, config.experiment, config.estimator);

  bellbeam::cli::RunManifest manifest;
  manifest.command = "sweep";
  manifest.tool_version = bellbeam::kVersion;
  manifest.created_utc = bellbeam::cli::now_utc_iso8601();
  manifest.resolved_config_json = bellbeam::to_json_string(config, -1);

  {
    const fs::path file = out_dir / "sweep.csv";
    std::ofstream out(file, std::ios::binary);
    bellbeam::write_sweep_csv(out, points);
    out.close();
    bellbeam::cli::add_output(manifest, out_dir, file);
  }
  {
    json point_docs = json::array();
    for (const bellbeam::SweepPoint& pt : points) {
      json doc = json::parse(bellbeam::estimate_to_json(pt.estimate, -1));
      doc["p"] = pt.p;
      doc["S_theory"] = pt.s_theory;
      point_docs.push_back(std::move(doc));
    }
    const json doc{{"schema", "bellbeam/sweep-v1"}, {"points", point_docs}};
    const fs::path file = out_dir / "sweep.json";
    write_file(file, doc.dump(2) + "\n");
    bellbeam::cli::add_output(manifest, out_dir, file);
  }

  // write_manifest has no p_list slot; append it so sweeps are replayable.
  bellbeam::cli::write_manifest(manifest, out_dir);
  {
    const fs::path file = out_dir / "manifest.json";
    json doc = json::parse(read_file(file));
    doc["p_list"] = grid;
    write_file(file, doc.dump(2) + "\n");
  }
  return kExitOk;
}

int run_pes(const std::string& in_path, const std::string& out_path) {
  const bool json_mode = fs::path(in_path).extension() == ".json";
  if (json_mode) {
    const bellbeam::PesRow row =
        bellbeam::pes_row_from_json(read_file(in_path));
    const std::string result = bellbeam::pes_result_to_json(row) + "\n";
    if (out_path.empty() || out_path == "-")
      std::cout << result;
    else
      write_file(out_path, result);
    return kExitOk;
  }

  std::ifstream in(in_path);
  if (!in)
    throw bellbeam::ConfigError("cannot read pes input " + in_path);
  const std::vector<bellbeam::PesRow> rows = bellbeam::read_pes_csv(in);
  std::ostringstream out;
  bellbeam::write_pes_csv(out, rows);
  if (out_path.empty() || out_path == "-")
    std::cout << out.str();
  else
    write_file(out_path, out.str());
  return kExitOk;
}

int run_fit_dcs(const std::string& in_path, int peaks,
                const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in)
    throw bellbeam::ConfigError("cannot read fit input " + in_path);
  std::vector<double> theta, intensity;
  bellbeam::read_xy_csv(in, theta, intensity);

  const bellbeam::FitResult fit =
      bellbeam::fit_gaussian_peaks(theta, intensity, peaks);

  json doc = json::parse(bellbeam::to_json_string(fit.density, -1));
  doc["fit"] = {{"residual_rms", fit.residual_rms},
                {"iterations", fit.iterations}};
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    write_file(out_path, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crossed-beam Bell-test simulator and statistics toolkit"};
  app.set_version_flag("--version", bellbeam::kVersion);
  app.require_subcommand(1);

  CommonOptions opts;
  std::string p_list_text;
  std::string in_path, out_path;
  int peaks = 1;

  auto add_common = [&](CLI::App* cmd, bool with_trial_log) {
    cmd->add_option("--config", opts.config_path,
                    "JSON config (bellbeam/config-v1 or a manifest)");
    cmd->add_option("--out", opts.out_dir, "output directory")
        ->default_str(".");
    cmd->add_option("--seed", opts.seed,
                    "master seed (overrides config and BELLBEAM_SEED)");
    cmd->add_option("--trials", opts.trials, "trial count override");
    cmd->add_option("--threads", opts.threads,
                    "worker cap (0 = hardware concurrency)");
    if (with_trial_log)
      cmd->add_flag("--trial-log", opts.trial_log,
                    "also write the raw per-pair outcome log");
  };

  CLI::App* simulate =
      app.add_subcommand("simulate",
                         "run the trial engine; write histograms, the CHSH "
                         "estimate and a manifest");
  add_common(simulate, true);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run the experiment over a grid of Werner p values");
  add_common(sweep, false);
  sweep->add_option("--p-list", p_list_text,
                    "comma-separated p values in [0, 1]");

  CLI::App* pes = app.add_subcommand(
      "pes", "spin-orbit adiabats from Cartesian potential inputs");
  pes->add_option("--in", in_path, "input CSV (or single-point JSON)")
      ->required();
  pes->add_option("--out", out_path, "output file ('-' for stdout)");

  CLI::App* fit = app.add_subcommand(
      "fit-dcs", "fit Gaussian peaks to a digitized (theta, intensity) curve");
  fit->add_option("--in", in_path, "two-column CSV input")->required();
  fit->add_option("--peaks", peaks, "number of Gaussian peaks")->required();
  fit->add_option("--out", out_path, "output JSON ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate->parsed()) return run_simulate(opts);
    if (sweep->parsed()) return run_sweep(opts, p_list_text);
    if (pes->parsed()) return run_pes(in_path, out_path);
    if (fit->parsed()) return run_fit_dcs(in_path, peaks, out_path);
  } catch (const bellbeam::InsufficientDataError& e) {
    std::cerr << "bellbeam: " << e.what() << "\n";
    return kExitInsufficientData;
  } catch (const bellbeam::ConfigError& e) {
    std::cerr << "bellbeam: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bellbeam::IndistinguishabilityError& e) {
    std::cerr << "bellbeam: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "bellbeam: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "bellbeam: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
