#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "lis/errors.hpp"
#include "lis/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string config;
  std::string out;
  std::string precision;
  std::optional<double> threshold;
  std::string dump_dir;
  bool quiet = false;
  bool deterministic = false;
};

int run(lis::Experiment experiment, const Options& opts) {
  auto cfg = opts.config.empty() ? lis::ExperimentConfig::defaults() : lis::load_config(opts.config);
  if (!opts.precision.empty()) {
    try {
      cfg.precision = lis::Precision::parse(opts.precision);
    } catch (const lis::InvalidArgument& e) {
      throw lis::ConfigError(e.what());
    }
  }
  if (opts.threshold) cfg.svd_threshold = *opts.threshold;
  if (!opts.out.empty()) cfg.output = opts.out;
  cfg.validate();

  lis::RunOptions run_options;
  run_options.dump_dir = opts.dump_dir;
  const auto start = std::chrono::steady_clock::now();
  const auto result = lis::run_experiment(experiment, cfg, run_options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (cfg.output.empty()) {
    lis::write_csv(std::cout, result, !opts.deterministic);
  } else {
    std::ofstream file(cfg.output);
    if (!file) throw lis::ConfigError("cannot write " + cfg.output);
    lis::write_csv(file, result, !opts.deterministic);
  }
  if (!opts.quiet) {
    std::fprintf(stderr, "%s: %zu rows, precision %s, %.1f s\n", std::string(lis::to_string(experiment)).c_str(),
                 result.rows.size(), cfg.precision.to_string().c_str(), seconds);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutual-coupling aware precoding studies for large intelligent surfaces"};
  app.require_subcommand(1);

  Options opts;
  std::optional<lis::Experiment> chosen;
  const std::pair<const char*, lis::Experiment> commands[] = {
      {"conditioning", lis::Experiment::Conditioning},
      {"profile", lis::Experiment::Profile},
      {"truncation", lis::Experiment::Truncation},
      {"spacing", lis::Experiment::Spacing},
  };
  const char* help[] = {
      "Condition number of Z versus spacing for the linear array",
      "Eigenvalue profile of Z for the linear array",
      "CA-pMF directivity and excitation power versus retained modes",
      "Fixed-aperture directivity versus spacing for every scheme",
  };
  for (std::size_t k = 0; k < std::size(commands); ++k) {
    auto* sub = app.add_subcommand(commands[k].first, help[k]);
    sub->add_option("--config", opts.config, "JSON experiment configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "CSV output path (default: stdout or the config's output)");
    sub->add_option("--precision", opts.precision, "double | ext | ext:<bits>");
    sub->add_option("--threshold", opts.threshold, "Eigenvalue truncation threshold");
    sub->add_option("--dump-matrices", opts.dump_dir, "Directory for plain-text Z, h and i dumps");
    sub->add_flag("--quiet", opts.quiet, "No progress output");
    sub->add_flag("--deterministic", opts.deterministic, "Omit the wall-time column");
    const auto experiment = commands[k].second;
    sub->callback([&chosen, experiment] { chosen = experiment; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    return run(*chosen, opts);
  } catch (const lis::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const lis::CapacityError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const lis::InvalidArgument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const lis::Error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
}
