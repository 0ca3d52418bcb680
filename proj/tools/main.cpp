#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>

#include "seesim/experiment.hpp"

namespace {

using namespace seesim;

int cmd_run(const std::string& config_path, const std::string& figure, long long seed,
            int trials, int threads, const std::string& out) {
  ExperimentSpec spec;
  if (config_path.empty() && figure.empty()) {
    std::cerr << "run: need --config and/or --figure\n";
    return 2;
  }
  if (!figure.empty()) apply_figure_preset(spec, figure);
  if (!config_path.empty()) spec = parse_config(config_path);
  if (!config_path.empty() && !figure.empty()) {
    // CLI figure wins over the file's figure, file keys keep their overrides
    ExperimentSpec preset;
    apply_figure_preset(preset, figure);
    spec.figure = preset.figure;
    spec.sweep = preset.sweep;
    spec.grid = preset.grid;
    spec.schemes = preset.schemes;
  }
  if (seed >= 0) spec.base.seed = static_cast<std::uint64_t>(seed);
  if (trials > 0) spec.trials = trials;
  if (threads > 0) spec.threads = threads;
  if (!out.empty()) spec.out_path = out;
  spec.validate();

  const ExperimentResult result = run_experiment(spec);
  write_rows_csv(result.rows, spec.out_path);
  std::cout << summary_text(result);
  std::cout << "wrote " << result.rows.size() << " rows to " << spec.out_path << "\n";
  return 0;
}

int cmd_trace(const std::string& config_path, const std::string& scheme_str, long long seed,
              long long trial, const std::string& out) {
  ExperimentSpec spec;
  if (!config_path.empty()) spec = parse_config(config_path);
  if (seed >= 0) spec.base.seed = static_cast<std::uint64_t>(seed);
  const auto scheme = parse_scheme(scheme_str);
  if (!scheme) {
    std::cerr << "trace: unknown scheme '" << scheme_str << "'\n";
    return 2;
  }
  const SystemConfig cfg = spec.base;
  cfg.validate();
  const ChannelSet cs = draw_channel_set(cfg, static_cast<std::uint64_t>(trial));
  const SeeResult result = run_scheme(cs, cfg, *scheme, static_cast<std::uint64_t>(trial));
  emit_trace(result, out);
  std::printf("%s trial %lld: see=%.6g r_sec=%.6g p_tot=%.6g converged=%d outer=%zu\n",
              scheme_name(*scheme), trial, result.see, result.r_sec, result.p_tot,
              result.converged ? 1 : 0, result.trace.outer.size());
  std::cout << "wrote trace to " << out << "\n";
  return 0;
}

int cmd_oracle_check(int instances, int resolution, long long seed, double rel_tol) {
  SystemConfig cfg;
  cfg.subcarriers = 1;
  cfg.seed = seed >= 0 ? static_cast<std::uint64_t>(seed) : 7;
  cfg.validate();

  int failures = 0;
  for (int k = 0; k < instances; ++k) {
    const ChannelSet cs = draw_channel_set(cfg, static_cast<std::uint64_t>(k));
    const BeamformerSet beams = build_beamformers_icsi(cs);
    const EffectiveGains gains = effective_gains(cs, beams);
    const OracleResult oracle = grid_oracle(gains, cfg, resolution);
    const SeeResult opt = icsi_seem(cs, cfg);
    double rel;
    bool ok;
    if (oracle.see <= 0.0) {
      rel = opt.see;
      ok = opt.see <= 1e-9;
    } else {
      rel = std::abs(opt.see - oracle.see) / oracle.see;
      ok = rel <= rel_tol;
    }
    std::printf("instance %2d: optimizer=%.8g oracle=%.8g rel=%.3g %s\n", k, opt.see, oracle.see,
                rel, ok ? "ok" : "VIOLATION");
    if (!ok) ++failures;
  }
  if (failures > 0) {
    std::printf("oracle-check: %d violation(s)\n", failures);
    return 1;
  }
  std::printf("oracle-check: all %d instances within %.2g%%\n", instances, rel_tol * 100.0);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secrecy energy efficiency power-allocation simulator"};
  app.require_subcommand(1);

  std::string config_path, figure, out, scheme = "icsi_seem";
  long long seed = -1, trial = 0;
  int trials = 0, threads = 0, instances = 20, resolution = 200;
  double rel_tol = 0.02;

  auto* run = app.add_subcommand("run", "run a Monte Carlo experiment, write a results CSV");
  run->add_option("--config", config_path, "experiment config file (key = value)");
  run->add_option("--figure", figure, "preset: fig2..fig7");
  run->add_option("--seed", seed, "override the base seed");
  run->add_option("--trials", trials, "override the trial count");
  run->add_option("--threads", threads, "worker threads (0 = hardware)");
  run->add_option("--out", out, "output CSV path");

  auto* trace = app.add_subcommand("trace", "run one scheme instance, write its iteration trace");
  trace->add_option("--config", config_path, "config file for the base scenario");
  trace->add_option("--scheme", scheme, "scheme id (default icsi_seem)");
  trace->add_option("--seed", seed, "override the base seed");
  trace->add_option("--trial", trial, "trial index (default 0)");
  trace->add_option("--out", out, "trace CSV path")->required();

  auto* oracle = app.add_subcommand(
      "oracle-check", "compare the optimizer against the brute-force grid oracle (self check)");
  oracle->add_option("--instances", instances, "number of single-subcarrier instances");
  oracle->add_option("--resolution", resolution, "grid resolution per power axis");
  oracle->add_option("--seed", seed, "base seed");
  oracle->add_option("--rel-tol", rel_tol, "allowed relative gap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, figure, seed, trials, threads, out);
    if (trace->parsed()) return cmd_trace(config_path, scheme, seed, trial, out);
    if (oracle->parsed()) return cmd_oracle_check(instances, resolution, seed, rel_tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
