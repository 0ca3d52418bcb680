#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seesim/baselines.hpp"

namespace seesim {

enum class SweepVar {
  PCbsTotalDbm,
  PPbsTotalDbm,
  NP,
  NC,
  NE,
  Subcarriers,
};

const char* sweep_var_name(SweepVar v);

struct ExperimentSpec {
  std::string figure = "custom";
  SweepVar sweep = SweepVar::PCbsTotalDbm;
  std::vector<double> grid;
  std::vector<SchemeId> schemes;
  int trials = 20;
  int threads = 0;  // 0: hardware concurrency
  SystemConfig base;
  std::string out_path = "results.csv";

  void validate() const;
};

struct ResultRow {
  SchemeId scheme = SchemeId::Equal;
  std::string sweep_var;
  double sweep_value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double see = 0.0;
  double r_sec = 0.0;
  double p_tot = 0.0;
  int outer_iters = 0;
  int inner_iters = 0;
  bool converged = false;
  double wall_ms = 0.0;
};

struct SummaryRow {
  SchemeId scheme = SchemeId::Equal;
  double sweep_value = 0.0;
  double mean_see = 0.0;
  double stderr_see = 0.0;
  int n = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
};

// Strict key=value parser; '#' comments; unknown keys rejected with the line
// number; dBm values converted to watts.
ExperimentSpec parse_config(const std::string& path);
ExperimentSpec parse_config_text(const std::string& text, const std::string& origin = "<config>");

// Figure presets at desk scale; throws on unknown figure ids.
void apply_figure_preset(ExperimentSpec& spec, const std::string& figure);

SystemConfig config_at(const ExperimentSpec& spec, double sweep_value);

ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_rows_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> read_rows_csv(const std::string& path);
std::string summary_text(const ExperimentResult& result);

void emit_trace(const SeeResult& result, const std::string& path);
OptimizerTrace parse_trace(const std::string& path);

}  // namespace seesim
