#include "seesim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace seesim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& msg) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    parse_fail(origin, line, "invalid numeric value for '" + key + "': " + value);
  }
}

long long parse_int(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  try {
    size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    parse_fail(origin, line, "invalid integer value for '" + key + "': " + value);
  }
}

bool parse_bool(const std::string& origin, int line, const std::string& key,
                const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  parse_fail(origin, line, "invalid boolean value for '" + key + "': " + value);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

const char* sweep_var_name(SweepVar v) {
  switch (v) {
    case SweepVar::PCbsTotalDbm: return "p_cbs_total_dbm";
    case SweepVar::PPbsTotalDbm: return "p_pbs_total_dbm";
    case SweepVar::NP: return "n_p";
    case SweepVar::NC: return "n_c";
    case SweepVar::NE: return "n_e";
    case SweepVar::Subcarriers: return "subcarriers";
  }
  return "?";
}

namespace {

SweepVar parse_sweep_var(const std::string& origin, int line, const std::string& value) {
  for (SweepVar v : {SweepVar::PCbsTotalDbm, SweepVar::PPbsTotalDbm, SweepVar::NP, SweepVar::NC,
                     SweepVar::NE, SweepVar::Subcarriers}) {
    if (value == sweep_var_name(v)) return v;
  }
  parse_fail(origin, line, "unknown sweep_var '" + value + "'");
}

}  // namespace

void ExperimentSpec::validate() const {
  base.validate();
  if (grid.empty()) throw std::invalid_argument("ExperimentSpec: sweep grid is empty");
  if (schemes.empty()) throw std::invalid_argument("ExperimentSpec: scheme list is empty");
  if (trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
  for (double v : grid) {
    switch (sweep) {
      case SweepVar::NP:
      case SweepVar::NE:
      case SweepVar::Subcarriers:
        if (v < 1 || v != std::floor(v))
          throw std::invalid_argument("ExperimentSpec: integer sweep grid required");
        break;
      case SweepVar::NC:
        if (v < 3 || v != std::floor(v))
          throw std::invalid_argument("ExperimentSpec: n_c sweep values must be integers >= 3");
        break;
      default:
        break;
    }
  }
}

void apply_figure_preset(ExperimentSpec& spec, const std::string& figure) {
  spec.figure = figure;
  spec.base = SystemConfig{};
  const std::vector<SchemeId> comparison = {SchemeId::IcsiSeem, SchemeId::CbsOnly,
                                            SchemeId::PbsOnly, SchemeId::Equal};
  if (figure == "fig2") {
    spec.sweep = SweepVar::PCbsTotalDbm;
    spec.grid = {40.0};
    spec.schemes = {SchemeId::IcsiSeem, SchemeId::ScsiSeem};
  } else if (figure == "fig3") {
    spec.sweep = SweepVar::PCbsTotalDbm;
    spec.grid = {20, 25, 30, 35, 40, 45, 50};
    spec.schemes = {SchemeId::IcsiSeem, SchemeId::ScsiSeem, SchemeId::Srm, SchemeId::Eem,
                    SchemeId::SeemNoAn};
  } else if (figure == "fig4") {
    spec.sweep = SweepVar::PCbsTotalDbm;
    spec.grid = {20, 25, 30, 35, 40, 45, 50};
    spec.schemes = comparison;
  } else if (figure == "fig5") {
    spec.sweep = SweepVar::NP;
    spec.grid = {2, 3, 4, 6, 8};
    spec.base.p_cbs_total_w = dbm_to_watt(20.0);
    spec.schemes = comparison;
  } else if (figure == "fig6") {
    spec.sweep = SweepVar::NC;
    spec.grid = {3, 4, 6, 8};
    spec.base.p_cbs_total_w = dbm_to_watt(20.0);
    spec.schemes = comparison;
  } else if (figure == "fig7") {
    spec.sweep = SweepVar::Subcarriers;
    spec.grid = {2, 4, 6, 8};
    spec.base.p_cbs_total_w = dbm_to_watt(20.0);
    spec.schemes = comparison;
  } else {
    throw std::runtime_error("unknown figure preset '" + figure + "'");
  }
}

ExperimentSpec parse_config_text(const std::string& text, const std::string& origin) {
  ExperimentSpec spec;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  // the figure key, when present, applies its preset before other keys
  {
    std::istringstream scan(text);
    int ln = 0;
    while (std::getline(scan, raw)) {
      ++ln;
      std::string line = trim(raw);
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = trim(line.substr(0, hash));
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      if (trim(line.substr(0, eq)) == "figure") apply_figure_preset(spec, trim(line.substr(eq + 1)));
    }
  }

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail(origin, lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) parse_fail(origin, lineno, "empty key");
    if (value.empty()) parse_fail(origin, lineno, "empty value for '" + key + "'");

    SystemConfig& c = spec.base;
    if (key == "figure") {
      // already applied
    } else if (key == "subcarriers") {
      c.subcarriers = static_cast<int>(parse_int(origin, lineno, key, value));
    } else if (key == "n_p") {
      c.n_p = static_cast<int>(parse_int(origin, lineno, key, value));
    } else if (key == "n_c") {
      c.n_c = static_cast<int>(parse_int(origin, lineno, key, value));
    } else if (key == "n_e") {
      c.n_e = static_cast<int>(parse_int(origin, lineno, key, value));
    } else if (key == "p_pbs_total_dbm") {
      c.p_pbs_total_w = dbm_to_watt(parse_double(origin, lineno, key, value));
    } else if (key == "p_cbs_total_dbm") {
      c.p_cbs_total_w = dbm_to_watt(parse_double(origin, lineno, key, value));
    } else if (key == "p_b_dbm") {
      c.p_b_w = dbm_to_watt(parse_double(origin, lineno, key, value));
    } else if (key == "delta_f_hz") {
      c.delta_f_hz = parse_double(origin, lineno, key, value);
    } else if (key == "n0_dbm_per_hz") {
      c.n0_w_per_hz = dbm_to_watt(parse_double(origin, lineno, key, value));
    } else if (key == "r_cu_min_bps_hz") {
      c.r_cu_min = parse_double(origin, lineno, key, value);
      if (c.r_cu_min < 0) parse_fail(origin, lineno, "r_cu_min_bps_hz must be >= 0");
    } else if (key == "r_pu_min_bps_hz") {
      c.r_pu_min = parse_double(origin, lineno, key, value);
      if (c.r_pu_min < 0) parse_fail(origin, lineno, "r_pu_min_bps_hz must be >= 0");
    } else if (key == "d_all_m") {
      c.distance_m.fill(parse_double(origin, lineno, key, value));
    } else if (key == "d_pp_m") {
      c.distance_m[0] = parse_double(origin, lineno, key, value);
    } else if (key == "d_pc_m") {
      c.distance_m[1] = parse_double(origin, lineno, key, value);
    } else if (key == "d_pe_m") {
      c.distance_m[2] = parse_double(origin, lineno, key, value);
    } else if (key == "d_cp_m") {
      c.distance_m[3] = parse_double(origin, lineno, key, value);
    } else if (key == "d_cc_m") {
      c.distance_m[4] = parse_double(origin, lineno, key, value);
    } else if (key == "d_ce_m") {
      c.distance_m[5] = parse_double(origin, lineno, key, value);
    } else if (key == "epsilon") {
      c.epsilon = parse_double(origin, lineno, key, value);
    } else if (key == "m_max") {
      c.m_max = static_cast<int>(parse_int(origin, lineno, key, value));
    } else if (key == "n_max") {
      c.n_max = static_cast<int>(parse_int(origin, lineno, key, value));
    } else if (key == "scsi_samples") {
      c.scsi_samples = static_cast<int>(parse_int(origin, lineno, key, value));
    } else if (key == "scsi_expect_pbs_link") {
      c.scsi_expect_pbs_link = parse_bool(origin, lineno, key, value);
    } else if (key == "p_p_fixed_dbm") {
      c.p_p_fixed_w = dbm_to_watt(parse_double(origin, lineno, key, value));
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_int(origin, lineno, key, value));
    } else if (key == "sweep_var") {
      spec.sweep = parse_sweep_var(origin, lineno, value);
    } else if (key == "sweep_grid") {
      spec.grid.clear();
      for (const auto& item : split(value, ','))
        spec.grid.push_back(parse_double(origin, lineno, key, item));
    } else if (key == "schemes") {
      spec.schemes.clear();
      for (const auto& item : split(value, ',')) {
        const auto id = parse_scheme(item);
        if (!id) parse_fail(origin, lineno, "unknown scheme '" + item + "'");
        spec.schemes.push_back(*id);
      }
    } else if (key == "trials") {
      spec.trials = static_cast<int>(parse_int(origin, lineno, key, value));
    } else if (key == "threads") {
      spec.threads = static_cast<int>(parse_int(origin, lineno, key, value));
    } else if (key == "out") {
      spec.out_path = value;
    } else {
      parse_fail(origin, lineno, "unknown key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

ExperimentSpec parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

SystemConfig config_at(const ExperimentSpec& spec, double sweep_value) {
  SystemConfig cfg = spec.base;
  switch (spec.sweep) {
    case SweepVar::PCbsTotalDbm: cfg.p_cbs_total_w = dbm_to_watt(sweep_value); break;
    case SweepVar::PPbsTotalDbm: cfg.p_pbs_total_w = dbm_to_watt(sweep_value); break;
    case SweepVar::NP: cfg.n_p = static_cast<int>(sweep_value); break;
    case SweepVar::NC: cfg.n_c = static_cast<int>(sweep_value); break;
    case SweepVar::NE: cfg.n_e = static_cast<int>(sweep_value); break;
    case SweepVar::Subcarriers: cfg.subcarriers = static_cast<int>(sweep_value); break;
  }
  return cfg;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const int n_sweep = static_cast<int>(spec.grid.size());
  const int n_trials = spec.trials;

  // one task per trial; sweep points run in ascending order inside a trial
  // so each scheme can warm-start from its previous-point allocation
  std::vector<std::vector<std::map<SchemeId, SeeResult>>> grid_results(
      n_sweep, std::vector<std::map<SchemeId, SeeResult>>(n_trials));

  std::atomic<int> next_trial{0};
  auto worker = [&]() {
    while (true) {
      const int trial = next_trial.fetch_add(1);
      if (trial >= n_trials) return;
      SchemeRunOptions run_opts;
      for (int gi = 0; gi < n_sweep; ++gi) {
        const SystemConfig cfg = config_at(spec, spec.grid[gi]);
        const ChannelSet cs = draw_channel_set(cfg, static_cast<std::uint64_t>(trial));
        auto res = run_schemes(cs, cfg, spec.schemes, static_cast<std::uint64_t>(trial), run_opts);
        run_opts.carry.clear();
        for (const auto& [id, r] : res)
          if (r.status != SolveStatus::Infeasible) run_opts.carry[id] = r.allocation;
        grid_results[gi][trial] = std::move(res);
      }
    }
  };

  const int n_threads = std::min(spec.threads > 0 ? spec.threads : default_threads(), n_trials);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  ExperimentResult out;
  for (int gi = 0; gi < n_sweep; ++gi) {
    for (int trial = 0; trial < n_trials; ++trial) {
      for (SchemeId id : spec.schemes) {
        const SeeResult& r = grid_results[gi][trial].at(id);
        ResultRow row;
        row.scheme = id;
        row.sweep_var = sweep_var_name(spec.sweep);
        row.sweep_value = spec.grid[gi];
        row.trial = trial;
        row.seed = spec.base.seed;
        row.see = r.see;
        row.r_sec = r.r_sec;
        row.p_tot = r.p_tot;
        row.outer_iters = static_cast<int>(r.trace.outer.size());
        int inner = 0;
        for (const auto& o : r.trace.outer) inner += o.inner_iters;
        row.inner_iters = inner;
        row.converged = r.converged;
        row.wall_ms = r.trace.wall_ms;
        out.rows.push_back(std::move(row));
      }
    }
  }

  for (SchemeId id : spec.schemes) {
    for (int gi = 0; gi < n_sweep; ++gi) {
      SummaryRow s;
      s.scheme = id;
      s.sweep_value = spec.grid[gi];
      double sum = 0.0, sum2 = 0.0;
      int n = 0;
      for (const auto& row : out.rows) {
        if (row.scheme != id || row.sweep_value != spec.grid[gi]) continue;
        sum += row.see;
        sum2 += row.see * row.see;
        ++n;
      }
      s.n = n;
      s.mean_see = n > 0 ? sum / n : 0.0;
      if (n > 1) s.stderr_see = std::sqrt(std::max(0.0, (sum2 - sum * sum / n) / (n - 1)) / n);
      out.summary.push_back(s);
    }
  }
  return out;
}

void write_rows_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "scheme,sweep_var,sweep_value,trial,seed,see_bps_hz_per_w,r_sec_bps_hz,p_tot_w,"
         "outer_iters,inner_iters,converged,wall_ms\n";
  for (const auto& r : rows) {
    out << scheme_name(r.scheme) << ',' << r.sweep_var << ',' << fmt_double(r.sweep_value) << ','
        << r.trial << ',' << r.seed << ',' << fmt_double(r.see) << ',' << fmt_double(r.r_sec)
        << ',' << fmt_double(r.p_tot) << ',' << r.outer_iters << ',' << r.inner_iters << ','
        << (r.converged ? 1 : 0) << ',';
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", r.wall_ms);
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("failed writing: " + path);
}

std::vector<ResultRow> read_rows_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty results file: " + path);
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 12) throw std::runtime_error("malformed results row: " + line);
    ResultRow r;
    const auto id = parse_scheme(fields[0]);
    if (!id) throw std::runtime_error("unknown scheme in results row: " + fields[0]);
    r.scheme = *id;
    r.sweep_var = fields[1];
    r.sweep_value = std::stod(fields[2]);
    r.trial = std::stoi(fields[3]);
    r.seed = std::stoull(fields[4]);
    r.see = std::stod(fields[5]);
    r.r_sec = std::stod(fields[6]);
    r.p_tot = std::stod(fields[7]);
    r.outer_iters = std::stoi(fields[8]);
    r.inner_iters = std::stoi(fields[9]);
    r.converged = fields[10] == "1";
    r.wall_ms = std::stod(fields[11]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string summary_text(const ExperimentResult& result) {
  std::ostringstream out;
  out << "scheme,sweep_value,mean_see,stderr_see,n\n";
  for (const auto& s : result.summary) {
    out << scheme_name(s.scheme) << ',' << fmt_double(s.sweep_value) << ','
        << fmt_double(s.mean_see) << ',' << fmt_double(s.stderr_see) << ',' << s.n << '\n';
  }
  return out.str();
}

void emit_trace(const SeeResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file: " + path);
  out << "level,m,n,eta,f_value\n";
  for (const auto& o : result.trace.outer)
    out << "outer," << o.m << ',' << o.inner_iters << ',' << fmt_double(o.eta) << ','
        << fmt_double(o.f_value) << '\n';
  for (const auto& s : result.trace.inner) {
    double eta = 0.0;
    for (const auto& o : result.trace.outer)
      if (o.m == s.m) eta = o.eta;
    out << "inner," << s.m << ',' << s.n << ',' << fmt_double(eta) << ',' << fmt_double(s.f_value)
        << '\n';
  }
  if (!out) throw std::runtime_error("failed writing trace: " + path);
}

OptimizerTrace parse_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file: " + path);
  OptimizerTrace trace;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 5) throw std::runtime_error("malformed trace row: " + line);
    if (fields[0] == "outer") {
      trace.outer.push_back(
          {std::stoi(fields[1]), std::stod(fields[3]), std::stod(fields[4]),
           std::stoi(fields[2])});
    } else if (fields[0] == "inner") {
      trace.inner.push_back({std::stoi(fields[1]), std::stoi(fields[2]), std::stod(fields[4])});
    } else {
      throw std::runtime_error("unknown trace level: " + fields[0]);
    }
  }
  return trace;
}

}  // namespace seesim
