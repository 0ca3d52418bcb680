#include "seesim/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace seesim {

namespace {

using Clock = std::chrono::steady_clock;

double wall_ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Zero a subcarrier's free CBS powers when that strictly raises the
// subtractive objective; an extra ascent move that also pins exact zeros on
// subcarriers that cannot contribute.
bool snap_allocation(const OptimizerContext& ctx, double eta, PowerAllocation& alloc) {
  const ProblemData& d = ctx.data;
  if (d.enforce_cu() || d.enforce_pu()) return false;
  if (!d.pattern.s_free && !d.pattern.z_free) return false;
  bool changed = false;
  for (int i = 0; i < d.subcarriers(); ++i) {
    Eigen::Vector3d pw = alloc.at(i);
    Eigen::Vector3d zeroed = pw;
    if (d.pattern.s_free) zeroed(1) = 0.0;
    if (d.pattern.z_free) zeroed(2) = 0.0;
    if (zeroed(1) == pw(1) && zeroed(2) == pw(2)) continue;
    const double before =
        d.dc->pair_value(ctx.objective_pair, i, pw) - eta * (pw(1) + pw(2));
    const double after =
        d.dc->pair_value(ctx.objective_pair, i, zeroed) - eta * (zeroed(1) + zeroed(2));
    if (after > before) {
      alloc.s(i) = zeroed(1);
      alloc.z(i) = zeroed(2);
      changed = true;
    }
  }
  return changed;
}

struct RatioParts {
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio() const { return numerator / denominator; }
};

RatioParts ratio_parts(const OptimizerContext& ctx, const PowerAllocation& alloc) {
  RatioParts rp;
  for (int i = 0; i < ctx.data.subcarriers(); ++i)
    rp.numerator += ctx.data.dc->pair_value(ctx.objective_pair, i, alloc.at(i));
  rp.denominator = alloc.cbs_sum() + ctx.data.p_b;
  return rp;
}

SeeResult infeasible_result(const OptimizerContext& ctx, Clock::time_point t0) {
  SeeResult res;
  res.allocation = PowerAllocation::zero(ctx.data.subcarriers());
  res.p_tot = ctx.data.p_b;
  res.status = SolveStatus::Infeasible;
  res.trace.status = SolveStatus::Infeasible;
  res.trace.wall_ms = wall_ms_since(t0);
  return res;
}

}  // namespace

ScaResult sca_inner(const OptimizerContext& ctx, double eta, const PowerAllocation& anchor0,
                    OptimizerTrace* trace, int outer_m, const OptimizerOptions& opts) {
  ScaResult out;
  PowerAllocation anchor = anchor0;
  double f_prev = subtractive_objective(ctx.data, ctx.objective_pair, eta, anchor);
  if (trace) trace->inner.push_back({outer_m, 0, f_prev});

  for (int n = 1; n <= ctx.n_max; ++n) {
    SubproblemSpec spec{ctx.data, ctx.objective_pair, eta, anchor};
    const SolveReport rep = solve_subproblem(spec, opts.subproblem_tol);
    if (rep.status == SolveStatus::Infeasible || rep.status == SolveStatus::NumericError) {
      out.allocation = anchor;
      out.f_value = f_prev;
      out.iterations = n;
      out.status = rep.status;
      return out;
    }
    PowerAllocation alloc = rep.solution;
    snap_allocation(ctx, eta, alloc);
    const double f = subtractive_objective(ctx.data, ctx.objective_pair, eta, alloc);
    if (trace) trace->inner.push_back({outer_m, n, f});
    anchor = alloc;
    out.iterations = n;
    if (std::abs(f - f_prev) < ctx.epsilon) {
      out.allocation = alloc;
      out.f_value = f;
      out.status = SolveStatus::Optimal;
      return out;
    }
    f_prev = f;
  }
  out.allocation = anchor;
  out.f_value = f_prev;
  out.status = SolveStatus::MaxIter;
  return out;
}

AnchorChoice choose_anchor(const OptimizerContext& ctx, const OptimizerOptions& opts) {
  const ProblemData& d = ctx.data;
  AnchorChoice choice;
  const auto feasible = feasibility_phase(d);
  if (!feasible) return choice;
  choice.feasible = true;

  std::vector<PowerAllocation> candidates;
  candidates.push_back(*feasible);
  candidates.push_back(d.pattern.overlay(PowerAllocation::zero(d.subcarriers())));
  for (const auto& cand : opts.candidates) {
    if (cand.subcarriers() != d.subcarriers()) continue;
    PowerAllocation c = cand;
    if (!d.pattern.matches(c, 1e-9)) continue;
    if (!d.budget_feasible(c)) continue;
    if ((d.enforce_cu() || d.enforce_pu()) && d.min_slack(c) < 0.0) continue;
    candidates.push_back(std::move(c));
  }

  choice.anchor = candidates.front();
  choice.eta0 = opts.eta0;
  if (opts.eta0_from_candidates) {
    double best_ratio = -std::numeric_limits<double>::infinity();
    for (auto& cand : candidates) {
      snap_allocation(ctx, 0.0, cand);
      const double r = ratio_parts(ctx, cand).ratio();
      if (r > best_ratio) {
        best_ratio = r;
        choice.anchor = cand;
      }
    }
    choice.eta0 = std::max(opts.eta0, best_ratio);
  } else {
    double anchor_val = -std::numeric_limits<double>::infinity();
    for (auto& cand : candidates) {
      snap_allocation(ctx, opts.eta0, cand);
      const double v = subtractive_objective(d, ctx.objective_pair, opts.eta0, cand);
      if (v > anchor_val) {
        anchor_val = v;
        choice.anchor = cand;
      }
    }
  }
  return choice;
}

SeeResult dinkelbach_outer(const OptimizerContext& ctx, const OptimizerOptions& opts) {
  const auto t0 = Clock::now();
  const ProblemData& d = ctx.data;

  const AnchorChoice choice = choose_anchor(ctx, opts);
  if (!choice.feasible) return infeasible_result(ctx, t0);
  const auto feasible = choice.anchor;  // warm-start fallback
  PowerAllocation anchor = choice.anchor;

  SeeResult res;
  double eta = choice.eta0;
  double best_ratio = -std::numeric_limits<double>::infinity();
  RatioParts last_rp;
  bool have_iterate = false;

  for (int m = 0; m < ctx.m_max; ++m) {
    const ScaResult inner = sca_inner(ctx, eta, anchor, &res.trace, m, opts);
    if (inner.status == SolveStatus::Infeasible ||
        inner.status == SolveStatus::NumericError) {
      if (!have_iterate) return infeasible_result(ctx, t0);
      res.status = inner.status;
      break;
    }
    const RatioParts rp = ratio_parts(ctx, inner.allocation);
    res.trace.outer.push_back({m, eta, inner.f_value, inner.iterations});
    last_rp = rp;
    have_iterate = true;

    const double ratio = rp.ratio();
    if (ratio >= best_ratio) {
      best_ratio = ratio;
      res.allocation = inner.allocation;
    }
    res.residual = std::abs(rp.numerator - eta * rp.denominator);
    res.eta_star = ratio;
    if (std::abs(ratio - eta) < ctx.epsilon) {
      res.converged = true;
      res.status = SolveStatus::Optimal;
      break;
    }
    if (m == ctx.m_max - 1) {
      res.status = SolveStatus::MaxIter;
      break;
    }
    eta = ratio;
    anchor = opts.warm_start ? inner.allocation : feasible;
  }

  if (have_iterate) {
    // terminal row: the updated ratio and the (zero) subtractive value there
    res.trace.outer.push_back({static_cast<int>(res.trace.outer.size()), res.eta_star,
                               last_rp.numerator - res.eta_star * last_rp.denominator, 0});
  }

  const RateBundle rb = ctx.bundle(res.allocation);
  res.see = rb.see;
  res.r_sec = rb.r_sec;
  res.p_tot = rb.p_tot;
  res.trace.status = res.status;
  res.trace.wall_ms = wall_ms_since(t0);
  return res;
}

SeeResult icsi_seem(const ChannelSet& cs, const SystemConfig& cfg, const OptimizerOptions& opts) {
  const BeamformerSet beams = build_beamformers_icsi(cs);
  const EffectiveGains gains = effective_gains(cs, beams);
  const DcFunctions dc(gains, cs.sigma2);
  OptimizerContext ctx;
  ctx.data.dc = &dc;
  ctx.data.pattern = VariablePattern::all_free(cfg.subcarriers);
  ctx.data.p_pbs_total = cfg.p_pbs_total_w;
  ctx.data.p_cbs_total = cfg.p_cbs_total_w;
  ctx.data.p_b = cfg.p_b_w;
  ctx.data.r_cu_min = cfg.r_cu_min;
  ctx.data.r_pu_min = cfg.r_pu_min;
  ctx.epsilon = cfg.epsilon;
  ctx.m_max = cfg.m_max;
  ctx.n_max = cfg.n_max;
  const double sigma2 = cs.sigma2;
  const double p_b = cfg.p_b_w;
  ctx.bundle = [&gains, sigma2, p_b](const PowerAllocation& alloc) {
    return see_bundle(gains, sigma2, alloc, p_b);
  };
  return dinkelbach_outer(ctx, opts);
}

SeeResult scsi_seem(const ChannelSet& cs, const std::vector<EdChannels>& ed_samples,
                    const SystemConfig& cfg, std::uint64_t trial_index,
                    const OptimizerOptions& opts) {
  const BeamformerSet beams = build_beamformers_scsi(cs, cfg, trial_index);
  const EffectiveGains gains = effective_gains(cs, beams);
  std::vector<EdGains> samples;
  samples.reserve(ed_samples.size());
  for (const auto& ed : ed_samples) samples.push_back(ed_gains(ed, beams));
  if (!cfg.scsi_expect_pbs_link) {
    // expectation only over the CBS-ED link: every sample keeps the true
    // PBS-ED gain
    for (auto& s : samples) s.gc = gains.ed.gc;
  }
  const DcFunctions dc(gains, samples, cs.sigma2);
  OptimizerContext ctx;
  ctx.data.dc = &dc;
  ctx.data.pattern = VariablePattern::all_free(cfg.subcarriers);
  ctx.data.p_pbs_total = cfg.p_pbs_total_w;
  ctx.data.p_cbs_total = cfg.p_cbs_total_w;
  ctx.data.p_b = cfg.p_b_w;
  ctx.data.r_cu_min = cfg.r_cu_min;
  ctx.data.r_pu_min = cfg.r_pu_min;
  ctx.epsilon = cfg.epsilon;
  ctx.m_max = cfg.m_max;
  ctx.n_max = cfg.n_max;
  const double sigma2 = cs.sigma2;
  const double p_b = cfg.p_b_w;
  const std::vector<EdGains> sample_copy = samples;
  ctx.bundle = [&gains, sample_copy, sigma2, p_b](const PowerAllocation& alloc) {
    return see_bundle_expected(gains, sample_copy, sigma2, alloc, p_b);
  };
  return dinkelbach_outer(ctx, opts);
}

}  // namespace seesim
