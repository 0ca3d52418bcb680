#include "seesim/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <memory>

namespace seesim {

namespace {

using Clock = std::chrono::steady_clock;

double fixed_pbs_per_subcarrier(const SystemConfig& cfg) {
  return std::min(cfg.p_p_fixed_w, cfg.p_pbs_total_w / cfg.subcarriers);
}

// Per-scheme problem bundle. The dc functions live on the heap so the
// context pointer stays valid if the engine moves.
struct SchemeEngine {
  std::shared_ptr<EffectiveGains> gains;
  std::shared_ptr<std::vector<EdGains>> samples;  // statistical-CSI only
  std::unique_ptr<DcFunctions> dc;
  OptimizerContext ctx;
  bool dinkelbach = true;
  bool closed_form = false;
};

SchemeEngine make_engine(const ChannelSet& cs, const SystemConfig& cfg, SchemeId scheme,
                         std::uint64_t trial_index) {
  SchemeEngine eng;
  const int I = cfg.subcarriers;
  const double sigma2 = cs.sigma2;

  if (scheme == SchemeId::ScsiSeem) {
    const BeamformerSet beams = build_beamformers_scsi(cs, cfg, trial_index);
    eng.gains = std::make_shared<EffectiveGains>(effective_gains(cs, beams));
    eng.samples = std::make_shared<std::vector<EdGains>>();
    for (const auto& ed : draw_ed_sample_set(cfg, trial_index))
      eng.samples->push_back(ed_gains(ed, beams));
    if (!cfg.scsi_expect_pbs_link) {
      for (auto& s : *eng.samples) s.gc = eng.gains->ed.gc;
    }
    eng.dc = std::make_unique<DcFunctions>(*eng.gains, *eng.samples, sigma2);
    auto gains = eng.gains;
    auto samples = eng.samples;
    const double p_b = cfg.p_b_w;
    eng.ctx.bundle = [gains, samples, sigma2, p_b](const PowerAllocation& alloc) {
      return see_bundle_expected(*gains, *samples, sigma2, alloc, p_b);
    };
  } else {
    const BeamformerSet beams = build_beamformers_icsi(cs);
    eng.gains = std::make_shared<EffectiveGains>(effective_gains(cs, beams));
    eng.dc = std::make_unique<DcFunctions>(*eng.gains, sigma2);
    auto gains = eng.gains;
    const double p_b = cfg.p_b_w;
    eng.ctx.bundle = [gains, sigma2, p_b](const PowerAllocation& alloc) {
      return see_bundle(*gains, sigma2, alloc, p_b);
    };
  }

  eng.ctx.data.dc = eng.dc.get();
  eng.ctx.data.pattern = VariablePattern::all_free(I);
  eng.ctx.data.p_pbs_total = cfg.p_pbs_total_w;
  eng.ctx.data.p_cbs_total = cfg.p_cbs_total_w;
  eng.ctx.data.p_b = cfg.p_b_w;
  eng.ctx.data.r_cu_min = cfg.r_cu_min;
  eng.ctx.data.r_pu_min = cfg.r_pu_min;
  eng.ctx.epsilon = cfg.epsilon;
  eng.ctx.m_max = cfg.m_max;
  eng.ctx.n_max = cfg.n_max;

  auto& pat = eng.ctx.data.pattern;
  switch (scheme) {
    case SchemeId::IcsiSeem:
    case SchemeId::ScsiSeem:
      break;
    case SchemeId::Srm:
      eng.dinkelbach = false;
      break;
    case SchemeId::Eem:
      eng.ctx.objective_pair = DcFunctions::Pair::CuRate;
      break;
    case SchemeId::SeemNoAn:
      pat.z_free = false;
      pat.z_fixed = Eigen::VectorXd::Zero(I);
      break;
    case SchemeId::CbsOnly:
      pat.p_free = false;
      pat.p_fixed = Eigen::VectorXd::Constant(I, fixed_pbs_per_subcarrier(cfg));
      break;
    case SchemeId::PbsOnly:
      pat.s_free = false;
      pat.z_free = false;
      pat.s_fixed = Eigen::VectorXd::Constant(I, cfg.p_cbs_total_w / (2.0 * I));
      pat.z_fixed = Eigen::VectorXd::Constant(I, cfg.p_cbs_total_w / (2.0 * I));
      break;
    case SchemeId::Equal:
      eng.closed_form = true;
      pat.p_free = pat.s_free = pat.z_free = false;
      pat.p_fixed = Eigen::VectorXd::Constant(I, fixed_pbs_per_subcarrier(cfg));
      pat.s_fixed = Eigen::VectorXd::Constant(I, cfg.p_cbs_total_w / (2.0 * I));
      pat.z_fixed = Eigen::VectorXd::Constant(I, cfg.p_cbs_total_w / (2.0 * I));
      break;
  }
  return eng;
}

SeeResult run_closed_form(const SchemeEngine& eng) {
  const auto t0 = Clock::now();
  SeeResult res;
  res.allocation = eng.ctx.data.pattern.overlay(PowerAllocation::zero(eng.ctx.data.subcarriers()));
  const RateBundle rb = eng.ctx.bundle(res.allocation);
  res.see = rb.see;
  res.r_sec = rb.r_sec;
  res.p_tot = rb.p_tot;
  res.eta_star = rb.see;
  res.converged = true;
  res.status = SolveStatus::Optimal;
  res.trace.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return res;
}

// One inner-tier maximization of the subtractive objective at eta = 0.
SeeResult run_rate_maximization(const SchemeEngine& eng, const OptimizerOptions& opts) {
  const auto t0 = Clock::now();
  SeeResult res;
  const AnchorChoice choice = choose_anchor(eng.ctx, opts);
  if (!choice.feasible) {
    res.allocation = PowerAllocation::zero(eng.ctx.data.subcarriers());
    res.p_tot = eng.ctx.data.p_b;
    res.status = SolveStatus::Infeasible;
    res.trace.status = res.status;
    return res;
  }
  const ScaResult inner = sca_inner(eng.ctx, 0.0, choice.anchor, &res.trace, 0, opts);
  res.allocation = inner.allocation;
  res.trace.outer.push_back({0, 0.0, inner.f_value, inner.iterations});
  const RateBundle rb = eng.ctx.bundle(res.allocation);
  res.see = rb.see;
  res.r_sec = rb.r_sec;
  res.p_tot = rb.p_tot;
  res.eta_star = rb.see;
  res.converged = inner.status == SolveStatus::Optimal;
  res.status = inner.status;
  res.trace.status = inner.status;
  res.trace.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return res;
}

double cu_rate_ratio(const SchemeEngine& eng, const PowerAllocation& alloc) {
  const RateBundle rb = eng.ctx.bundle(alloc);
  return rb.r_cc.sum() / rb.p_tot;
}

}  // namespace

const char* scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::IcsiSeem: return "icsi_seem";
    case SchemeId::ScsiSeem: return "scsi_seem";
    case SchemeId::Srm: return "srm";
    case SchemeId::Eem: return "eem";
    case SchemeId::SeemNoAn: return "seem_no_an";
    case SchemeId::CbsOnly: return "cbs_only";
    case SchemeId::PbsOnly: return "pbs_only";
    case SchemeId::Equal: return "equal";
  }
  return "?";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
  for (SchemeId id : all_schemes())
    if (name == scheme_name(id)) return id;
  return std::nullopt;
}

std::vector<SchemeId> all_schemes() {
  return {SchemeId::IcsiSeem, SchemeId::ScsiSeem, SchemeId::Srm,     SchemeId::Eem,
          SchemeId::SeemNoAn, SchemeId::CbsOnly,  SchemeId::PbsOnly, SchemeId::Equal};
}

SeeResult run_scheme(const ChannelSet& cs, const SystemConfig& cfg, SchemeId scheme,
                     std::uint64_t trial_index, const OptimizerOptions& opts) {
  const SchemeEngine eng = make_engine(cs, cfg, scheme, trial_index);
  if (eng.closed_form) return run_closed_form(eng);
  if (!eng.dinkelbach) return run_rate_maximization(eng, opts);
  return dinkelbach_outer(eng.ctx, opts);
}

std::map<SchemeId, SeeResult> run_schemes(const ChannelSet& cs, const SystemConfig& cfg,
                                          const std::vector<SchemeId>& schemes,
                                          std::uint64_t trial_index,
                                          const SchemeRunOptions& opts) {
  // restricted and baseline schemes first; joint schemes pick up their
  // allocations as warm-start candidates
  const std::vector<SchemeId> order = {SchemeId::Equal,   SchemeId::CbsOnly, SchemeId::PbsOnly,
                                       SchemeId::SeemNoAn, SchemeId::Srm,     SchemeId::Eem,
                                       SchemeId::ScsiSeem, SchemeId::IcsiSeem};
  auto wanted = [&](SchemeId id) {
    return std::find(schemes.begin(), schemes.end(), id) != schemes.end();
  };

  std::map<SchemeId, SeeResult> results;
  std::vector<PowerAllocation> pool;
  auto options_for = [&](SchemeId id) {
    OptimizerOptions o;
    o.subproblem_tol = opts.subproblem_tol;
    o.candidates = pool;
    if (auto it = opts.carry.find(id); it != opts.carry.end()) o.candidates.push_back(it->second);
    return o;
  };

  for (SchemeId id : order) {
    if (!wanted(id)) continue;
    results[id] = run_scheme(cs, cfg, id, trial_index, options_for(id));
    pool.push_back(results[id].allocation);
  }

  // enforce the nested-feasible-set orderings the schemes should satisfy at
  // their optima: rerun the dominated scheme seeded with the better point
  const double tol = opts.dominance_tol;
  for (int round = 0; round < opts.polish_rounds; ++round) {
    bool changed = false;
    auto polish_see = [&](SchemeId target) {
      if (!wanted(target)) return;
      double best_other = 0.0;
      for (const auto& [id, r] : results)
        if (id != target && id != SchemeId::ScsiSeem) best_other = std::max(best_other, r.see);
      if (best_other <= results[target].see + tol) return;
      OptimizerOptions o = options_for(target);
      o.eta0_from_candidates = true;
      SeeResult re = run_scheme(cs, cfg, target, trial_index, o);
      if (re.see > results[target].see) {
        results[target] = std::move(re);
        changed = true;
      }
    };
    // joint SEE scheme dominates everything sharing (a subset of) its
    // feasible set; CBS-side allocation dominates the closed-form split
    polish_see(SchemeId::IcsiSeem);
    if (wanted(SchemeId::CbsOnly) && wanted(SchemeId::Equal) &&
        results[SchemeId::Equal].see > results[SchemeId::CbsOnly].see + tol) {
      OptimizerOptions o = options_for(SchemeId::CbsOnly);
      o.eta0_from_candidates = true;
      SeeResult re = run_scheme(cs, cfg, SchemeId::CbsOnly, trial_index, o);
      if (re.see > results[SchemeId::CbsOnly].see) {
        results[SchemeId::CbsOnly] = std::move(re);
        changed = true;
      }
    }
    if (wanted(SchemeId::Srm) && wanted(SchemeId::IcsiSeem) &&
        results[SchemeId::IcsiSeem].r_sec > results[SchemeId::Srm].r_sec + tol) {
      SeeResult re = run_scheme(cs, cfg, SchemeId::Srm, trial_index,
                                options_for(SchemeId::Srm));
      if (re.r_sec > results[SchemeId::Srm].r_sec) {
        results[SchemeId::Srm] = std::move(re);
        changed = true;
      }
    }
    if (wanted(SchemeId::Eem) && wanted(SchemeId::IcsiSeem)) {
      const SchemeEngine eem_eng = make_engine(cs, cfg, SchemeId::Eem, trial_index);
      const double icsi_ratio = cu_rate_ratio(eem_eng, results[SchemeId::IcsiSeem].allocation);
      const double eem_ratio = cu_rate_ratio(eem_eng, results[SchemeId::Eem].allocation);
      if (icsi_ratio > eem_ratio + tol) {
        OptimizerOptions o = options_for(SchemeId::Eem);
        o.eta0_from_candidates = true;
        SeeResult re = run_scheme(cs, cfg, SchemeId::Eem, trial_index, o);
        if (cu_rate_ratio(eem_eng, re.allocation) > eem_ratio) {
          results[SchemeId::Eem] = std::move(re);
          changed = true;
        }
      }
    }
    if (!changed) break;
    pool.clear();
    for (const auto& [id, r] : results) pool.push_back(r.allocation);
  }
  return results;
}

}  // namespace seesim
