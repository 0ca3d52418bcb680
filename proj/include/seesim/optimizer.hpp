#pragma once

#include <functional>
#include <vector>

#include "seesim/channel.hpp"
#include "seesim/metrics.hpp"
#include "seesim/solver.hpp"

namespace seesim {

struct InnerStep {
  int m = 0;  // outer iteration the step belongs to
  int n = 0;
  double f_value = 0.0;
};

struct OuterStep {
  int m = 0;
  double eta = 0.0;
  double f_value = 0.0;  // inner fixed-point value of the subtractive objective
  int inner_iters = 0;
};

struct OptimizerTrace {
  std::vector<OuterStep> outer;
  std::vector<InnerStep> inner;
  double wall_ms = 0.0;
  SolveStatus status = SolveStatus::Optimal;
};

struct SeeResult {
  PowerAllocation allocation;
  double see = 0.0;
  double r_sec = 0.0;
  double p_tot = 0.0;
  double eta_star = 0.0;  // terminal ratio of the outer iteration
  OptimizerTrace trace;
  bool converged = false;
  double residual = 0.0;  // |f(eta*)| at the returned allocation
  SolveStatus status = SolveStatus::Optimal;
};

struct OptimizerOptions {
  bool warm_start = true;       // anchor outer step m+1 at the solution of step m
  double subproblem_tol = 1e-6;
  double eta0 = 0.0;            // starting ratio of the outer iteration
  std::vector<PowerAllocation> candidates;  // extra starting allocations
  // start the outer iteration at the best candidate ratio instead of eta0;
  // guarantees the returned value is at least that candidate's ratio
  bool eta0_from_candidates = false;
};

// Everything a two-tier run needs beyond the optimization data: how to
// evaluate the reported rate bundle at an allocation.
struct OptimizerContext {
  ProblemData data;
  DcFunctions::Pair objective_pair = DcFunctions::Pair::CuSecrecy;
  std::function<RateBundle(const PowerAllocation&)> bundle;
  double epsilon = 1e-3;
  int m_max = 100;
  int n_max = 100;
};

struct ScaResult {
  PowerAllocation allocation;
  double f_value = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::Optimal;
};

// Inner tier: successive convex approximation at fixed eta, re-anchored at
// each subproblem solution until the subtractive objective settles.
ScaResult sca_inner(const OptimizerContext& ctx, double eta, const PowerAllocation& anchor0,
                    OptimizerTrace* trace, int outer_m, const OptimizerOptions& opts);

struct AnchorChoice {
  PowerAllocation anchor;
  double eta0 = 0.0;
  bool feasible = false;
};

// Feasibility phase plus candidate battery; picks the starting anchor (and,
// with eta0_from_candidates, the starting ratio) for the outer iteration.
AnchorChoice choose_anchor(const OptimizerContext& ctx, const OptimizerOptions& opts);

// Outer tier: ratio updates on eta until |eta^{m+1} - eta^m| < epsilon.
SeeResult dinkelbach_outer(const OptimizerContext& ctx, const OptimizerOptions& opts = {});

SeeResult icsi_seem(const ChannelSet& cs, const SystemConfig& cfg,
                    const OptimizerOptions& opts = {});

SeeResult scsi_seem(const ChannelSet& cs, const std::vector<EdChannels>& ed_samples,
                    const SystemConfig& cfg, std::uint64_t trial_index,
                    const OptimizerOptions& opts = {});

}  // namespace seesim
