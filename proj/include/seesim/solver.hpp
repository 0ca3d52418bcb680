#pragma once

#include <Eigen/Dense>
#include <optional>

#include "seesim/allocation.hpp"
#include "seesim/config.hpp"
#include "seesim/dc_functions.hpp"

namespace seesim {

enum class SolveStatus { Optimal, MaxIter, Infeasible, NumericError };

const char* solve_status_name(SolveStatus s);

// Which power blocks the optimizer controls; non-free blocks are pinned to
// the given per-subcarrier values.
struct VariablePattern {
  bool p_free = true;
  bool s_free = true;
  bool z_free = true;
  Eigen::VectorXd p_fixed, s_fixed, z_fixed;

  static VariablePattern all_free(int subcarriers);
  int free_blocks() const { return (p_free ? 1 : 0) + (s_free ? 1 : 0) + (z_free ? 1 : 0); }
  bool matches(const PowerAllocation& alloc, double tol = 1e-12) const;
  PowerAllocation overlay(const PowerAllocation& alloc) const;  // pin fixed blocks
};

// Instance data shared by the subproblem, the feasibility phase and the
// outer iterations.
struct ProblemData {
  const DcFunctions* dc = nullptr;
  VariablePattern pattern;
  double p_pbs_total = 0.0;
  double p_cbs_total = 0.0;
  double p_b = 0.0;
  double r_cu_min = 0.0;
  double r_pu_min = 0.0;

  int subcarriers() const { return dc->subcarriers(); }
  bool enforce_cu() const { return r_cu_min > 0.0; }
  bool enforce_pu() const { return r_pu_min > 0.0; }

  // smallest original-constraint slack (enforced constraints only; +inf when
  // none are enforced)
  double min_slack(const PowerAllocation& alloc) const;
  bool budget_feasible(const PowerAllocation& alloc, double tol = 1e-9) const;
};

struct SubproblemSpec {
  ProblemData data;
  DcFunctions::Pair objective_pair = DcFunctions::Pair::CuSecrecy;
  double eta = 0.0;
  PowerAllocation anchor;
};

struct SolveReport {
  PowerAllocation solution;
  double objective = 0.0;  // convexified subproblem objective at the solution
  double kkt_residual = 0.0;
  double max_violation = 0.0;
  int newton_steps = 0;
  SolveStatus status = SolveStatus::NumericError;
};

// Subproblem objective (the convexified surrogate) at an arbitrary point.
double subproblem_objective(const SubproblemSpec& spec, const DcFunctions::Anchor& anchor,
                            const PowerAllocation& alloc);

// True (un-linearized) subtractive objective at a point.
double subtractive_objective(const ProblemData& data, DcFunctions::Pair pair, double eta,
                             const PowerAllocation& alloc);

SolveReport solve_subproblem(const SubproblemSpec& spec, double tol = 1e-6);

// Strictly feasible start for the two-tier iterations: uniform split when no
// rate constraint is enforced, otherwise max-min-slack with successive
// relinearization. nullopt when no point reaches slack >= 1e-6.
std::optional<PowerAllocation> feasibility_phase(const ProblemData& data);

PowerAllocation uniform_split(const ProblemData& data);

struct OracleResult {
  PowerAllocation allocation;
  double see = 0.0;
};

// Brute-force grid search over the budget simplex; desk-scale verification
// oracle, guarded to tiny instances.
OracleResult grid_oracle(const EffectiveGains& gains, const SystemConfig& cfg, int resolution);

}  // namespace seesim
