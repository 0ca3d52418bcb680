#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seesim/optimizer.hpp"
#include "seesim/solver.hpp"
#include "support/test_util.hpp"

using namespace seesim;
using Pair = DcFunctions::Pair;

namespace {

ProblemData make_data(const DcFunctions& dc, const SystemConfig& cfg) {
  ProblemData d;
  d.dc = &dc;
  d.pattern = VariablePattern::all_free(cfg.subcarriers);
  d.p_pbs_total = cfg.p_pbs_total_w;
  d.p_cbs_total = cfg.p_cbs_total_w;
  d.p_b = cfg.p_b_w;
  d.r_cu_min = cfg.r_cu_min;
  d.r_pu_min = cfg.r_pu_min;
  return d;
}

}  // namespace

TEST_CASE("subproblem never returns a point below the anchor") {
  SystemConfig cfg = test::desk_config(1);
  for (std::uint64_t trial = 0; trial < 8; ++trial) {
    const auto inst = test::make_instance(cfg, trial);
    const DcFunctions dc(inst.gains, inst.cs.sigma2);
    const ProblemData data = make_data(dc, cfg);
    SubproblemSpec spec{data, Pair::CuSecrecy, 0.0, uniform_split(data)};
    const auto anchor = dc.make_anchor(spec.anchor);
    const SolveReport rep = solve_subproblem(spec, 1e-6);
    REQUIRE(rep.status == SolveStatus::Optimal);
    CHECK(rep.objective >= subproblem_objective(spec, anchor, spec.anchor) - 1e-9);
    CHECK(rep.max_violation <= 1e-7);
    CHECK(rep.kkt_residual <= 1e-6);
    CHECK(rep.solution.nonnegative());
    CHECK(data.budget_feasible(rep.solution, 1e-9));
  }
}

TEST_CASE("a huge ratio weight drives the transmit power to zero") {
  SystemConfig cfg = test::desk_config(2);
  const auto inst = test::make_instance(cfg, 3);
  const DcFunctions dc(inst.gains, inst.cs.sigma2);
  const ProblemData data = make_data(dc, cfg);
  SubproblemSpec spec{data, Pair::CuSecrecy, 1e7, uniform_split(data)};
  const SolveReport rep = solve_subproblem(spec, 1e-6);
  REQUIRE(rep.status == SolveStatus::Optimal);
  CHECK(rep.solution.cbs_sum() <= 1e-4 * cfg.p_cbs_total_w);
}

TEST_CASE("feasibility phase") {
  SystemConfig cfg = test::desk_config(2);
  const auto inst = test::make_instance(cfg, 4);
  const DcFunctions dc(inst.gains, inst.cs.sigma2);

  SUBCASE("zero thresholds return the uniform split") {
    const ProblemData data = make_data(dc, cfg);
    const auto point = feasibility_phase(data);
    REQUIRE(point.has_value());
    CHECK(point->p(0) == doctest::Approx(cfg.p_pbs_total_w / 2).epsilon(1e-12));
    CHECK(point->s(0) == doctest::Approx(cfg.p_cbs_total_w / 4).epsilon(1e-12));
    CHECK(point->z(0) == doctest::Approx(cfg.p_cbs_total_w / 4).epsilon(1e-12));
  }

  SUBCASE("achievable thresholds give strictly feasible points") {
    SystemConfig strict_cfg = cfg;
    strict_cfg.r_cu_min = 0.05;
    strict_cfg.r_pu_min = 0.02;
    ProblemData data = make_data(dc, strict_cfg);
    const auto point = feasibility_phase(data);
    REQUIRE(point.has_value());
    CHECK(data.min_slack(*point) >= 1e-6);
    CHECK(data.budget_feasible(*point, 1e-9));
  }

  SUBCASE("unreachable thresholds are reported infeasible") {
    SystemConfig hard_cfg = cfg;
    hard_cfg.r_cu_min = 200.0;  // far above anything a 10 W budget can reach
    ProblemData data = make_data(dc, hard_cfg);
    CHECK(!feasibility_phase(data).has_value());
  }
}

TEST_CASE("subproblem honors enforced rate constraints") {
  SystemConfig cfg = test::desk_config(2);
  cfg.r_cu_min = 0.05;
  cfg.r_pu_min = 0.02;
  // draws verified feasible at these thresholds (1, 6, 7 are not: on those
  // the eavesdropper channel dominates and the feasibility phase correctly
  // reports infeasible)
  for (std::uint64_t trial : {0, 2, 3, 5}) {
    const auto inst = test::make_instance(cfg, trial);
    const DcFunctions dc(inst.gains, inst.cs.sigma2);
    const ProblemData data = make_data(dc, cfg);
    const auto start = feasibility_phase(data);
    REQUIRE(start.has_value());
    SubproblemSpec spec{data, Pair::CuSecrecy, 0.05, *start};
    const SolveReport rep = solve_subproblem(spec, 1e-6);
    REQUIRE(rep.status == SolveStatus::Optimal);
    CHECK(rep.max_violation <= 1e-7);
    // true constraints hold as well (majorization keeps them above the
    // linearized ones)
    CHECK(data.min_slack(rep.solution) >= -1e-9);
  }
}

TEST_CASE("grid oracle") {
  SystemConfig cfg = test::desk_config(1);
  const auto inst = test::make_instance(cfg, 5);

  SUBCASE("refinement never lowers the best value") {
    const OracleResult coarse = grid_oracle(inst.gains, cfg, 40);
    const OracleResult fine = grid_oracle(inst.gains, cfg, 80);
    CHECK(fine.see >= coarse.see - 1e-12);
    CHECK(coarse.see >= 0.0);
    CHECK(coarse.allocation.cbs_sum() <= cfg.p_cbs_total_w + 1e-9);
  }

  SUBCASE("instance guard") {
    SystemConfig big = test::desk_config(3);
    const auto big_inst = test::make_instance(big, 0);
    CHECK_THROWS_AS(grid_oracle(big_inst.gains, big, 10), std::invalid_argument);
  }
}

TEST_CASE("optimizer matches the grid oracle on single-subcarrier instances") {
  SystemConfig cfg = test::desk_config(1);
  for (std::uint64_t trial = 10; trial < 14; ++trial) {
    const ChannelSet cs = draw_channel_set(cfg, trial);
    const BeamformerSet beams = build_beamformers_icsi(cs);
    const EffectiveGains gains = effective_gains(cs, beams);
    const OracleResult oracle = grid_oracle(gains, cfg, 200);
    const SeeResult opt = icsi_seem(cs, cfg);
    REQUIRE(oracle.see > 0.0);
    CHECK(std::abs(opt.see - oracle.see) / oracle.see <= 0.02);
  }
}
