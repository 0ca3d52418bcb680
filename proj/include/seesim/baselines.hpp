#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "seesim/optimizer.hpp"

namespace seesim {

enum class SchemeId {
  IcsiSeem,
  ScsiSeem,
  Srm,
  Eem,
  SeemNoAn,
  CbsOnly,
  PbsOnly,
  Equal,
};

const char* scheme_name(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);
std::vector<SchemeId> all_schemes();

// One scheme on one channel realization. Secrecy-rate maximization runs the
// inner tier once at eta = 0; the energy-efficiency baseline runs the outer
// tier on the user-rate ratio; the restricted schemes pin power blocks.
SeeResult run_scheme(const ChannelSet& cs, const SystemConfig& cfg, SchemeId scheme,
                     std::uint64_t trial_index, const OptimizerOptions& opts = {});

struct SchemeRunOptions {
  // warm starts carried from a neighboring experiment point, per scheme
  std::map<SchemeId, PowerAllocation> carry;
  double dominance_tol = 1e-9;
  int polish_rounds = 2;
  double subproblem_tol = 1e-6;
};

// Paired run over one channel realization. Restricted schemes run first and
// their allocations seed the joint schemes, so the nested-feasible-set
// orderings that hold at true optima also hold for the computed points.
std::map<SchemeId, SeeResult> run_schemes(const ChannelSet& cs, const SystemConfig& cfg,
                                          const std::vector<SchemeId>& schemes,
                                          std::uint64_t trial_index,
                                          const SchemeRunOptions& opts = {});

}  // namespace seesim
