#pragma once

#include <array>
#include <cstdint>

#include "seesim/units.hpp"

namespace seesim {

enum class Link : int { pp = 0, pc = 1, pe = 2, cp = 3, cc = 4, ce = 5 };
inline constexpr int kNumLinks = 6;

const char* link_name(Link link);

// Scenario parameters. Powers are stored in linear watts; dBm and dB appear
// only at the config/CLI boundary.
struct SystemConfig {
  int subcarriers = 4;  // I
  int n_p = 4;          // PBS antennas
  int n_c = 4;          // CBS antennas (needs >= 3 for a nonempty AN null space)
  int n_e = 2;          // eavesdropper antennas

  double p_pbs_total_w = dbm_to_watt(30.0);
  double p_cbs_total_w = dbm_to_watt(40.0);
  double p_b_w = dbm_to_watt(40.0);  // CBS circuit power

  double delta_f_hz = 10e6;
  double n0_w_per_hz = db_to_linear(-204.0);  // -174 dBm/Hz

  double r_cu_min = 0.0;  // bits/s/Hz
  double r_pu_min = 0.0;  // bits/s/Hz

  std::array<double, kNumLinks> distance_m{500.0, 500.0, 500.0, 500.0, 500.0, 500.0};

  double epsilon = 1e-3;  // convergence threshold for both iteration tiers
  int m_max = 100;        // outer iteration cap
  int n_max = 100;        // inner iteration cap

  int scsi_samples = 16;
  bool scsi_expect_pbs_link = true;  // expectation covers h_pe as well as h_ce

  // per-subcarrier PBS power used by the fixed-PBS allocation schemes
  double p_p_fixed_w = dbm_to_watt(10.0);

  std::uint64_t seed = 1;

  double noise_power_w() const { return delta_f_hz * n0_w_per_hz; }
  double distance(Link link) const { return distance_m[static_cast<int>(link)]; }

  // throws std::invalid_argument when a field is out of range
  void validate() const;
};

}  // namespace seesim
