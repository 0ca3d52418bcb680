#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "seesim/config.hpp"
#include "seesim/rng.hpp"

namespace seesim {

// Eavesdropper-side links of one realization.
struct EdChannels {
  std::vector<Eigen::MatrixXcd> h_pe;  // per subcarrier, N_E x N_P
  std::vector<Eigen::MatrixXcd> h_ce;  // per subcarrier, N_E x N_C
};

// Per-subcarrier fading coefficients of the six links plus the common
// receiver noise power sigma^2 = delta_f * N0.
struct ChannelSet {
  std::vector<Eigen::RowVectorXcd> h_pp;  // 1 x N_P
  std::vector<Eigen::RowVectorXcd> h_pc;  // 1 x N_P
  std::vector<Eigen::RowVectorXcd> h_cp;  // 1 x N_C
  std::vector<Eigen::RowVectorXcd> h_cc;  // 1 x N_C
  EdChannels ed;
  double sigma2 = 0.0;

  int subcarriers() const { return static_cast<int>(h_pp.size()); }
};

// -34.5 - 38*log10(d[m])
double path_loss_db(double distance_m);

// Rayleigh fading: i.i.d. CN(0, theta) entries with theta the linear-scale
// path loss of the link; independent across links and subcarriers and fully
// determined by (cfg.seed, trial_index).
ChannelSet draw_channel_set(const SystemConfig& cfg, std::uint64_t trial_index);

// Independent eavesdropper-link draws used as the expectation sample set by
// the statistical-CSI scheme. When cfg.scsi_expect_pbs_link is false the
// caller substitutes the true h_pe afterwards.
EdChannels draw_ed_channels(const SystemConfig& cfg, std::uint64_t trial_index,
                            std::uint64_t sample_index);

std::vector<EdChannels> draw_ed_sample_set(const SystemConfig& cfg, std::uint64_t trial_index);

}  // namespace seesim
