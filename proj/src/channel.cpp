#include "seesim/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "seesim/units.hpp"

namespace seesim {

namespace {

constexpr std::uint64_t kPurposeChannel = 0xC4A11ULL;
constexpr std::uint64_t kPurposeEdSample = 0xEDED5ULL;

Eigen::RowVectorXcd draw_row(RandomStream& rs, int n, double theta) {
  Eigen::RowVectorXcd h(n);
  for (int k = 0; k < n; ++k) h(k) = rs.next_cn(theta);
  return h;
}

Eigen::MatrixXcd draw_matrix(RandomStream& rs, int rows, int cols, double theta) {
  Eigen::MatrixXcd h(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) h(r, c) = rs.next_cn(theta);
  return h;
}

RandomStream link_stream(const SystemConfig& cfg, std::uint64_t purpose, std::uint64_t trial,
                         std::uint64_t sample, Link link, int subcarrier) {
  return RandomStream(RandomStream::derive_key(
      {cfg.seed, purpose, trial, sample, static_cast<std::uint64_t>(link),
       static_cast<std::uint64_t>(subcarrier)}));
}

double theta_linear(const SystemConfig& cfg, Link link) {
  return db_to_linear(path_loss_db(cfg.distance(link)));
}

}  // namespace

double path_loss_db(double distance_m) {
  if (distance_m <= 0.0) throw std::domain_error("path_loss_db: distance must be positive");
  return -34.5 - 38.0 * std::log10(distance_m);
}

ChannelSet draw_channel_set(const SystemConfig& cfg, std::uint64_t trial_index) {
  cfg.validate();
  const int I = cfg.subcarriers;
  ChannelSet cs;
  cs.sigma2 = cfg.noise_power_w();
  cs.h_pp.reserve(I);
  cs.h_pc.reserve(I);
  cs.h_cp.reserve(I);
  cs.h_cc.reserve(I);
  cs.ed.h_pe.reserve(I);
  cs.ed.h_ce.reserve(I);
  for (int i = 0; i < I; ++i) {
    auto rs_pp = link_stream(cfg, kPurposeChannel, trial_index, 0, Link::pp, i);
    auto rs_pc = link_stream(cfg, kPurposeChannel, trial_index, 0, Link::pc, i);
    auto rs_pe = link_stream(cfg, kPurposeChannel, trial_index, 0, Link::pe, i);
    auto rs_cp = link_stream(cfg, kPurposeChannel, trial_index, 0, Link::cp, i);
    auto rs_cc = link_stream(cfg, kPurposeChannel, trial_index, 0, Link::cc, i);
    auto rs_ce = link_stream(cfg, kPurposeChannel, trial_index, 0, Link::ce, i);
    cs.h_pp.push_back(draw_row(rs_pp, cfg.n_p, theta_linear(cfg, Link::pp)));
    cs.h_pc.push_back(draw_row(rs_pc, cfg.n_p, theta_linear(cfg, Link::pc)));
    cs.h_cp.push_back(draw_row(rs_cp, cfg.n_c, theta_linear(cfg, Link::cp)));
    cs.h_cc.push_back(draw_row(rs_cc, cfg.n_c, theta_linear(cfg, Link::cc)));
    cs.ed.h_pe.push_back(draw_matrix(rs_pe, cfg.n_e, cfg.n_p, theta_linear(cfg, Link::pe)));
    cs.ed.h_ce.push_back(draw_matrix(rs_ce, cfg.n_e, cfg.n_c, theta_linear(cfg, Link::ce)));
  }
  return cs;
}

EdChannels draw_ed_channels(const SystemConfig& cfg, std::uint64_t trial_index,
                            std::uint64_t sample_index) {
  const int I = cfg.subcarriers;
  EdChannels ed;
  ed.h_pe.reserve(I);
  ed.h_ce.reserve(I);
  for (int i = 0; i < I; ++i) {
    auto rs_pe = link_stream(cfg, kPurposeEdSample, trial_index, sample_index, Link::pe, i);
    auto rs_ce = link_stream(cfg, kPurposeEdSample, trial_index, sample_index, Link::ce, i);
    ed.h_pe.push_back(draw_matrix(rs_pe, cfg.n_e, cfg.n_p, theta_linear(cfg, Link::pe)));
    ed.h_ce.push_back(draw_matrix(rs_ce, cfg.n_e, cfg.n_c, theta_linear(cfg, Link::ce)));
  }
  return ed;
}

std::vector<EdChannels> draw_ed_sample_set(const SystemConfig& cfg, std::uint64_t trial_index) {
  std::vector<EdChannels> samples;
  samples.reserve(cfg.scsi_samples);
  for (int m = 0; m < cfg.scsi_samples; ++m)
    samples.push_back(draw_ed_channels(cfg, trial_index, static_cast<std::uint64_t>(m)));
  return samples;
}

}  // namespace seesim
