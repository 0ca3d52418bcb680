#pragma once

#include <functional>

#include "seesim/baselines.hpp"
#include "seesim/experiment.hpp"

namespace seesim::test {

inline SystemConfig desk_config(int subcarriers = 4, int n_p = 4, int n_c = 4, int n_e = 2) {
  SystemConfig cfg;
  cfg.subcarriers = subcarriers;
  cfg.n_p = n_p;
  cfg.n_c = n_c;
  cfg.n_e = n_e;
  cfg.seed = 20240917;
  return cfg;
}

struct Instance {
  ChannelSet cs;
  BeamformerSet beams;
  EffectiveGains gains;
};

inline Instance make_instance(const SystemConfig& cfg, std::uint64_t trial) {
  Instance inst;
  inst.cs = draw_channel_set(cfg, trial);
  inst.beams = build_beamformers_icsi(inst.cs);
  inst.gains = effective_gains(inst.cs, inst.beams);
  return inst;
}

// central finite difference of a scalar function of (P_p, P_s, P_z)
inline Eigen::Vector3d fd_gradient(const std::function<double(const Eigen::Vector3d&)>& f,
                                   const Eigen::Vector3d& pw, double scale) {
  Eigen::Vector3d g;
  for (int t = 0; t < 3; ++t) {
    const double h = 1e-6 * std::max(scale, std::abs(pw(t)));
    Eigen::Vector3d lo = pw, hi = pw;
    lo(t) = std::max(pw(t) - h, 0.0);
    hi(t) = pw(t) + h;
    g(t) = (f(hi) - f(lo)) / (hi(t) - lo(t));
  }
  return g;
}

inline RandomStream test_stream(std::uint64_t tag) {
  return RandomStream(RandomStream::derive_key({0xDEADBEEF, tag}));
}

}  // namespace seesim::test
