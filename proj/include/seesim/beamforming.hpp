#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "seesim/channel.hpp"

namespace seesim {

struct DegenerateChannelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when the projected eavesdropper channel vanishes and the AN
// direction cannot be steered; callers fall back to an_null_vector.
struct DegenerateAnError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BeamformerSet {
  std::vector<Eigen::VectorXcd> v_p;  // PBS signal beamformer, unit norm
  std::vector<Eigen::VectorXcd> v_s;  // CBS confidential-signal beamformer, unit norm
  std::vector<Eigen::VectorXcd> v_z;  // CBS AN beamformer, unit norm, null space of h_cc/h_cp
};

// Rank-one eavesdropper-side gains. gc/gf/gg generate the Hermitian PSD
// matrices c = gc gc^H, f = gf gf^H, g = gg gg^H used by the rate
// expressions; storing the generators keeps factorizations cheap.
struct EdGains {
  std::vector<Eigen::VectorXcd> gc;  // h_pe v_p
  std::vector<Eigen::VectorXcd> gf;  // h_ce v_s
  std::vector<Eigen::VectorXcd> gg;  // h_ce v_z

  Eigen::MatrixXcd c(int i) const { return gc[i] * gc[i].adjoint(); }
  Eigen::MatrixXcd f(int i) const { return gf[i] * gf[i].adjoint(); }
  Eigen::MatrixXcd g(int i) const { return gg[i] * gg[i].adjoint(); }
  int subcarriers() const { return static_cast<int>(gc.size()); }
};

// Scalar legitimate-side gains plus the eavesdropper gains of the
// realization the beamformers were built against.
struct EffectiveGains {
  Eigen::ArrayXd a;  // |h_pp v_p|^2
  Eigen::ArrayXd b;  // |h_pc v_p|^2
  Eigen::ArrayXd d;  // |h_cp v_s|^2
  Eigen::ArrayXd e;  // |h_cc v_s|^2
  Eigen::ArrayXd zleak_pu;  // |h_cp v_z|^2, ~0 by construction
  Eigen::ArrayXd zleak_cu;  // |h_cc v_z|^2, ~0 by construction
  EdGains ed;

  Eigen::MatrixXcd c(int i) const { return ed.c(i); }
  Eigen::MatrixXcd f(int i) const { return ed.f(i); }
  Eigen::MatrixXcd g(int i) const { return ed.g(i); }
  int subcarriers() const { return static_cast<int>(a.size()); }
};

// v = h^H / ||h||; matched filter, h v = ||h||
Eigen::VectorXcd mrt_vector(const Eigen::RowVectorXcd& h);

// Orthogonal projector onto the joint null space of h_cp and h_cc.
Eigen::MatrixXcd an_projector(const Eigen::RowVectorXcd& h_cp, const Eigen::RowVectorXcd& h_cc);

// Deterministic unit vector in the null space (fallback AN direction).
Eigen::VectorXcd an_null_vector(const Eigen::RowVectorXcd& h_cp, const Eigen::RowVectorXcd& h_cc);

// Unit AN direction steered at the eavesdropper: the dominant left-singular
// direction of Psi h_ce^H. Throws DegenerateAnError if that product is
// numerically zero.
Eigen::VectorXcd an_beamformer_icsi(const Eigen::RowVectorXcd& h_cp,
                                    const Eigen::RowVectorXcd& h_cc,
                                    const Eigen::MatrixXcd& h_ce);

// Isotropic unit AN direction within the null space (eavesdropper unknown).
Eigen::VectorXcd an_beamformer_scsi(const Eigen::RowVectorXcd& h_cp,
                                    const Eigen::RowVectorXcd& h_cc, RandomStream& rs);

BeamformerSet build_beamformers_icsi(const ChannelSet& cs);
BeamformerSet build_beamformers_scsi(const ChannelSet& cs, const SystemConfig& cfg,
                                     std::uint64_t trial_index);

EffectiveGains effective_gains(const ChannelSet& cs, const BeamformerSet& beams);

// Gains of an eavesdropper realization under fixed beamformers.
EdGains ed_gains(const EdChannels& ed, const BeamformerSet& beams);

}  // namespace seesim
