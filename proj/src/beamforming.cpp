#include "seesim/beamforming.hpp"

#include <cmath>

namespace seesim {

namespace {

constexpr double kNullTol = 1e-12;
constexpr std::uint64_t kPurposeAnScsi = 0xA150ULL;

}  // namespace

Eigen::VectorXcd mrt_vector(const Eigen::RowVectorXcd& h) {
  const double n = h.norm();
  if (n <= 0.0) throw DegenerateChannelError("mrt_vector: zero channel");
  return h.adjoint() / n;
}

Eigen::MatrixXcd an_projector(const Eigen::RowVectorXcd& h_cp, const Eigen::RowVectorXcd& h_cc) {
  const int n = static_cast<int>(h_cp.size());
  if (n < 3) throw std::invalid_argument("an_projector: need at least 3 CBS antennas");
  if (h_cc.size() != n) throw std::invalid_argument("an_projector: dimension mismatch");
  const double scale = std::max(h_cp.norm(), h_cc.norm());
  if (scale <= 0.0) throw DegenerateChannelError("an_projector: both rows zero");

  // Orthonormalize the stacked rows, dropping numerically dependent ones.
  Eigen::MatrixXcd stacked(2, n);
  stacked.row(0) = h_cp;
  stacked.row(1) = h_cc;
  Eigen::MatrixXcd basis(n, 0);
  for (int r = 0; r < 2; ++r) {
    Eigen::VectorXcd v = stacked.row(r).adjoint();
    if (basis.cols() > 0) v -= basis * (basis.adjoint() * v);
    const double nv = v.norm();
    if (nv > kNullTol * scale) {
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = v / nv;
    }
  }
  return Eigen::MatrixXcd::Identity(n, n) - basis * basis.adjoint();
}

Eigen::VectorXcd an_null_vector(const Eigen::RowVectorXcd& h_cp, const Eigen::RowVectorXcd& h_cc) {
  const Eigen::MatrixXcd psi = an_projector(h_cp, h_cc);
  // Eigenvectors of the projector with eigenvalue 1 span the null space;
  // the eigensolver orders eigenvalues ascending, so the last column works.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(psi);
  Eigen::VectorXcd v = es.eigenvectors().col(psi.cols() - 1);
  return v / v.norm();
}

Eigen::VectorXcd an_beamformer_icsi(const Eigen::RowVectorXcd& h_cp,
                                    const Eigen::RowVectorXcd& h_cc,
                                    const Eigen::MatrixXcd& h_ce) {
  const Eigen::MatrixXcd psi = an_projector(h_cp, h_cc);
  const Eigen::MatrixXcd projected = psi * h_ce.adjoint();  // N_C x N_E
  const double scale = h_ce.norm();
  if (projected.norm() <= kNullTol * std::max(scale, 1e-300)) {
    throw DegenerateAnError("an_beamformer_icsi: projected eavesdropper channel is zero");
  }
  if (projected.cols() == 1) {
    return projected.col(0) / projected.col(0).norm();
  }
  // Dominant left-singular direction of the projected channel.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(projected, Eigen::ComputeThinU);
  Eigen::VectorXcd v = svd.matrixU().col(0);
  return v / v.norm();
}

Eigen::VectorXcd an_beamformer_scsi(const Eigen::RowVectorXcd& h_cp,
                                    const Eigen::RowVectorXcd& h_cc, RandomStream& rs) {
  const Eigen::MatrixXcd psi = an_projector(h_cp, h_cc);
  const int n = static_cast<int>(psi.rows());
  for (int attempt = 0; attempt < 16; ++attempt) {
    Eigen::VectorXcd w(n);
    for (int k = 0; k < n; ++k) w(k) = rs.next_cn(1.0);
    Eigen::VectorXcd v = psi * w;
    const double nv = v.norm();
    if (nv > 1e-9) return v / nv;
  }
  throw DegenerateAnError("an_beamformer_scsi: could not draw a null-space direction");
}

BeamformerSet build_beamformers_icsi(const ChannelSet& cs) {
  const int I = cs.subcarriers();
  BeamformerSet beams;
  beams.v_p.reserve(I);
  beams.v_s.reserve(I);
  beams.v_z.reserve(I);
  for (int i = 0; i < I; ++i) {
    beams.v_p.push_back(mrt_vector(cs.h_pp[i]));
    beams.v_s.push_back(mrt_vector(cs.h_cc[i]));
    try {
      beams.v_z.push_back(an_beamformer_icsi(cs.h_cp[i], cs.h_cc[i], cs.ed.h_ce[i]));
    } catch (const DegenerateAnError&) {
      beams.v_z.push_back(an_null_vector(cs.h_cp[i], cs.h_cc[i]));
    }
  }
  return beams;
}

BeamformerSet build_beamformers_scsi(const ChannelSet& cs, const SystemConfig& cfg,
                                     std::uint64_t trial_index) {
  const int I = cs.subcarriers();
  BeamformerSet beams;
  beams.v_p.reserve(I);
  beams.v_s.reserve(I);
  beams.v_z.reserve(I);
  for (int i = 0; i < I; ++i) {
    beams.v_p.push_back(mrt_vector(cs.h_pp[i]));
    beams.v_s.push_back(mrt_vector(cs.h_cc[i]));
    RandomStream rs(RandomStream::derive_key(
        {cfg.seed, kPurposeAnScsi, trial_index, static_cast<std::uint64_t>(i)}));
    beams.v_z.push_back(an_beamformer_scsi(cs.h_cp[i], cs.h_cc[i], rs));
  }
  return beams;
}

EffectiveGains effective_gains(const ChannelSet& cs, const BeamformerSet& beams) {
  const int I = cs.subcarriers();
  EffectiveGains g;
  g.a.resize(I);
  g.b.resize(I);
  g.d.resize(I);
  g.e.resize(I);
  g.zleak_pu.resize(I);
  g.zleak_cu.resize(I);
  for (int i = 0; i < I; ++i) {
    g.a(i) = std::norm((cs.h_pp[i] * beams.v_p[i]).value());
    g.b(i) = std::norm((cs.h_pc[i] * beams.v_p[i]).value());
    g.d(i) = std::norm((cs.h_cp[i] * beams.v_s[i]).value());
    g.e(i) = std::norm((cs.h_cc[i] * beams.v_s[i]).value());
    g.zleak_pu(i) = std::norm((cs.h_cp[i] * beams.v_z[i]).value());
    g.zleak_cu(i) = std::norm((cs.h_cc[i] * beams.v_z[i]).value());
  }
  g.ed = ed_gains(cs.ed, beams);
  return g;
}

EdGains ed_gains(const EdChannels& ed, const BeamformerSet& beams) {
  const int I = static_cast<int>(ed.h_pe.size());
  EdGains out;
  out.gc.reserve(I);
  out.gf.reserve(I);
  out.gg.reserve(I);
  for (int i = 0; i < I; ++i) {
    out.gc.push_back(ed.h_pe[i] * beams.v_p[i]);
    out.gf.push_back(ed.h_ce[i] * beams.v_s[i]);
    out.gg.push_back(ed.h_ce[i] * beams.v_z[i]);
  }
  return out;
}

}  // namespace seesim
