#include "seesim/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace seesim {

namespace {

constexpr double kLog2e = std::numbers::log2e;

// sigma2 I + pp*gc gc^H + ps*gf gf^H + pz*gg gg^H
Eigen::MatrixXcd omega(const EdGains& ed, double sigma2, int i, double pp, double ps, double pz,
                       bool with_c, bool with_f, bool with_g) {
  const int ne = static_cast<int>(ed.gc[i].size());
  Eigen::MatrixXcd m = sigma2 * Eigen::MatrixXcd::Identity(ne, ne);
  if (with_c && pp != 0.0) m.noalias() += pp * (ed.gc[i] * ed.gc[i].adjoint());
  if (with_f && ps != 0.0) m.noalias() += ps * (ed.gf[i] * ed.gf[i].adjoint());
  if (with_g && pz != 0.0) m.noalias() += pz * (ed.gg[i] * ed.gg[i].adjoint());
  return m;
}

}  // namespace

double logdet2_hermitian(const Eigen::MatrixXcd& m) {
  Eigen::LLT<Eigen::MatrixXcd> llt(m);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("logdet2_hermitian: matrix is not positive definite");
  double acc = 0.0;
  const auto& l = llt.matrixLLT();
  for (int k = 0; k < m.rows(); ++k) acc += std::log(std::real(l(k, k)));
  return 2.0 * acc * kLog2e;
}

double sinr_pu(const EffectiveGains& g, double sigma2, int i, double pp, double ps, double pz) {
  return g.a(i) * pp / (g.d(i) * ps + g.zleak_pu(i) * pz + sigma2);
}

double sinr_cu(const EffectiveGains& g, double sigma2, int i, double pp, double ps, double pz) {
  return g.e(i) * ps / (g.b(i) * pp + g.zleak_cu(i) * pz + sigma2);
}

double rate_pp(const EffectiveGains& g, double sigma2, int i, double pp, double ps, double pz) {
  return std::log2(1.0 + sinr_pu(g, sigma2, i, pp, ps, pz));
}

double rate_cc(const EffectiveGains& g, double sigma2, int i, double pp, double ps, double pz) {
  return std::log2(1.0 + sinr_cu(g, sigma2, i, pp, ps, pz));
}

double rate_pe(const EdGains& ed, double sigma2, int i, double pp, double ps, double pz) {
  const double num = logdet2_hermitian(omega(ed, sigma2, i, pp, ps, pz, true, true, true));
  const double den = logdet2_hermitian(omega(ed, sigma2, i, pp, ps, pz, false, true, true));
  return num - den;
}

double rate_ce(const EdGains& ed, double sigma2, int i, double pp, double ps, double pz) {
  const double num = logdet2_hermitian(omega(ed, sigma2, i, pp, ps, pz, true, true, true));
  const double den = logdet2_hermitian(omega(ed, sigma2, i, pp, ps, pz, true, false, true));
  return num - den;
}

double expected_rate_pe(std::span<const EdGains> samples, double sigma2, int i, double pp,
                        double ps, double pz) {
  if (samples.empty()) throw std::invalid_argument("expected_rate_pe: empty sample set");
  double acc = 0.0;
  for (const auto& s : samples) acc += rate_pe(s, sigma2, i, pp, ps, pz);
  return acc / static_cast<double>(samples.size());
}

double expected_rate_ce(std::span<const EdGains> samples, double sigma2, int i, double pp,
                        double ps, double pz) {
  if (samples.empty()) throw std::invalid_argument("expected_rate_ce: empty sample set");
  double acc = 0.0;
  for (const auto& s : samples) acc += rate_ce(s, sigma2, i, pp, ps, pz);
  return acc / static_cast<double>(samples.size());
}

double total_power(const PowerAllocation& alloc, double p_b) {
  return alloc.cbs_sum() + p_b;
}

namespace {

RateBundle assemble(const EffectiveGains& g, double sigma2, const PowerAllocation& alloc,
                    double p_b, const Eigen::VectorXd& r_pe, const Eigen::VectorXd& r_ce) {
  const int I = g.subcarriers();
  RateBundle rb;
  rb.r_pp.resize(I);
  rb.r_cc.resize(I);
  rb.r_pe = r_pe;
  rb.r_ce = r_ce;
  rb.sr_cu.resize(I);
  rb.sr_pu.resize(I);
  for (int i = 0; i < I; ++i) {
    rb.r_pp(i) = rate_pp(g, sigma2, i, alloc.p(i), alloc.s(i), alloc.z(i));
    rb.r_cc(i) = rate_cc(g, sigma2, i, alloc.p(i), alloc.s(i), alloc.z(i));
    rb.sr_cu(i) = std::max(rb.r_cc(i) - rb.r_ce(i), 0.0);
    rb.sr_pu(i) = std::max(rb.r_pp(i) - rb.r_pe(i), 0.0);
  }
  rb.r_sec = rb.sr_cu.sum();
  rb.p_tot = total_power(alloc, p_b);
  rb.see = rb.r_sec / rb.p_tot;
  return rb;
}

}  // namespace

RateBundle see_bundle(const EffectiveGains& g, double sigma2, const PowerAllocation& alloc,
                      double p_b) {
  const int I = g.subcarriers();
  Eigen::VectorXd r_pe(I), r_ce(I);
  for (int i = 0; i < I; ++i) {
    r_pe(i) = rate_pe(g.ed, sigma2, i, alloc.p(i), alloc.s(i), alloc.z(i));
    r_ce(i) = rate_ce(g.ed, sigma2, i, alloc.p(i), alloc.s(i), alloc.z(i));
  }
  return assemble(g, sigma2, alloc, p_b, r_pe, r_ce);
}

RateBundle see_bundle_expected(const EffectiveGains& g, std::span<const EdGains> samples,
                               double sigma2, const PowerAllocation& alloc, double p_b) {
  const int I = g.subcarriers();
  Eigen::VectorXd r_pe(I), r_ce(I);
  for (int i = 0; i < I; ++i) {
    r_pe(i) = expected_rate_pe(samples, sigma2, i, alloc.p(i), alloc.s(i), alloc.z(i));
    r_ce(i) = expected_rate_ce(samples, sigma2, i, alloc.p(i), alloc.s(i), alloc.z(i));
  }
  return assemble(g, sigma2, alloc, p_b, r_pe, r_ce);
}

}  // namespace seesim
