#include "seesim/dc_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace seesim {

namespace {

constexpr double kLog2e = std::numbers::log2e;

struct ScalarTerm {
  double kp = 0.0, ks = 0.0;  // log2(kp*P_p + ks*P_s + sigma2)
};

double scalar_value(const ScalarTerm& t, double sigma2, const Eigen::Vector3d& pw) {
  return std::log2(t.kp * pw(0) + t.ks * pw(1) + sigma2);
}

Eigen::Vector3d scalar_grad(const ScalarTerm& t, double sigma2, const Eigen::Vector3d& pw) {
  const double den = t.kp * pw(0) + t.ks * pw(1) + sigma2;
  return Eigen::Vector3d(t.kp, t.ks, 0.0) * (kLog2e / den);
}

Eigen::Matrix3d scalar_hess(const ScalarTerm& t, double sigma2, const Eigen::Vector3d& pw) {
  const double den = t.kp * pw(0) + t.ks * pw(1) + sigma2;
  const Eigen::Vector3d k(t.kp, t.ks, 0.0);
  return -(kLog2e / (den * den)) * (k * k.transpose());
}

}  // namespace

DcFunctions::DcFunctions(const EffectiveGains& gains, double sigma2)
    : DcFunctions(gains, std::vector<EdGains>{gains.ed}, sigma2) {}

DcFunctions::DcFunctions(const EffectiveGains& gains, std::vector<EdGains> ed_samples,
                         double sigma2)
    : legit_{gains.a, gains.b, gains.d, gains.e}, samples_(std::move(ed_samples)),
      sigma2_(sigma2) {
  if (samples_.empty()) throw std::invalid_argument("DcFunctions: empty eavesdropper sample set");
  if (sigma2_ <= 0.0) throw std::invalid_argument("DcFunctions: sigma2 must be positive");
}

DcFunctions::MatEval DcFunctions::mat_term(int i, const Eigen::Vector3d& pw, bool with_c,
                                           bool with_f, bool with_g, int order) const {
  MatEval out;
  const int ne = static_cast<int>(samples_.front().gc[i].size());
  const bool sel[3] = {with_c, with_f, with_g};
  Eigen::MatrixXcd om(ne, ne);
  for (const EdGains& sample : samples_) {
    const Eigen::VectorXcd* gen[3] = {&sample.gc[i], &sample.gf[i], &sample.gg[i]};
    om = sigma2_ * Eigen::MatrixXcd::Identity(ne, ne);
    for (int t = 0; t < 3; ++t)
      if (sel[t] && pw(t) != 0.0) om.noalias() += pw(t) * (*gen[t] * gen[t]->adjoint());
    Eigen::LLT<Eigen::MatrixXcd> llt(om);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("DcFunctions: Omega lost positive definiteness");
    double ld = 0.0;
    for (int k = 0; k < ne; ++k) ld += std::log(std::real(llt.matrixLLT()(k, k)));
    out.value += 2.0 * ld * kLog2e;
    if (order >= 1) {
      Eigen::VectorXcd sol[3];
      for (int t = 0; t < 3; ++t)
        if (sel[t]) sol[t] = llt.solve(*gen[t]);
      for (int t = 0; t < 3; ++t)
        if (sel[t]) out.grad(t) += kLog2e * std::real(gen[t]->dot(sol[t]));
      if (order >= 2) {
        for (int t = 0; t < 3; ++t) {
          if (!sel[t]) continue;
          for (int u = t; u < 3; ++u) {
            if (!sel[u]) continue;
            const double v = -kLog2e * std::norm(gen[t]->dot(sol[u]));
            out.hess(t, u) += v;
            if (u != t) out.hess(u, t) += v;
          }
        }
      }
    }
  }
  const double inv_m = 1.0 / static_cast<double>(samples_.size());
  out.value *= inv_m;
  out.grad *= inv_m;
  out.hess *= inv_m;
  return out;
}

namespace {

// scalar-term coefficients per pair
ScalarTerm minuend_scalar(DcFunctions::Pair pair, double a, double b, double d, double e) {
  switch (pair) {
    case DcFunctions::Pair::CuSecrecy: return {b, e};
    case DcFunctions::Pair::PuSecrecy: return {a, d};
    case DcFunctions::Pair::CuRate: return {b, e};
  }
  return {};
}

ScalarTerm subtrahend_scalar(DcFunctions::Pair pair, double b, double d) {
  switch (pair) {
    case DcFunctions::Pair::CuSecrecy: return {b, 0.0};
    case DcFunctions::Pair::PuSecrecy: return {0.0, d};
    case DcFunctions::Pair::CuRate: return {b, 0.0};
  }
  return {};
}

}  // namespace

double DcFunctions::minuend(Pair pair, int i, const Eigen::Vector3d& pw) const {
  const ScalarTerm st = minuend_scalar(pair, legit_.a(i), legit_.b(i), legit_.d(i), legit_.e(i));
  double v = scalar_value(st, sigma2_, pw);
  if (pair == Pair::CuSecrecy) v += mat_term(i, pw, true, false, true, 0).value;
  if (pair == Pair::PuSecrecy) v += mat_term(i, pw, false, true, true, 0).value;
  return v;
}

double DcFunctions::subtrahend(Pair pair, int i, const Eigen::Vector3d& pw) const {
  const ScalarTerm st = subtrahend_scalar(pair, legit_.b(i), legit_.d(i));
  double v = scalar_value(st, sigma2_, pw);
  if (pair != Pair::CuRate) v += mat_term(i, pw, true, true, true, 0).value;
  return v;
}

double DcFunctions::pair_value(Pair pair, int i, const Eigen::Vector3d& pw) const {
  return minuend(pair, i, pw) - subtrahend(pair, i, pw);
}

Eigen::Vector3d DcFunctions::grad_minuend(Pair pair, int i, const Eigen::Vector3d& pw) const {
  const ScalarTerm st = minuend_scalar(pair, legit_.a(i), legit_.b(i), legit_.d(i), legit_.e(i));
  Eigen::Vector3d g = scalar_grad(st, sigma2_, pw);
  if (pair == Pair::CuSecrecy) g += mat_term(i, pw, true, false, true, 1).grad;
  if (pair == Pair::PuSecrecy) g += mat_term(i, pw, false, true, true, 1).grad;
  return g;
}

Eigen::Vector3d DcFunctions::grad_subtrahend(Pair pair, int i, const Eigen::Vector3d& pw) const {
  const ScalarTerm st = subtrahend_scalar(pair, legit_.b(i), legit_.d(i));
  Eigen::Vector3d g = scalar_grad(st, sigma2_, pw);
  if (pair != Pair::CuRate) g += mat_term(i, pw, true, true, true, 1).grad;
  return g;
}

Eigen::Matrix3d DcFunctions::hess_minuend(Pair pair, int i, const Eigen::Vector3d& pw) const {
  const ScalarTerm st = minuend_scalar(pair, legit_.a(i), legit_.b(i), legit_.d(i), legit_.e(i));
  Eigen::Matrix3d h = scalar_hess(st, sigma2_, pw);
  if (pair == Pair::CuSecrecy) h += mat_term(i, pw, true, false, true, 2).hess;
  if (pair == Pair::PuSecrecy) h += mat_term(i, pw, false, true, true, 2).hess;
  return h;
}

DcFunctions::Components DcFunctions::eval_components(int i, const Eigen::Vector3d& pw) const {
  return {minuend(Pair::CuSecrecy, i, pw), subtrahend(Pair::CuSecrecy, i, pw),
          minuend(Pair::PuSecrecy, i, pw), subtrahend(Pair::PuSecrecy, i, pw)};
}

DcFunctions::Anchor DcFunctions::make_anchor(const PowerAllocation& alloc) const {
  const int I = subcarriers();
  Anchor anchor;
  anchor.pw.resize(I);
  anchor.omega_logdet.resize(I);
  anchor.omega_trace.resize(I);
  for (int i = 0; i < I; ++i) {
    anchor.pw[i] = alloc.at(i);
    const MatEval me = mat_term(i, anchor.pw[i], true, true, true, 1);
    anchor.omega_logdet[i] = me.value;
    anchor.omega_trace[i] = me.grad;
  }
  return anchor;
}

double DcFunctions::taylor_subtrahend(Pair pair, const Anchor& anchor, int i,
                                      const Eigen::Vector3d& pw) const {
  const ScalarTerm st = subtrahend_scalar(pair, legit_.b(i), legit_.d(i));
  const Eigen::Vector3d& pw0 = anchor.pw[i];
  const Eigen::Vector3d delta = pw - pw0;
  double v = scalar_value(st, sigma2_, pw0) + scalar_grad(st, sigma2_, pw0).dot(delta);
  if (pair != Pair::CuRate) v += anchor.omega_logdet[i] + anchor.omega_trace[i].dot(delta);
  return v;
}

Eigen::Vector3d DcFunctions::taylor_grad(Pair pair, const Anchor& anchor, int i) const {
  const ScalarTerm st = subtrahend_scalar(pair, legit_.b(i), legit_.d(i));
  Eigen::Vector3d g = scalar_grad(st, sigma2_, anchor.pw[i]);
  if (pair != Pair::CuRate) g += anchor.omega_trace[i];
  return g;
}

DcFunctions::LinEval DcFunctions::eval_linearized(Pair pair, const Anchor& anchor, int i,
                                                  const Eigen::Vector3d& pw,
                                                  bool need_hess) const {
  LinEval out;
  const ScalarTerm st = minuend_scalar(pair, legit_.a(i), legit_.b(i), legit_.d(i), legit_.e(i));
  out.value = scalar_value(st, sigma2_, pw) - taylor_subtrahend(pair, anchor, i, pw);
  out.grad = scalar_grad(st, sigma2_, pw) - taylor_grad(pair, anchor, i);
  out.hess = need_hess ? scalar_hess(st, sigma2_, pw) : Eigen::Matrix3d::Zero();
  if (pair != Pair::CuRate) {
    const MatEval me = mat_term(i, pw, pair == Pair::CuSecrecy, pair == Pair::PuSecrecy, true,
                                need_hess ? 2 : 1);
    out.value += me.value;
    out.grad += me.grad;
    if (need_hess) out.hess += me.hess;
  }
  return out;
}

}  // namespace seesim
