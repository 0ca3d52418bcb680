#pragma once

#include <Eigen/Dense>
#include <vector>

#include "seesim/allocation.hpp"
#include "seesim/beamforming.hpp"

namespace seesim {

// Concave component functions of the subtractive problems and their
// first-order machinery. Each constrained expression is a difference
// phi1 - phi2 of concave terms; phi2 is replaced by its tangent plane at an
// anchor to convexify the problem. With several eavesdropper realizations
// bound, every log-det term is the average over the fixed sample set, so
// tangency and majorization hold exactly for the averaged functions.
class DcFunctions {
 public:
  enum class Pair {
    CuSecrecy,  // f1 - f2: cognitive-user secrecy rate
    PuSecrecy,  // g1 - g2: primary-user secrecy rate
    CuRate,     // cognitive-user rate alone (EE baseline numerator)
  };

  DcFunctions(const EffectiveGains& gains, double sigma2);
  DcFunctions(const EffectiveGains& gains, std::vector<EdGains> ed_samples, double sigma2);

  int subcarriers() const { return static_cast<int>(legit_.a.size()); }
  int samples() const { return static_cast<int>(samples_.size()); }
  double sigma2() const { return sigma2_; }
  const Eigen::ArrayXd& gain_e() const { return legit_.e; }

  // pw = (P_p, P_s, P_z) in watts
  double minuend(Pair pair, int i, const Eigen::Vector3d& pw) const;
  double subtrahend(Pair pair, int i, const Eigen::Vector3d& pw) const;
  double pair_value(Pair pair, int i, const Eigen::Vector3d& pw) const;

  Eigen::Vector3d grad_minuend(Pair pair, int i, const Eigen::Vector3d& pw) const;
  Eigen::Vector3d grad_subtrahend(Pair pair, int i, const Eigen::Vector3d& pw) const;
  Eigen::Matrix3d hess_minuend(Pair pair, int i, const Eigen::Vector3d& pw) const;

  struct Components {
    double f1, f2, g1, g2;
  };
  Components eval_components(int i, const Eigen::Vector3d& pw) const;

  Eigen::Vector3d grad_f2(int i, const Eigen::Vector3d& pw) const {
    return grad_subtrahend(Pair::CuSecrecy, i, pw);
  }
  Eigen::Vector3d grad_g2(int i, const Eigen::Vector3d& pw) const {
    return grad_subtrahend(Pair::PuSecrecy, i, pw);
  }

  // Linearization anchor with the shared Omega factorization work cached:
  // one factorization per (subcarrier, sample) feeds the scalar and all
  // three trace coefficients of both subtrahends.
  struct Anchor {
    std::vector<Eigen::Vector3d> pw;
    std::vector<double> omega_logdet;          // mean log2|Omega|
    std::vector<Eigen::Vector3d> omega_trace;  // mean tr([c f g] Omega^-1) * log2(e)
  };
  Anchor make_anchor(const PowerAllocation& alloc) const;

  // Tangent-plane upper bound of the subtrahend at the anchor.
  double taylor_subtrahend(Pair pair, const Anchor& anchor, int i,
                           const Eigen::Vector3d& pw) const;
  Eigen::Vector3d taylor_grad(Pair pair, const Anchor& anchor, int i) const;

  double taylor_f2(const Anchor& anchor, int i, const Eigen::Vector3d& pw) const {
    return taylor_subtrahend(Pair::CuSecrecy, anchor, i, pw);
  }
  double taylor_g2(const Anchor& anchor, int i, const Eigen::Vector3d& pw) const {
    return taylor_subtrahend(Pair::PuSecrecy, anchor, i, pw);
  }

  // minuend(pw) - taylor_subtrahend(pw): the concave surrogate of the pair.
  struct LinEval {
    double value;
    Eigen::Vector3d grad;
    Eigen::Matrix3d hess;
  };
  LinEval eval_linearized(Pair pair, const Anchor& anchor, int i, const Eigen::Vector3d& pw,
                          bool need_hess) const;

 private:
  struct Legit {
    Eigen::ArrayXd a, b, d, e;
  };

  struct MatEval {
    double value = 0.0;
    Eigen::Vector3d grad = Eigen::Vector3d::Zero();
    Eigen::Matrix3d hess = Eigen::Matrix3d::Zero();
  };
  // mean over samples of log2|sigma2 I + sum of selected rank-one terms|
  MatEval mat_term(int i, const Eigen::Vector3d& pw, bool with_c, bool with_f, bool with_g,
                   int order) const;

  Legit legit_;
  std::vector<EdGains> samples_;
  double sigma2_;
};

}  // namespace seesim
