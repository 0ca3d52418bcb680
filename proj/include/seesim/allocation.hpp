#pragma once

#include <Eigen/Dense>

namespace seesim {

// Per-subcarrier transmit powers in watts.
struct PowerAllocation {
  Eigen::VectorXd p;  // PBS signal
  Eigen::VectorXd s;  // CBS confidential signal
  Eigen::VectorXd z;  // CBS artificial noise

  static PowerAllocation zero(int subcarriers) {
    return {Eigen::VectorXd::Zero(subcarriers), Eigen::VectorXd::Zero(subcarriers),
            Eigen::VectorXd::Zero(subcarriers)};
  }

  int subcarriers() const { return static_cast<int>(p.size()); }
  double pbs_sum() const { return p.sum(); }
  double cbs_sum() const { return s.sum() + z.sum(); }
  Eigen::Vector3d at(int i) const { return {p(i), s(i), z(i)}; }

  void clamp_negatives(double tol = 0.0) {
    p = p.cwiseMax(-tol).cwiseMax(0.0);
    s = s.cwiseMax(-tol).cwiseMax(0.0);
    z = z.cwiseMax(-tol).cwiseMax(0.0);
  }

  bool nonnegative(double tol = 0.0) const {
    return p.minCoeff() >= -tol && s.minCoeff() >= -tol && z.minCoeff() >= -tol;
  }
};

}  // namespace seesim
