#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace seesim::barrier {

// Concave maximization over {x : lin_a x <= lin_ub, F_k(x) >= 0} with
// concave F_k, via a log-barrier path with damped Newton ascent per stage.
struct Problem {
  int dim = 0;

  // returns phi(x); fills grad/hess when non-null
  std::function<double(const Eigen::VectorXd&, Eigen::VectorXd*, Eigen::MatrixXd*)> objective;

  Eigen::MatrixXd lin_a;  // rows a^T with a^T x <= ub
  Eigen::VectorXd lin_ub;

  int num_nonlinear = 0;
  // fills val (size K); fills grad rows (K x dim) and hess list when non-null
  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&, Eigen::MatrixXd*,
                     std::vector<Eigen::MatrixXd>*)>
      nonlinear;
};

struct Options {
  double gap_tol = 1e-6;  // stop once (number of constraints) / t <= gap_tol
  double t0 = 1.0;
  double mu = 10.0;
  int max_newton_per_stage = 60;
  double newton_tol = 1e-11;  // half squared Newton decrement
  double kkt_tol = 1e-7;      // final-stage stationarity, scaled by t
  // optional early exit: stop as soon as phi(x) >= target (used by the
  // slack-maximization phase)
  bool has_target = false;
  double target = 0.0;
};

struct Result {
  Eigen::VectorXd x;
  double objective = 0.0;
  double gap = 0.0;
  double kkt_residual = 0.0;
  int newton_steps = 0;
  bool ok = false;
};

// Minimum constraint slack at x (negative means infeasible).
double min_slack(const Problem& p, const Eigen::VectorXd& x);

// x0 must be strictly feasible.
Result maximize(const Problem& p, Eigen::VectorXd x0, const Options& opts = {});

}  // namespace seesim::barrier
