#include "seesim/barrier.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace seesim::barrier {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Workspace {
  Eigen::VectorXd phi_grad;
  Eigen::MatrixXd phi_hess;
  Eigen::VectorXd nl_val;
  Eigen::MatrixXd nl_grad;
  std::vector<Eigen::MatrixXd> nl_hess;
};

// Scaled barrier phi + (1/t) * sum log(slacks); -inf outside the domain.
// Same central path as the textbook t*phi + sum log form, but the value,
// gradient and Newton decrement stay O(1) as t grows, and its gradient at
// the center is exactly the KKT stationarity residual.
double barrier_value(const Problem& p, double inv_t, const Eigen::VectorXd& x, Workspace& ws) {
  double logs = 0.0;
  if (p.lin_a.rows() > 0) {
    const Eigen::VectorXd slack = p.lin_ub - p.lin_a * x;
    if (slack.minCoeff() <= 0.0) return -kInf;
    logs += slack.array().log().sum();
  }
  if (p.num_nonlinear > 0) {
    p.nonlinear(x, ws.nl_val, nullptr, nullptr);
    if (ws.nl_val.minCoeff() <= 0.0) return -kInf;
    logs += ws.nl_val.array().log().sum();
  }
  const double val = p.objective(x, nullptr, nullptr) + inv_t * logs;
  return std::isfinite(val) ? val : -kInf;
}

}  // namespace

double min_slack(const Problem& p, const Eigen::VectorXd& x) {
  double m = kInf;
  if (p.lin_a.rows() > 0) m = std::min(m, (p.lin_ub - p.lin_a * x).minCoeff());
  if (p.num_nonlinear > 0) {
    Eigen::VectorXd val(p.num_nonlinear);
    p.nonlinear(x, val, nullptr, nullptr);
    m = std::min(m, val.minCoeff());
  }
  return m;
}

Result maximize(const Problem& p, Eigen::VectorXd x0, const Options& opts) {
  const int n = p.dim;
  const int k_lin = static_cast<int>(p.lin_a.rows());
  const int k_total = k_lin + p.num_nonlinear;
  Workspace ws;
  ws.phi_grad.resize(n);
  ws.phi_hess.resize(n, n);
  ws.nl_val.resize(p.num_nonlinear);
  ws.nl_grad.resize(p.num_nonlinear, n);
  ws.nl_hess.assign(p.num_nonlinear, Eigen::MatrixXd::Zero(n, n));

  Result res;
  res.x = std::move(x0);
  if (min_slack(p, res.x) <= 0.0)
    throw std::invalid_argument("barrier::maximize: start point is not strictly feasible");

  double t = opts.t0;
  Eigen::VectorXd grad_b(n), step(n), cand(n);
  Eigen::MatrixXd hess_b(n, n);

  while (true) {
    const double inv_t = 1.0 / t;
    const bool final_stage = static_cast<double>(k_total) * inv_t <= opts.gap_tol;
    for (int it = 0; it < opts.max_newton_per_stage; ++it) {
      const double phi = p.objective(res.x, &ws.phi_grad, &ws.phi_hess);
      res.objective = phi;
      grad_b = ws.phi_grad;
      hess_b = ws.phi_hess;
      if (k_lin > 0) {
        const Eigen::VectorXd slack = p.lin_ub - p.lin_a * res.x;
        for (int k = 0; k < k_lin; ++k) {
          const Eigen::VectorXd a = p.lin_a.row(k).transpose();
          grad_b.noalias() -= a * (inv_t / slack(k));
          hess_b.noalias() -= (a * a.transpose()) * (inv_t / (slack(k) * slack(k)));
        }
      }
      if (p.num_nonlinear > 0) {
        p.nonlinear(res.x, ws.nl_val, &ws.nl_grad, &ws.nl_hess);
        for (int k = 0; k < p.num_nonlinear; ++k) {
          const Eigen::VectorXd g = ws.nl_grad.row(k).transpose();
          const double f = ws.nl_val(k);
          grad_b.noalias() += g * (inv_t / f);
          hess_b.noalias() += ws.nl_hess[k] * (inv_t / f);
          hess_b.noalias() -= (g * g.transpose()) * (inv_t / (f * f));
        }
      }

      double ridge = 0.0;
      bool solved = false;
      for (int tries = 0; tries < 8 && !solved; ++tries) {
        Eigen::MatrixXd m = -hess_b;
        if (ridge > 0.0) m.diagonal().array() += ridge;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
        if (ldlt.info() == Eigen::Success) {
          step = ldlt.solve(grad_b);
          if (step.allFinite() && grad_b.dot(step) >= 0.0) {
            solved = true;
            break;
          }
        }
        ridge = (ridge == 0.0) ? 1e-10 * (1.0 + hess_b.cwiseAbs().maxCoeff()) : ridge * 100.0;
      }
      if (!solved) break;

      const double decrement2 = grad_b.dot(step);
      const bool centered = 0.5 * decrement2 <= opts.newton_tol * (1.0 + std::abs(phi));
      if (centered && (!final_stage || grad_b.lpNorm<Eigen::Infinity>() <= opts.kkt_tol)) break;

      double alpha = 1.0;
      bool moved = false;
      if (decrement2 <= 0.0625) {
        // quadratic phase: the Newton decrement is inside the basin where a
        // full step keeps the iterate in the domain; skipping the Armijo
        // comparison avoids the floating-point floor on tiny improvements
        while (alpha >= 1e-14) {
          cand = res.x + alpha * step;
          if (barrier_value(p, inv_t, cand, ws) > -kInf) {
            res.x = cand;
            moved = true;
            break;
          }
          alpha *= 0.5;
        }
      } else {
        const double b0 = barrier_value(p, inv_t, res.x, ws);
        while (alpha >= 1e-14) {
          cand = res.x + alpha * step;
          const double b1 = barrier_value(p, inv_t, cand, ws);
          if (b1 > -kInf && b1 >= b0 + 0.25 * alpha * decrement2) {
            res.x = cand;
            moved = true;
            break;
          }
          alpha *= 0.5;
        }
      }
      ++res.newton_steps;
      if (!moved) break;

      if (opts.has_target && p.objective(res.x, nullptr, nullptr) >= opts.target) {
        res.objective = p.objective(res.x, nullptr, nullptr);
        res.gap = static_cast<double>(k_total) / t;
        res.ok = true;
        return res;
      }
    }

    if (std::getenv("SEESIM_BARRIER_DEBUG")) {
      Eigen::VectorXd g(n);
      p.objective(res.x, &g, nullptr);
      std::fprintf(stderr, "stage t=%.3g steps=%d |grad_b|=%.3g final=%d\n", t,
                   res.newton_steps, grad_b.lpNorm<Eigen::Infinity>(), final_stage ? 1 : 0);
    }
    res.gap = static_cast<double>(k_total) / t;
    if (res.gap <= opts.gap_tol) break;
    t *= opts.mu;
  }

  // stationarity residual with the implicit barrier multipliers 1/(t*slack)
  res.objective = p.objective(res.x, &ws.phi_grad, nullptr);
  Eigen::VectorXd r = ws.phi_grad;
  if (k_lin > 0) {
    const Eigen::VectorXd slack = p.lin_ub - p.lin_a * res.x;
    for (int k = 0; k < k_lin; ++k) r -= p.lin_a.row(k).transpose() / (t * slack(k));
  }
  if (p.num_nonlinear > 0) {
    p.nonlinear(res.x, ws.nl_val, &ws.nl_grad, nullptr);
    for (int k = 0; k < p.num_nonlinear; ++k)
      r += ws.nl_grad.row(k).transpose() / (t * ws.nl_val(k));
  }
  res.kkt_residual = r.lpNorm<Eigen::Infinity>();
  res.ok = true;
  return res;
}

}  // namespace seesim::barrier
