#include "seesim/solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "seesim/barrier.hpp"

namespace seesim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStrictSlack = 1e-6;  // required original-constraint slack

// Scaled free-variable view of a PowerAllocation. Block order: p, s, z.
struct Layout {
  int I = 0;
  bool free_blk[3] = {true, true, true};
  double scale[3] = {1.0, 1.0, 1.0};
  int offset[3] = {-1, -1, -1};
  int dim = 0;

  Layout(const ProblemData& d) {
    I = d.subcarriers();
    free_blk[0] = d.pattern.p_free;
    free_blk[1] = d.pattern.s_free;
    free_blk[2] = d.pattern.z_free;
    scale[0] = d.p_pbs_total;
    scale[1] = d.p_cbs_total;
    scale[2] = d.p_cbs_total;
    int pos = 0;
    for (int t = 0; t < 3; ++t) {
      if (free_blk[t]) {
        offset[t] = pos * I;
        ++pos;
      }
    }
    dim = pos * I;
  }

  int index(int block, int i) const { return offset[block] + i; }
};

Eigen::VectorXd pack(const Layout& lay, const ProblemData& d, const PowerAllocation& alloc) {
  Eigen::VectorXd x(lay.dim);
  for (int i = 0; i < lay.I; ++i) {
    if (lay.free_blk[0]) x(lay.index(0, i)) = alloc.p(i) / lay.scale[0];
    if (lay.free_blk[1]) x(lay.index(1, i)) = alloc.s(i) / lay.scale[1];
    if (lay.free_blk[2]) x(lay.index(2, i)) = alloc.z(i) / lay.scale[2];
  }
  (void)d;
  return x;
}

PowerAllocation unpack(const Layout& lay, const ProblemData& d, const Eigen::VectorXd& x) {
  PowerAllocation alloc = PowerAllocation::zero(lay.I);
  for (int i = 0; i < lay.I; ++i) {
    alloc.p(i) = lay.free_blk[0] ? x(lay.index(0, i)) * lay.scale[0] : d.pattern.p_fixed(i);
    alloc.s(i) = lay.free_blk[1] ? x(lay.index(1, i)) * lay.scale[1] : d.pattern.s_fixed(i);
    alloc.z(i) = lay.free_blk[2] ? x(lay.index(2, i)) * lay.scale[2] : d.pattern.z_fixed(i);
  }
  return alloc;
}

// Budget and nonnegativity rows in scaled coordinates.
void linear_rows(const Layout& lay, const ProblemData& d, Eigen::MatrixXd& a,
                 Eigen::VectorXd& ub) {
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> ubs;
  if (lay.free_blk[0]) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(lay.dim);
    for (int i = 0; i < lay.I; ++i) r(lay.index(0, i)) = 1.0;
    rows.push_back(r);
    ubs.push_back(1.0);
  }
  if (lay.free_blk[1] || lay.free_blk[2]) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(lay.dim);
    double cap = d.p_cbs_total;
    for (int i = 0; i < lay.I; ++i) {
      if (lay.free_blk[1]) r(lay.index(1, i)) = 1.0; else cap -= d.pattern.s_fixed(i);
      if (lay.free_blk[2]) r(lay.index(2, i)) = 1.0; else cap -= d.pattern.z_fixed(i);
    }
    rows.push_back(r);
    ubs.push_back(cap / d.p_cbs_total);
  }
  for (int k = 0; k < lay.dim; ++k) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(lay.dim);
    r(k) = -1.0;
    rows.push_back(r);
    ubs.push_back(0.0);
  }
  a.resize(static_cast<int>(rows.size()), lay.dim);
  ub.resize(static_cast<int>(rows.size()));
  for (size_t k = 0; k < rows.size(); ++k) {
    a.row(static_cast<int>(k)) = rows[k];
    ub(static_cast<int>(k)) = ubs[k];
  }
}

// Pull a scaled point into the strict interior of the linear constraints.
Eigen::VectorXd interiorize(const Layout& lay, const ProblemData& d, Eigen::VectorXd x) {
  const double floor = 1e-12;
  x = x.cwiseMax(floor);
  if (lay.free_blk[0]) {
    double sum = 0.0;
    for (int i = 0; i < lay.I; ++i) sum += x(lay.index(0, i));
    if (sum > 1.0 - 1e-10) {
      const double f = (1.0 - 1e-9) / sum;
      for (int i = 0; i < lay.I; ++i) x(lay.index(0, i)) *= f;
    }
  }
  if (lay.free_blk[1] || lay.free_blk[2]) {
    double cap = d.p_cbs_total;
    double sum = 0.0;
    for (int i = 0; i < lay.I; ++i) {
      if (lay.free_blk[1]) sum += x(lay.index(1, i)); else cap -= d.pattern.s_fixed(i);
      if (lay.free_blk[2]) sum += x(lay.index(2, i)); else cap -= d.pattern.z_fixed(i);
    }
    cap /= d.p_cbs_total;
    if (sum > cap - 1e-10) {
      const double f = (cap - 1e-9) / std::max(sum, 1e-300);
      for (int i = 0; i < lay.I; ++i) {
        if (lay.free_blk[1]) x(lay.index(1, i)) *= f;
        if (lay.free_blk[2]) x(lay.index(2, i)) *= f;
      }
    }
  }
  return x;
}

// Chain rule into the free-variable coordinates.
void scatter_grad(const Layout& lay, int i, const Eigen::Vector3d& g, Eigen::VectorXd& out) {
  for (int t = 0; t < 3; ++t)
    if (lay.free_blk[t]) out(lay.index(t, i)) += g(t) * lay.scale[t];
}

void scatter_hess(const Layout& lay, int i, const Eigen::Matrix3d& h, Eigen::MatrixXd& out) {
  for (int t = 0; t < 3; ++t) {
    if (!lay.free_blk[t]) continue;
    for (int u = 0; u < 3; ++u) {
      if (!lay.free_blk[u]) continue;
      out(lay.index(t, i), lay.index(u, i)) += h(t, u) * lay.scale[t] * lay.scale[u];
    }
  }
}

struct ConstraintSet {
  bool cu = false, pu = false;
  int count(int I) const { return I * ((cu ? 1 : 0) + (pu ? 1 : 0)); }
};

// Nonlinear (linearized-secrecy) constraint callback: rows are
// CU constraints for all subcarriers, then PU constraints.
auto nonlinear_callback(const Layout& lay, const ProblemData& d, const DcFunctions::Anchor& anchor,
                        const ConstraintSet& cons) {
  return [&lay, &d, &anchor, cons](const Eigen::VectorXd& x, Eigen::VectorXd& val,
                                   Eigen::MatrixXd* grad, std::vector<Eigen::MatrixXd>* hess) {
    const PowerAllocation alloc = unpack(lay, d, x);
    int row = 0;
    auto fill = [&](DcFunctions::Pair pair, double rmin) {
      for (int i = 0; i < lay.I; ++i, ++row) {
        const auto ev = d.dc->eval_linearized(pair, anchor, i, alloc.at(i), hess != nullptr);
        val(row) = ev.value - rmin;
        if (grad) {
          grad->row(row).setZero();
          Eigen::VectorXd g = Eigen::VectorXd::Zero(lay.dim);
          scatter_grad(lay, i, ev.grad, g);
          grad->row(row) = g.transpose();
        }
        if (hess) {
          (*hess)[row].setZero();
          scatter_hess(lay, i, ev.hess, (*hess)[row]);
        }
      }
    };
    if (cons.cu) fill(DcFunctions::Pair::CuSecrecy, d.r_cu_min);
    if (cons.pu) fill(DcFunctions::Pair::PuSecrecy, d.r_pu_min);
  };
}

}  // namespace

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::MaxIter: return "max-iter";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NumericError: return "numeric-error";
  }
  return "?";
}

VariablePattern VariablePattern::all_free(int subcarriers) {
  VariablePattern p;
  p.p_fixed = Eigen::VectorXd::Zero(subcarriers);
  p.s_fixed = Eigen::VectorXd::Zero(subcarriers);
  p.z_fixed = Eigen::VectorXd::Zero(subcarriers);
  return p;
}

bool VariablePattern::matches(const PowerAllocation& alloc, double tol) const {
  const int I = alloc.subcarriers();
  if (!p_free && (p_fixed.size() != I || (alloc.p - p_fixed).lpNorm<Eigen::Infinity>() > tol))
    return false;
  if (!s_free && (s_fixed.size() != I || (alloc.s - s_fixed).lpNorm<Eigen::Infinity>() > tol))
    return false;
  if (!z_free && (z_fixed.size() != I || (alloc.z - z_fixed).lpNorm<Eigen::Infinity>() > tol))
    return false;
  return true;
}

PowerAllocation VariablePattern::overlay(const PowerAllocation& alloc) const {
  PowerAllocation out = alloc;
  if (!p_free) out.p = p_fixed;
  if (!s_free) out.s = s_fixed;
  if (!z_free) out.z = z_fixed;
  return out;
}

double ProblemData::min_slack(const PowerAllocation& alloc) const {
  double m = kInf;
  for (int i = 0; i < subcarriers(); ++i) {
    if (enforce_cu())
      m = std::min(m, dc->pair_value(DcFunctions::Pair::CuSecrecy, i, alloc.at(i)) - r_cu_min);
    if (enforce_pu())
      m = std::min(m, dc->pair_value(DcFunctions::Pair::PuSecrecy, i, alloc.at(i)) - r_pu_min);
  }
  return m;
}

bool ProblemData::budget_feasible(const PowerAllocation& alloc, double tol) const {
  return alloc.nonnegative(tol) && alloc.pbs_sum() <= p_pbs_total + tol &&
         alloc.cbs_sum() <= p_cbs_total + tol;
}

double subproblem_objective(const SubproblemSpec& spec, const DcFunctions::Anchor& anchor,
                            const PowerAllocation& alloc) {
  const ProblemData& d = spec.data;
  double v = 0.0;
  for (int i = 0; i < d.subcarriers(); ++i) {
    v += d.dc->minuend(spec.objective_pair, i, alloc.at(i)) -
         d.dc->taylor_subtrahend(spec.objective_pair, anchor, i, alloc.at(i));
  }
  return v - spec.eta * (alloc.cbs_sum() + d.p_b);
}

double subtractive_objective(const ProblemData& data, DcFunctions::Pair pair, double eta,
                             const PowerAllocation& alloc) {
  double v = 0.0;
  for (int i = 0; i < data.subcarriers(); ++i) v += data.dc->pair_value(pair, i, alloc.at(i));
  return v - eta * (alloc.cbs_sum() + data.p_b);
}

namespace {

// Maximize the minimum linearized-constraint slack in the lifted (x, tau)
// space; stops early once `target` is reached.
std::optional<Eigen::VectorXd> max_min_slack(const Layout& lay, const ProblemData& d,
                                             const DcFunctions::Anchor& anchor,
                                             const ConstraintSet& cons,
                                             const Eigen::VectorXd& x0, double target,
                                             double* achieved) {
  const int n = lay.dim + 1;  // tau appended
  barrier::Problem prob;
  prob.dim = n;
  prob.objective = [n](const Eigen::VectorXd& y, Eigen::VectorXd* g, Eigen::MatrixXd* h) {
    if (g) {
      g->setZero(n);
      (*g)(n - 1) = 1.0;
    }
    if (h) h->setZero(n, n);
    return y(n - 1);
  };
  Eigen::MatrixXd lin_a;
  Eigen::VectorXd lin_ub;
  linear_rows(lay, d, lin_a, lin_ub);
  prob.lin_a = Eigen::MatrixXd::Zero(lin_a.rows(), n);
  prob.lin_a.leftCols(lay.dim) = lin_a;
  prob.lin_ub = lin_ub;
  prob.num_nonlinear = cons.count(lay.I);
  auto base = nonlinear_callback(lay, d, anchor, cons);
  prob.nonlinear = [&lay, base, n](const Eigen::VectorXd& y, Eigen::VectorXd& val,
                                   Eigen::MatrixXd* grad, std::vector<Eigen::MatrixXd>* hess) {
    const Eigen::VectorXd x = y.head(n - 1);
    Eigen::MatrixXd g_inner;
    std::vector<Eigen::MatrixXd> h_inner;
    if (grad) g_inner.resize(val.size(), n - 1);
    if (hess) h_inner.assign(val.size(), Eigen::MatrixXd::Zero(n - 1, n - 1));
    base(x, val, grad ? &g_inner : nullptr, hess ? &h_inner : nullptr);
    val.array() -= y(n - 1);
    if (grad) {
      grad->setZero();
      grad->leftCols(n - 1) = g_inner;
      grad->col(n - 1).setConstant(-1.0);
    }
    if (hess) {
      for (size_t k = 0; k < h_inner.size(); ++k) {
        (*hess)[k].setZero();
        (*hess)[k].topLeftCorner(n - 1, n - 1) = h_inner[k];
      }
    }
  };

  // strictly feasible lifted start
  Eigen::VectorXd val(prob.num_nonlinear);
  Eigen::VectorXd xs = interiorize(lay, d, x0);
  base(xs, val, nullptr, nullptr);
  Eigen::VectorXd y0(n);
  y0.head(lay.dim) = xs;
  y0(n - 1) = val.minCoeff() - 1.0;

  barrier::Options opts;
  opts.gap_tol = 1e-8;
  if (std::isfinite(target)) {
    opts.has_target = true;
    opts.target = target;
  }
  const auto res = barrier::maximize(prob, y0, opts);
  if (achieved) *achieved = res.objective;
  if (!res.ok) return std::nullopt;
  if (std::isfinite(target) && res.objective < target) return std::nullopt;
  return res.x.head(lay.dim).eval();
}

}  // namespace

SolveReport solve_subproblem(const SubproblemSpec& spec, double tol) {
  const ProblemData& d = spec.data;
  const Layout lay(d);
  const DcFunctions::Anchor anchor = d.dc->make_anchor(spec.anchor);
  const ConstraintSet cons{d.enforce_cu(), d.enforce_pu()};

  SolveReport report;
  report.solution = spec.anchor;
  report.objective = subproblem_objective(spec, anchor, spec.anchor);

  Eigen::VectorXd x0 = interiorize(lay, d, pack(lay, d, spec.anchor));

  // secure a strictly feasible start w.r.t. the linearized constraints
  if (cons.count(lay.I) > 0) {
    Eigen::VectorXd val(cons.count(lay.I));
    auto cb = nonlinear_callback(lay, d, anchor, cons);
    cb(x0, val, nullptr, nullptr);
    if (val.minCoeff() < 1e-9) {
      double achieved = -kInf;
      auto strict = max_min_slack(lay, d, anchor, cons, x0, 1e-8, &achieved);
      if (!strict) {
        // no usable interior around this anchor; keep the anchor itself
        const double anchor_slack = d.min_slack(spec.anchor);
        report.status = anchor_slack >= -1e-9 ? SolveStatus::Optimal : SolveStatus::Infeasible;
        report.max_violation = std::max(0.0, -anchor_slack);
        return report;
      }
      x0 = *strict;
    }
  }

  barrier::Problem prob;
  prob.dim = lay.dim;
  linear_rows(lay, d, prob.lin_a, prob.lin_ub);
  prob.num_nonlinear = cons.count(lay.I);
  auto nl = nonlinear_callback(lay, d, anchor, cons);
  if (prob.num_nonlinear > 0) prob.nonlinear = nl;

  const double eta = spec.eta;
  const auto obj_pair = spec.objective_pair;
  prob.objective = [&lay, &d, &anchor, obj_pair, eta](const Eigen::VectorXd& x,
                                                      Eigen::VectorXd* grad,
                                                      Eigen::MatrixXd* hess) {
    const PowerAllocation alloc = unpack(lay, d, x);
    if (grad) grad->setZero(lay.dim);
    if (hess) hess->setZero(lay.dim, lay.dim);
    double v = 0.0;
    for (int i = 0; i < lay.I; ++i) {
      const auto ev = d.dc->eval_linearized(obj_pair, anchor, i, alloc.at(i), hess != nullptr);
      v += ev.value;
      if (grad) {
        Eigen::Vector3d g = ev.grad;
        g(1) -= eta;
        g(2) -= eta;
        scatter_grad(lay, i, g, *grad);
      }
      if (hess) scatter_hess(lay, i, ev.hess, *hess);
    }
    return v - eta * (alloc.cbs_sum() + d.p_b);
  };

  barrier::Options opts;
  opts.gap_tol = tol;
  barrier::Result res;
  try {
    res = barrier::maximize(prob, x0, opts);
  } catch (const std::exception&) {
    report.status = SolveStatus::NumericError;
    return report;
  }

  PowerAllocation sol = unpack(lay, d, res.x);
  sol.clamp_negatives();

  // never hand back something worse than the anchor
  const double obj_sol = subproblem_objective(spec, anchor, sol);
  const double obj_anchor = subproblem_objective(spec, anchor, spec.anchor);
  if (!(obj_sol >= obj_anchor) || !std::isfinite(obj_sol)) {
    report.solution = spec.anchor;
    report.objective = obj_anchor;
    report.status = SolveStatus::Optimal;
    report.newton_steps = res.newton_steps;
    return report;
  }

  double violation = 0.0;
  violation = std::max(violation, sol.pbs_sum() - d.p_pbs_total);
  violation = std::max(violation, sol.cbs_sum() - d.p_cbs_total);
  for (int i = 0; i < lay.I; ++i) {
    if (cons.cu)
      violation = std::max(violation, d.r_cu_min - d.dc->eval_linearized(
                                                         DcFunctions::Pair::CuSecrecy, anchor, i,
                                                         sol.at(i), false)
                                                         .value);
    if (cons.pu)
      violation = std::max(violation, d.r_pu_min - d.dc->eval_linearized(
                                                         DcFunctions::Pair::PuSecrecy, anchor, i,
                                                         sol.at(i), false)
                                                         .value);
  }

  report.solution = sol;
  report.objective = obj_sol;
  report.kkt_residual = res.kkt_residual;
  report.max_violation = std::max(violation, 0.0);
  report.newton_steps = res.newton_steps;
  report.status = SolveStatus::Optimal;
  return report;
}

PowerAllocation uniform_split(const ProblemData& data) {
  const int I = data.subcarriers();
  PowerAllocation alloc = PowerAllocation::zero(I);
  alloc.p.setConstant(data.p_pbs_total / I);
  alloc.s.setConstant(data.p_cbs_total / (2.0 * I));
  alloc.z.setConstant(data.p_cbs_total / (2.0 * I));
  return data.pattern.overlay(alloc);
}

std::optional<PowerAllocation> feasibility_phase(const ProblemData& data) {
  const int I = data.subcarriers();
  if (!data.enforce_cu() && !data.enforce_pu()) return uniform_split(data);

  // candidate battery: uniform splits with scaled PBS/CBS power
  const double scales[] = {1.0, 0.3, 0.1, 0.03, 0.01, 1e-3, 1e-4};
  PowerAllocation best = uniform_split(data);
  double best_slack = data.min_slack(best);
  for (double fp : scales) {
    for (double fc : scales) {
      PowerAllocation cand = PowerAllocation::zero(I);
      cand.p.setConstant(fp * data.p_pbs_total / I);
      cand.s.setConstant(fc * data.p_cbs_total / (2.0 * I));
      cand.z.setConstant(fc * data.p_cbs_total / (2.0 * I));
      cand = data.pattern.overlay(cand);
      const double slack = data.min_slack(cand);
      if (slack > best_slack) {
        best_slack = slack;
        best = cand;
      }
    }
  }
  if (best_slack >= kStrictSlack) return best;

  // successive relinearization of the max-min-slack problem; the linearized
  // slack lower-bounds the true slack, so progress is monotone
  const Layout lay(data);
  const ConstraintSet cons{data.enforce_cu(), data.enforce_pu()};
  for (int round = 0; round < 8; ++round) {
    const auto anchor = data.dc->make_anchor(best);
    double achieved = -kInf;
    const auto x = max_min_slack(lay, data, anchor, cons, pack(lay, data, best), kInf, &achieved);
    if (!x) break;
    PowerAllocation next = unpack(lay, data, *x);
    next.clamp_negatives();
    const double slack = data.min_slack(next);
    if (slack >= kStrictSlack) {
      next.clamp_negatives();
      return next;
    }
    if (slack <= best_slack + 1e-10) break;
    best_slack = slack;
    best = next;
  }
  return std::nullopt;
}

namespace {

// Self-contained rate evaluation for the oracle (determinant-based route,
// independent of the Cholesky log-det path used by the optimizer).
struct OracleEval {
  double sigma2;
  double a, b, d, e;
  Eigen::MatrixXcd C, F, G;
  int ne;

  double det(double pp, double ps, double pz) const {
    Eigen::MatrixXcd m = sigma2 * Eigen::MatrixXcd::Identity(ne, ne);
    m += pp * C + ps * F + pz * G;
    if (ne == 1) return std::real(m(0, 0));
    if (ne == 2) return std::real(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    return std::real(m.determinant());
  }

  double r_cc(double pp, double ps) const {
    return std::log2(1.0 + e * ps / (b * pp + sigma2));
  }
  double r_pp(double pp, double ps) const {
    return std::log2(1.0 + a * pp / (d * ps + sigma2));
  }
  double r_ce(double pp, double ps, double pz) const {
    return std::log2(det(pp, ps, pz)) - std::log2(det(pp, 0.0, pz));
  }
  double r_pe(double pp, double ps, double pz) const {
    return std::log2(det(pp, ps, pz)) - std::log2(det(0.0, ps, pz));
  }
};

}  // namespace

OracleResult grid_oracle(const EffectiveGains& gains, const SystemConfig& cfg, int resolution) {
  const int I = gains.subcarriers();
  if (I > 2) throw std::invalid_argument("grid_oracle: guarded to instances with I <= 2");
  if (resolution < 1) throw std::invalid_argument("grid_oracle: resolution must be >= 1");

  const double sigma2 = cfg.noise_power_w();
  std::vector<OracleEval> ev;
  for (int i = 0; i < I; ++i) {
    ev.push_back(OracleEval{sigma2, gains.a(i), gains.b(i), gains.d(i), gains.e(i),
                            gains.c(i), gains.f(i), gains.g(i), cfg.n_e});
  }

  const double dp = cfg.p_pbs_total_w / resolution;
  const double dc = cfg.p_cbs_total_w / resolution;
  const int R = resolution;

  OracleResult best;
  best.allocation = PowerAllocation::zero(I);
  best.see = -kInf;

  auto consider = [&](const PowerAllocation& alloc) {
    double r_sec = 0.0;
    for (int i = 0; i < I; ++i) {
      const double rcc = ev[i].r_cc(alloc.p(i), alloc.s(i));
      const double rce = ev[i].r_ce(alloc.p(i), alloc.s(i), alloc.z(i));
      const double sr_cu = rcc - rce;
      if (cfg.r_cu_min > 0.0 && sr_cu < cfg.r_cu_min) return;
      if (cfg.r_pu_min > 0.0) {
        const double sr_pu =
            ev[i].r_pp(alloc.p(i), alloc.s(i)) - ev[i].r_pe(alloc.p(i), alloc.s(i), alloc.z(i));
        if (sr_pu < cfg.r_pu_min) return;
      }
      r_sec += std::max(sr_cu, 0.0);
    }
    const double see = r_sec / (alloc.cbs_sum() + cfg.p_b_w);
    if (see > best.see) {
      best.see = see;
      best.allocation = alloc;
    }
  };

  PowerAllocation alloc = PowerAllocation::zero(I);
  if (I == 1) {
    for (int p = 0; p <= R; ++p) {
      alloc.p(0) = p * dp;
      for (int s = 0; s <= R; ++s) {
        alloc.s(0) = s * dc;
        for (int z = 0; z + s <= R; ++z) {
          alloc.z(0) = z * dc;
          consider(alloc);
        }
      }
    }
  } else {
    for (int p1 = 0; p1 <= R; ++p1) {
      alloc.p(0) = p1 * dp;
      for (int p2 = 0; p1 + p2 <= R; ++p2) {
        alloc.p(1) = p2 * dp;
        for (int s1 = 0; s1 <= R; ++s1) {
          alloc.s(0) = s1 * dc;
          for (int z1 = 0; s1 + z1 <= R; ++z1) {
            alloc.z(0) = z1 * dc;
            for (int s2 = 0; s1 + z1 + s2 <= R; ++s2) {
              alloc.s(1) = s2 * dc;
              for (int z2 = 0; s1 + z1 + s2 + z2 <= R; ++z2) {
                alloc.z(1) = z2 * dc;
                consider(alloc);
              }
            }
          }
        }
      }
    }
  }
  if (!std::isfinite(best.see)) best.see = 0.0;
  return best;
}

}  // namespace seesim
