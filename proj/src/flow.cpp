#include "viscmm/flow.hpp"

#include <cmath>

namespace viscmm {

namespace {

double max_col_norm(const Eigen::MatrixXd& g) {
  double m = 0.0;
  for (int i = 0; i < g.cols(); ++i) m = std::max(m, g.col(i).norm());
  return m;
}

Eigen::MatrixXd project_all(const ManifoldModel& M, const Eigen::MatrixXd& X) {
  Eigen::MatrixXd Y(X.rows(), X.cols());
  for (int i = 0; i < X.cols(); ++i) Y.col(i) = M.project_point(X.col(i));
  return Y;
}

}  // namespace

void FlowOptions::validate() const {
  if (max_iters < 0 || !(grad_tol > 0.0) || !(step0 > 0.0) ||
      !(backtrack > 0.0 && backtrack < 1.0) || !(length_floor >= 0.0) ||
      resample_every < 0 || !(armijo_c > 0.0) || max_backtracks < 1) {
    throw std::invalid_argument("FlowOptions: invalid parameter");
  }
}

double cutoff_psi(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * (3.0 - 2.0 * s);
}

DescentStep descent_step(const DiscreteClosedCurve& c, const EnergyParams& e,
                         const FlowOptions& o, double psi, double step_init) {
  const ManifoldModel& M = c.manifold();
  DescentStep r;
  r.nodes = c.nodes();
  r.energy_before = energy(c, e);
  r.energy_after = r.energy_before;

  Eigen::MatrixXd grad;
  first_variation_into(c, e, grad);
  r.grad_norm = max_col_norm(grad);
  if (r.grad_norm == 0.0 || psi <= 0.0) return r;

  const double g2 = grad.squaredNorm();
  double step = std::min(step_init, o.step0);
  // Per-iteration node displacement cap.
  if (std::isfinite(o.displacement_cap)) {
    step = std::min(step, o.displacement_cap / (psi * r.grad_norm));
  }

  for (int bt = 0; bt < o.max_backtracks; ++bt) {
    const Eigen::MatrixXd cand =
        project_all(M, r.nodes - (step * psi) * grad);
    DiscreteClosedCurve cc(M, cand);
    const double Ec = energy(cc, e);
    const bool floor_ok =
        o.length_floor <= 0.0 ||
        length(cc) >= o.length_floor * (1.0 - 1e-12);
    if (Ec <= r.energy_before - o.armijo_c * step * psi * g2 && floor_ok) {
      r.nodes = cand;
      r.energy_after = Ec;
      r.step_used = step;
      r.accepted = true;
      return r;
    }
    step *= o.backtrack;
  }
  return r;
}

std::pair<DiscreteClosedCurve, FlowReport> relax(const DiscreteClosedCurve& c,
                                                 const EnergyParams& e,
                                                 const FlowOptions& o) {
  o.validate();
  const ManifoldModel& M = c.manifold();
  const int N = c.size();
  const double scale =
      o.cutoff_scale > 0.0 ? o.cutoff_scale
                           : (o.length_floor > 0.0 ? 0.5 * o.length_floor : 1.0);

  DiscreteClosedCurve cur = c;
  FlowReport rep;
  rep.energy = energy(cur, e);
  rep.history.push_back(rep.energy);
  double step_init = o.step0;

  for (int iter = 0; iter < o.max_iters; ++iter) {
    double psi = 1.0;
    if (o.length_floor > 0.0) {
      psi = cutoff_psi((length(cur) - o.length_floor) / scale);
      if (psi == 0.0) {
        rep.frozen = true;
        Eigen::MatrixXd g;
        first_variation_into(cur, e, g);
        rep.grad_norm = max_col_norm(g);
        break;
      }
    }

    DescentStep st;
    try {
      st = descent_step(cur, e, o, psi, step_init);
    } catch (const std::exception& ex) {
      throw std::runtime_error("relax: degenerate curve at iteration " +
                               std::to_string(iter) + ": " + ex.what());
    }
    rep.grad_norm = st.grad_norm;
    if (st.grad_norm < o.grad_tol) {
      rep.converged = true;
      break;
    }
    if (!st.accepted) break;  // no admissible step left

    cur = DiscreteClosedCurve(M, st.nodes);
    rep.iters = iter + 1;
    step_init = 2.0 * st.step_used;  // warm restart

    if (o.resample_every > 0 && (iter + 1) % o.resample_every == 0) {
      cur = resample_arclength(cur, N);
    }
    rep.energy = energy(cur, e);
    rep.history.push_back(rep.energy);
  }

  rep.energy = energy(cur, e);
  if (rep.history.empty() || rep.history.back() != rep.energy) {
    rep.history.push_back(rep.energy);
  }
  Eigen::MatrixXd g;
  first_variation_into(cur, e, g);
  rep.grad_norm = max_col_norm(g);
  rep.converged = rep.grad_norm < o.grad_tol;
  return {cur, rep};
}

DiscreteClosedCurve flow_step(const DiscreteClosedCurve& c,
                              const EnergyParams& e, double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("flow_step: step must be positive");
  }
  Eigen::MatrixXd grad;
  first_variation_into(c, e, grad);
  Eigen::MatrixXd cand = c.nodes() - step * grad;
  return DiscreteClosedCurve(c.manifold(), project_all(c.manifold(), cand));
}

}  // namespace viscmm
