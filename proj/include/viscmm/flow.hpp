#ifndef VISCMM_FLOW_HPP
#define VISCMM_FLOW_HPP

#include <limits>
#include <utility>

#include "viscmm/curve.hpp"

namespace viscmm {

struct FlowOptions {
  int max_iters = 5000;
  double grad_tol = 1e-6;
  double step0 = 1.0;          // initial / maximal Armijo step
  double backtrack = 0.5;      // step shrink factor, in (0,1)
  double length_floor = 0.0;   // cutoff threshold (beta(0)/2 in the min-max)
  double cutoff_scale = 0.0;   // 0 selects length_floor / 2
  int resample_every = 0;      // 0 disables periodic resampling
  double displacement_cap = std::numeric_limits<double>::infinity();
  double armijo_c = 1e-4;
  int max_backtracks = 40;

  void validate() const;
};

struct FlowReport {
  int iters = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  std::vector<double> history;  // energy per iteration (including start)
  bool converged = false;       // grad_norm < grad_tol
  bool frozen = false;          // stopped by the length-floor cutoff
};

// Smooth cubic step: 0 for s <= 0, 3s^2 - 2s^3 on (0,1), 1 for s >= 1.
double cutoff_psi(double s);

// Projected gradient descent on E_sigma with Armijo backtracking, the
// length-floor cutoff and optional periodic arclength resampling.
std::pair<DiscreteClosedCurve, FlowReport> relax(const DiscreteClosedCurve& c,
                                                 const EnergyParams& e,
                                                 const FlowOptions& o);

// One explicit projected descent step of size `step` (no backtracking).
DiscreteClosedCurve flow_step(const DiscreteClosedCurve& c,
                              const EnergyParams& e, double step);

// One Armijo-backtracked descent attempt; building block for relax and
// for the sweepout-coupled relaxation in the min-max driver.
struct DescentStep {
  Eigen::MatrixXd nodes;   // accepted iterate (or input copy if !accepted)
  double energy_before = 0.0;
  double energy_after = 0.0;
  double grad_norm = 0.0;  // max node gradient norm at the input
  double step_used = 0.0;
  bool accepted = false;
};

DescentStep descent_step(const DiscreteClosedCurve& c, const EnergyParams& e,
                         const FlowOptions& o, double psi, double step_init);

}  // namespace viscmm

#endif
