#ifndef VISCMM_MINMAX_HPP
#define VISCMM_MINMAX_HPP

#include <optional>
#include <vector>

#include "viscmm/flow.hpp"

namespace viscmm {

// One slice of a sweepout; endpoint slices may degenerate to points.
struct Slice {
  bool degenerate = false;
  Vec point;  // location of a degenerate slice
  std::optional<DiscreteClosedCurve> curve;
};

// Discrete one-parameter family of closed curves.  Adjacent slices stay
// within continuity_bound in node-wise distance; that bound is what the
// width relaxation preserves.
struct Sweepout {
  ManifoldModel manifold = ManifoldModel::sphere();
  double continuity_bound = 0.2;
  int param_dim = 1;
  std::vector<double> params;  // t_j in [0,1]
  std::vector<Slice> slices;

  int size() const { return static_cast<int>(slices.size()); }
};

// Node-wise max geodesic distance between two slices.
double slice_distance(const ManifoldModel& M, const Slice& a, const Slice& b);

// Latitude-circle sweepout of S^2: slice t is the circle x3 = 1 - 2t,
// degenerate at the poles.  The stored continuity bound is widened to
// 1.25x the measured initial gap when S is small enough to need it.
Sweepout canonical_sweepout(const ManifoldModel& M, int S, int N);

struct WidthResult {
  double beta = 0.0;
  int argmax_slice = -1;
  Sweepout relaxed;
  std::vector<double> slice_energies;  // 0 for degenerate slices
  std::vector<double> slice_lengths;
  int iterations = 0;
};

// Relaxes every non-degenerate slice under E_sigma with the length-floor
// cutoff (floor defaults to half the initial max slice energy), keeping
// the family continuous by capping per-iteration displacement at
// bound/4 and vetoing steps that would stretch a link past the bound.
// Returns the max of E_sigma over the relaxed slices.
WidthResult width(const Sweepout& sw, const EnergyParams& e,
                  const FlowOptions& o, int threads = 1);

struct EntropyScheduleRow {
  double sigma = 0.0;
  double beta = 0.0;
  double beta_prime = 0.0;   // backward finite difference
  double bound = 0.0;        // 1 / (sigma log(1/sigma))
  double bending_max = 0.0;  // bending of the argmax slice
  bool selected = false;     // beta_prime <= bound
};

struct EntropyScheduleReport {
  std::vector<EntropyScheduleRow> rows;
};

// Computes beta(sigma_i) across a strictly decreasing schedule in
// (0, 1/e) and marks the entropy-condition selections.
EntropyScheduleReport entropy_schedule(const Sweepout& sw,
                                       const std::vector<double>& sigmas,
                                       const FlowOptions& o, int threads = 1);

// Diagnostics of the quasi-conservation field
//   v = udot - sigma^2 (2 D_t^2 udot + 3 kappa^2 udot).
struct QuasiConservation {
  double dtv_l2 = 0.0;   // || D_t v ||_{L^2}
  double osc_v = 0.0;    // max_i |v_i - mean(v)|
  double defect = 0.0;   // max_i |<udot_i, v_i> - (1 - sigma^2 kappa_i^2)|
};

QuasiConservation quasi_conservation(const DiscreteClosedCurve& c,
                                     const EnergyParams& e);

}  // namespace viscmm

#endif
