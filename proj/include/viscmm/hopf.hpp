#ifndef VISCMM_HOPF_HPP
#define VISCMM_HOPF_HPP

#include <vector>

#include "viscmm/curve.hpp"

namespace viscmm {

// Hopf fibration p(q) = q~ q, with q~ the anti-automorphism fixing 1, j,
// k and sending i to -i; S^2 sits in span(1, j, k).  Maps a unit
// quaternion (4-vector) to a unit 3-vector.
Vec hopf_projection(const Vec& q);

// Horizontal lift of a closed spherical curve: Gamma'(s) = lambda(s)
// Gamma(s) with |Gamma'| = 1 and lambda in span(j, k), so the base is
// traversed at speed 2 and the lift lives on [0, L/2].  Lifts generally
// do not close; the fiber holonomy angle is recorded.
struct LiftedCurve {
  std::vector<Vec> points;      // on S^3, one per base node
  double domain_length = 0.0;   // L/2
  double holonomy = 0.0;        // fiber angle between the end and start
  double fiber_defect = 0.0;    // off-fiber part of the end point
  double projection_defect = 0.0;  // max |p(Gamma_i) - base_i|
  double lambda_span_defect = 0.0; // max |(1,i)-components of lambda|
};

LiftedCurve horizontal_lift(const DiscreteClosedCurve& base,
                            const Vec& basepoint);

// Doubly periodic grid Gamma(t_i, theta_j) = e^{i theta_j} Gamma(t_i);
// the t-direction closes through the holonomy rotation.
struct HopfTorusGrid {
  int Nt = 0;
  int Ntheta = 0;
  double dt = 0.0;
  double dtheta = 0.0;
  double holonomy = 0.0;
  std::vector<Vec> points;  // (i, j) -> points[i * Ntheta + j], on S^3

  const Vec& at(int i, int j) const { return points[i * Ntheta + j]; }
  // grid point with cyclic indices, rotating through the holonomy when
  // crossing the t seam
  Vec wrapped(int i, int j) const;
};

HopfTorusGrid hopf_torus(const LiftedCurve& lifted, int Ntheta);

// Mean and extrinsic Gauss curvature from discrete fundamental forms,
// with the defects against the expected H(t, theta) = kappa(2t) and
// K = -1 of Hopf tori.
struct TorusCurvatures {
  Eigen::MatrixXd H;  // Nt x Ntheta
  Eigen::MatrixXd K;
  double max_H_defect = 0.0;  // vs base curvature, when supplied
  double max_K_defect = 0.0;  // vs -1
};

TorusCurvatures torus_curvatures(const HopfTorusGrid& grid,
                                 const std::vector<double>& base_kappa = {});

// W_sigma = sum (1 + sigma^2 H^2) dA with H from the discrete grid.
double willmore_sigma(const HopfTorusGrid& grid, double sigma);

// Max-norm residual of 2H = sigma^2 (Delta_g H + 2H(H^2 - 2K)).
double willmore_residual(const HopfTorusGrid& grid, double sigma);

// A_sigma = sum (1 + sigma^2 |II|^2) dA with |II|^2 = 2 + 4 kappa(2t)^2
// from the base curvature.
double area_energy(const HopfTorusGrid& grid, double sigma,
                   const std::vector<double>& base_kappa);

}  // namespace viscmm

#endif
