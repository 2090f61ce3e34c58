#ifndef VISCMM_CURVE_HPP
#define VISCMM_CURVE_HPP

#include <vector>

#include "viscmm/manifold.hpp"

namespace viscmm {

// Viscosity parameter of E_sigma = length + sigma^2 * bending.
struct EnergyParams {
  double sigma = 0.0;

  explicit EnergyParams(double s) : sigma(s) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("EnergyParams: sigma must be finite, >= 0");
    }
  }
};

// Closed discrete curve: N >= 8 ambient points on M, node N == node 0.
// Construction projects every node onto M and checks the discrete
// immersion condition (adjacent nodes distinct).
class DiscreteClosedCurve {
 public:
  DiscreteClosedCurve(ManifoldModel manifold, std::vector<Vec> nodes);
  DiscreteClosedCurve(ManifoldModel manifold, Eigen::MatrixXd nodes);

  const ManifoldModel& manifold() const { return manifold_; }
  int size() const { return static_cast<int>(nodes_.cols()); }

  // Node i with cyclic index.
  Vec node(int i) const;
  const Eigen::MatrixXd& nodes() const { return nodes_; }

  std::vector<Vec> node_list() const;

 private:
  ManifoldModel manifold_;
  Eigen::MatrixXd nodes_;  // ambient_dim x N, column i = node i
};

// Sum of geodesic chord lengths.
double length(const DiscreteClosedCurve& c);

// Per-node geodesic curvature |P_i(second difference)| / ds_i^2 on a
// (near) arclength-uniform grid.
std::vector<double> geodesic_curvature(const DiscreteClosedCurve& c);

// E_sigma = length + sigma^2 sum_i kappa_i^2 ds_i.
double energy(const DiscreteClosedCurve& c, const EnergyParams& e);

// sigma^2 sum_i kappa_i^2 ds_i; energy == length + bending identically.
double bending(const DiscreteClosedCurve& c, const EnergyParams& e);

// Exact gradient of the discrete energy with respect to node positions,
// composed with the retraction onto M; tangent at every node.
std::vector<Vec> first_variation(const DiscreteClosedCurve& c,
                                 const EnergyParams& e);

// Same gradient written into a q x N matrix (hot path for the flow).
void first_variation_into(const DiscreteClosedCurve& c, const EnergyParams& e,
                          Eigen::MatrixXd& grad);

// Max node norm of the discrete Euler-Lagrange residual
//   D_t udot - sigma^2 { D_t(2 D_t^2 udot + 3 kappa^2 udot)
//                        + 2 R(D_t udot, udot) udot }.
double el_residual(const DiscreteClosedCurve& c, const EnergyParams& e);

// Resample to N nodes with equal geodesic chord spacing (relative 1e-6),
// through a periodic cubic spline interpolant of the nodes.
DiscreteClosedCurve resample_arclength(const DiscreteClosedCurve& c, int N);

// Covariant derivative of a tangent field along the curve:
// project_tangent of the centered difference over the local arclength.
std::vector<Vec> discrete_covariant_derivative(const DiscreteClosedCurve& c,
                                               const std::vector<Vec>& field);

// Local arclength weights ds_i = (l_{i-1} + l_i)/2.
std::vector<double> arclength_weights(const DiscreteClosedCurve& c);

// Discrete unit tangent P_i[(x_{i+1} - x_{i-1})/(2 ds_i)], normalized.
std::vector<Vec> unit_tangent(const DiscreteClosedCurve& c);

}  // namespace viscmm

#endif
