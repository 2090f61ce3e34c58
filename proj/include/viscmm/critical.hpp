#ifndef VISCMM_CRITICAL_HPP
#define VISCMM_CRITICAL_HPP

#include <utility>

#include "viscmm/curve.hpp"
#include "viscmm/elliptic.hpp"

namespace viscmm {

// Parameters of the explicit critical curvature profile
//   k(t) = (2/sigma) C dn(C t / sigma, p),
//   C = sqrt((1 - 2 sigma^2 K_M) / (2 (2 - p^2))),
// which solves  k = sigma^2 (2 k'' + k^3 + 2 K_M k)  exactly.
class EllipticProfile {
 public:
  EllipticProfile(EllipticModulus p, double sigma, double K_M, int m);

  EllipticModulus modulus() const { return p_; }
  double sigma() const { return sigma_; }
  double gauss_K() const { return K_M_; }
  int winding() const { return m_; }

  double C() const { return C_; }          // amplitude constant C(sigma)
  double amplitude() const;                // 2 C / sigma

 private:
  EllipticModulus p_;
  double sigma_;
  double K_M_;
  int m_;
  double C_;
};

// k(t), positive branch.
double curvature_profile(const EllipticProfile& prof, double t);

// L = 2 sigma m K(p) / C, the closed-curve length fixed by the period
// relation of k^2.
double period_length(const EllipticProfile& prof);

// Closed form of  int_0^L sigma^2 k^2 dt  =  8 sigma m C(sigma) E(p).
double bending_integral(const EllipticProfile& prof);

// Limiting ratio length/energy as sigma -> 0 at fixed p:
//   eps(p) = 1 / (1 + (2/(2-p^2)) E(p)/K(p)).
double epsilon_ratio(EllipticModulus p);

// dn sandwich bounds (lower from K_plus, upper from K_minus) for the
// curvature of critical points on a surface with sectional curvature in
// [K_minus, K_plus].
std::pair<double, double> comparison_bounds(double sigma, double K_plus,
                                            double K_minus, EllipticModulus p,
                                            double t);

// The n-fold circle on S^2 with constant curvature sqrt(1-2s^2)/s at
// s = 1/(4n), together with its closed forms.
struct SphereCounterexample {
  DiscreteClosedCurve curve;
  int n = 0;
  double sigma = 0.0;
  double kappa = 0.0;          // constant geodesic curvature
  double radius = 0.0;         // Euclidean radius 1/sqrt(1+kappa^2)
  double length_closed = 0.0;  // 2 pi sigma n / sqrt(1 - 2 sigma^2)
  double energy_closed = 0.0;  // 2 L (1 - sigma^2)
  double bending_closed = 0.0; // L (1 - 2 sigma^2)
  // Values consistent with the constructed radius: the circle of
  // curvature kappa has circumference 2 pi n sigma / sqrt(1 - sigma^2),
  // an O(sigma^2) correction to the period-relation value above.  The
  // discrete curve converges to these at second order.
  double length_geom = 0.0;
  double energy_geom = 0.0;
};

SphereCounterexample sphere_counterexample(int n, int N);

// Length of the restriction of the curve to the parameter interval
// [frac0, frac1) of S^1 (node i at parameter i/N).
double restricted_length(const DiscreteClosedCurve& c, double frac0,
                         double frac1);

}  // namespace viscmm

#endif
