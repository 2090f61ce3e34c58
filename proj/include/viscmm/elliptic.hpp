#ifndef VISCMM_ELLIPTIC_HPP
#define VISCMM_ELLIPTIC_HPP

#include <stdexcept>

namespace viscmm {

// Elliptic modulus p, restricted to [0,1).  All elliptic routines below
// take the modulus itself (not the parameter m = p^2).
class EllipticModulus {
 public:
  explicit EllipticModulus(double p);
  double value() const { return p_; }

 private:
  double p_;
};

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

// Complete elliptic integral of the first kind,
//   K(p) = \int_0^{pi/2} dtheta / sqrt(1 - p^2 sin^2 theta),
// by the arithmetic-geometric mean iteration.
double complete_K(EllipticModulus p);

// Complete elliptic integral of the second kind,
//   E(p) = \int_0^{pi/2} sqrt(1 - p^2 sin^2 theta) dtheta,
// by the AGM iteration with the c_n correction sum.
double complete_E(EllipticModulus p);

// Incomplete integral of the first kind f_p(phi); adaptive quadrature.
double incomplete_F(double phi, EllipticModulus p);

// Jacobi sn, cn, dn at argument t.  sn and cn are 4K-periodic, dn is
// 2K-periodic.
JacobiTriple jacobi(double t, EllipticModulus p);

// Central-difference residual of  dn'' + 2 dn^3 - (2 - p^2) dn = 0
// at t with step h; a consistency check on jacobi().
double dn_ode_residual(double t, EllipticModulus p, double h);

}  // namespace viscmm

#endif
