#include "viscmm/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace viscmm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

// Adaptive Simpson with absolute tolerance, recursion on [a,b].  The
// local tolerance never drops below the rounding floor of the partial
// sums, so sharp integrands cannot force an exponential subdivision.
template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const double floor_tol = 8.0 * kEps * (std::fabs(left) + std::fabs(right));
  if (depth <= 0 || std::fabs(delta) <= 15.0 * std::max(tol, floor_tol)) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fm = f(0.5 * (a + b));
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 30);
}

}  // namespace

EllipticModulus::EllipticModulus(double p) : p_(p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::domain_error("elliptic modulus must satisfy 0 <= p < 1");
  }
}

double complete_K(EllipticModulus p) {
  double a = 1.0;
  double b = std::sqrt(1.0 - p.value() * p.value());
  while (std::fabs(a - b) > 2.0 * kEps * a) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return M_PI / (a + b);
}

double complete_E(EllipticModulus p) {
  double a = 1.0;
  double b = std::sqrt(1.0 - p.value() * p.value());
  double c = p.value();
  double sum = 0.5 * c * c;
  double pow2 = 1.0;
  while (std::fabs(c) > kEps * a) {
    c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    sum += pow2 * c * c;
    pow2 *= 2.0;
  }
  const double K = M_PI / (a + b);
  return K * (1.0 - sum);
}

double incomplete_F(double phi, EllipticModulus p) {
  if (!std::isfinite(phi)) {
    throw std::domain_error("incomplete_F: phi must be finite");
  }
  const double pp = p.value() * p.value();
  auto f = [pp](double th) {
    return 1.0 / std::sqrt(1.0 - pp * std::sin(th) * std::sin(th));
  };
  if (phi == 0.0) return 0.0;
  const double sgn = phi < 0.0 ? -1.0 : 1.0;
  return sgn * adaptive_simpson(f, 0.0, std::fabs(phi), 1e-13);
}

JacobiTriple jacobi(double t, EllipticModulus p) {
  if (!std::isfinite(t)) {
    throw std::domain_error("jacobi: t must be finite");
  }
  const double m = p.value() * p.value();

  if (m < 1e-16) {
    return {std::sin(t), std::cos(t), 1.0};
  }
  if (m < 1e-9) {
    // First Landen correction, enough for full precision at tiny m.
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double ai = 0.25 * m * (t - s * c);
    return {s - ai * c, c + ai * s, 1.0 - 0.5 * m * s * s};
  }

  // Reduce the argument modulo the full period 4K to keep the AGM phase
  // small; sn, cn are 4K-periodic and dn is 2K-periodic.
  const double K4 = 4.0 * complete_K(p);
  double u = std::fmod(t, K4);
  if (u < 0.0) u += K4;
  u -= 0.5 * K4;  // u in [-2K, 2K); shift back below
  // sn(u + 2K) = -sn(u), cn(u + 2K) = -cn(u), dn(u + 2K) = dn(u)
  const bool flip = true;  // we evaluate at u and undo the 2K shift

  // AGM scale
  double a[64];
  double c[64];
  a[0] = 1.0;
  c[0] = p.value();
  double b = std::sqrt(1.0 - m);
  int n = 0;
  while (std::fabs(c[n] / a[n]) > kEps && n < 62) {
    const double an = a[n];
    ++n;
    c[n] = 0.5 * (an - b);
    a[n] = 0.5 * (an + b);
    b = std::sqrt(an * b);
  }

  // Backward phase recursion (Abramowitz & Stegun 16.4).  dn is taken
  // from the identity dn^2 = 1 - m sn^2; the textbook ratio
  // cn/cos(phi0 - phi1) is 0/0 near odd multiples of K.
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i >= 1; --i) {
    phi = 0.5 * (std::asin(clamp1(c[i] * std::sin(phi) / a[i])) + phi);
  }
  double sn = std::sin(phi);
  double cn = std::cos(phi);
  const double dn = std::sqrt(1.0 - m * sn * sn);
  if (flip) {
    sn = -sn;
    cn = -cn;
  }
  return {sn, cn, dn};
}

double dn_ode_residual(double t, EllipticModulus p, double h) {
  if (!(h > 0.0)) {
    throw std::domain_error("dn_ode_residual: h must be positive");
  }
  const double dm = jacobi(t - h, p).dn;
  const double d0 = jacobi(t, p).dn;
  const double dp = jacobi(t + h, p).dn;
  const double ddot2 = (dp - 2.0 * d0 + dm) / (h * h);
  const double pp = p.value() * p.value();
  return ddot2 + 2.0 * d0 * d0 * d0 - (2.0 - pp) * d0;
}

}  // namespace viscmm
