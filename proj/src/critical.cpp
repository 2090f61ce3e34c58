#include "viscmm/critical.hpp"

#include <cmath>

namespace viscmm {

EllipticProfile::EllipticProfile(EllipticModulus p, double sigma, double K_M,
                                 int m)
    : p_(p), sigma_(sigma), K_M_(K_M), m_(m) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("EllipticProfile: sigma must be positive");
  }
  if (m < 1) {
    throw std::invalid_argument("EllipticProfile: winding m must be >= 1");
  }
  const double amp2 = 1.0 - 2.0 * sigma * sigma * K_M;
  if (!(amp2 > 0.0)) {
    throw std::invalid_argument(
        "EllipticProfile: need 1 - 2 sigma^2 K_M > 0 for a real amplitude");
  }
  C_ = std::sqrt(amp2 / (2.0 * (2.0 - p.value() * p.value())));
}

double EllipticProfile::amplitude() const { return 2.0 * C_ / sigma_; }

double curvature_profile(const EllipticProfile& prof, double t) {
  const double arg = prof.C() * t / prof.sigma();
  return prof.amplitude() * jacobi(arg, prof.modulus()).dn;
}

double period_length(const EllipticProfile& prof) {
  return 2.0 * prof.sigma() * prof.winding() * complete_K(prof.modulus()) /
         prof.C();
}

double bending_integral(const EllipticProfile& prof) {
  return 8.0 * prof.sigma() * prof.winding() * prof.C() *
         complete_E(prof.modulus());
}

double epsilon_ratio(EllipticModulus p) {
  const double ratio = 2.0 / (2.0 - p.value() * p.value()) * complete_E(p) /
                       complete_K(p);
  return 1.0 / (1.0 + ratio);
}

std::pair<double, double> comparison_bounds(double sigma, double K_plus,
                                            double K_minus, EllipticModulus p,
                                            double t) {
  if (K_minus > K_plus) {
    throw std::invalid_argument("comparison_bounds: need K_minus <= K_plus");
  }
  const EllipticProfile lo(p, sigma, K_plus, 1);
  const EllipticProfile hi(p, sigma, K_minus, 1);
  return {curvature_profile(lo, t), curvature_profile(hi, t)};
}

SphereCounterexample sphere_counterexample(int n, int N) {
  if (n < 1) {
    throw std::invalid_argument("sphere_counterexample: n must be >= 1");
  }
  if (N < 64 * n) {
    throw std::invalid_argument("sphere_counterexample: need N >= 64 n");
  }
  const double sigma = 1.0 / (4.0 * n);
  const double kappa = std::sqrt(1.0 - 2.0 * sigma * sigma) / sigma;
  const double r = 1.0 / std::sqrt(1.0 + kappa * kappa);
  const double h = std::sqrt(1.0 - r * r);
  std::vector<Vec> nodes;
  nodes.reserve(N);
  for (int i = 0; i < N; ++i) {
    const double th = 2.0 * M_PI * n * i / N;
    Vec x(3);
    x << r * std::cos(th), r * std::sin(th), h;
    nodes.push_back(x);
  }
  SphereCounterexample out{
      DiscreteClosedCurve(ManifoldModel::sphere(), std::move(nodes)), n};
  out.sigma = sigma;
  out.kappa = kappa;
  out.radius = r;
  out.length_closed = 2.0 * M_PI * sigma * n / std::sqrt(1.0 - 2.0 * sigma * sigma);
  out.energy_closed = 2.0 * out.length_closed * (1.0 - sigma * sigma);
  out.bending_closed = out.length_closed * (1.0 - 2.0 * sigma * sigma);
  out.length_geom = 2.0 * M_PI * n * r;
  out.energy_geom = 2.0 * out.length_geom * (1.0 - sigma * sigma);
  return out;
}

double restricted_length(const DiscreteClosedCurve& c, double frac0,
                         double frac1) {
  if (!(frac0 < frac1) || frac0 < 0.0 || frac1 > 1.0) {
    throw std::invalid_argument("restricted_length: need 0 <= f0 < f1 <= 1");
  }
  const int N = c.size();
  const auto& M = c.manifold();
  double L = 0.0;
  for (int i = 0; i < N; ++i) {
    const double f = double(i) / N;
    if (f >= frac0 && (f + 1.0 / N) <= frac1) {
      L += M.geodesic_distance(c.node(i), c.node(i + 1));
    }
  }
  return L;
}

}  // namespace viscmm
