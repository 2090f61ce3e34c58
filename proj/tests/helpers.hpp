#ifndef VISCMM_TESTS_HELPERS_HPP
#define VISCMM_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "viscmm/curve.hpp"

namespace testutil {

using viscmm::DiscreteClosedCurve;
using viscmm::ManifoldModel;
using viscmm::Vec;

// Latitude circle x3 = height on the unit 2-sphere, n_fold windings,
// optionally with a smooth non-uniform parametrization.
inline DiscreteClosedCurve sphere_circle(int N, double height, int n_fold = 1,
                                         double warp = 0.0) {
  const double r = std::sqrt(1.0 - height * height);
  std::vector<Vec> nodes;
  nodes.reserve(N);
  for (int i = 0; i < N; ++i) {
    double s = double(i) / N;
    s += warp * std::sin(2.0 * M_PI * s) / (2.0 * M_PI);
    const double th = 2.0 * M_PI * n_fold * s;
    Vec x(3);
    x << r * std::cos(th), r * std::sin(th), height;
    nodes.push_back(x);
  }
  return DiscreteClosedCurve(ManifoldModel::sphere(), std::move(nodes));
}

inline DiscreteClosedCurve equator(int N) { return sphere_circle(N, 0.0); }

// Planar circle of the given radius inside a flat square torus.
inline DiscreteClosedCurve torus_circle(int N, double radius,
                                        double side = 2.0 * M_PI) {
  std::vector<Vec> nodes;
  nodes.reserve(N);
  for (int i = 0; i < N; ++i) {
    const double th = 2.0 * M_PI * i / N;
    Vec x(2);
    x << side / 2 + radius * std::cos(th), side / 2 + radius * std::sin(th);
    nodes.push_back(x);
  }
  return DiscreteClosedCurve(ManifoldModel::flat_torus({side, side}),
                             std::move(nodes));
}

// Perturb every node by iid uniform noise of the given amplitude and
// re-project.  When zero_mean is set the ambient mean of the displacement
// is removed (twice, interleaved with projection), which keeps the
// perturbation transverse to the slow translation mode of circles.
inline DiscreteClosedCurve perturb(const DiscreteClosedCurve& c, double amp,
                                   unsigned seed, bool zero_mean = true) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> un(-1.0, 1.0);
  const int N = c.size();
  const int q = c.manifold().ambient_dim();
  std::vector<Vec> nodes = c.node_list();
  Vec mean = Vec::Zero(q);
  std::vector<Vec> noise(N);
  for (int i = 0; i < N; ++i) {
    noise[i] = Vec::NullaryExpr(q, [&](Eigen::Index) { return amp * un(rng); });
    mean += noise[i] / N;
  }
  if (zero_mean) {
    for (int i = 0; i < N; ++i) noise[i] -= mean;
  }
  for (int i = 0; i < N; ++i) {
    nodes[i] = c.manifold().project_point(nodes[i] + noise[i]);
  }
  if (zero_mean) {
    Vec drift = Vec::Zero(q);
    for (int i = 0; i < N; ++i) drift += (nodes[i] - c.node(i)) / N;
    for (int i = 0; i < N; ++i) {
      nodes[i] = c.manifold().project_point(nodes[i] - drift);
    }
  }
  return DiscreteClosedCurve(c.manifold(), std::move(nodes));
}

// Independent quadrature oracle (recursive Simpson); shares nothing with
// the library integrator.
template <typename F>
inline double oracle_simpson(const F& f, double a, double b, int depth = 26,
                             double tol = 1e-12) {
  const double m = 0.5 * (a + b);
  auto s = [&](double x0, double x1) {
    return (x1 - x0) / 6.0 * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
  };
  const double whole = s(a, b);
  const double split = s(a, m) + s(m, b);
  const double floor_tol = 1e-15 * std::fabs(split);
  if (depth <= 0 || std::fabs(split - whole) < std::max(tol, floor_tol)) {
    return split;
  }
  return oracle_simpson(f, a, m, depth - 1, tol / 2) +
         oracle_simpson(f, m, b, depth - 1, tol / 2);
}

// Central finite differences of the discrete energy with respect to one
// ambient node coordinate; the energy itself is the oracle.
inline double fd_energy_derivative(const DiscreteClosedCurve& c,
                                   const viscmm::EnergyParams& e, int node,
                                   int coord, double h = 1e-6) {
  std::vector<Vec> plus = c.node_list();
  std::vector<Vec> minus = c.node_list();
  plus[node][coord] += h;
  minus[node][coord] -= h;
  const double Ep =
      viscmm::energy(DiscreteClosedCurve(c.manifold(), std::move(plus)), e);
  const double Em =
      viscmm::energy(DiscreteClosedCurve(c.manifold(), std::move(minus)), e);
  return (Ep - Em) / (2.0 * h);
}

}  // namespace testutil

#endif
