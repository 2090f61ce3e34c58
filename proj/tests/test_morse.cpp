#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "viscmm/flow.hpp"
#include "viscmm/morse.hpp"

using namespace viscmm;
using testutil::equator;
using testutil::sphere_circle;

namespace {

DiscreteClosedCurve torus_line(int N, double side = 2.0 * M_PI) {
  std::vector<Vec> nodes;
  for (int i = 0; i < N; ++i) {
    Vec x(2);
    x << side * i / N, 0.4;
    nodes.push_back(x);
  }
  return DiscreteClosedCurve(ManifoldModel::flat_torus({side, side}),
                             std::move(nodes));
}

// normal field phi(t) * e_z on a latitude-zero circle, flattened
Eigen::VectorXd z_field(int N, int j, bool use_sin = false) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(3 * N);
  for (int i = 0; i < N; ++i) {
    const double t = 2.0 * M_PI * i / N;
    v[3 * i + 2] = use_sin ? std::sin(j * t) : std::cos(j * t);
  }
  return v;
}

}  // namespace

TEST_CASE("hessian symmetry and critical flag") {
  const auto H = hessian(equator(64), EnergyParams(0.1));
  CHECK((H.H - H.H.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(H.critical);
  CHECK(H.critical_defect < 1e-8);

  const auto Hlat = hessian(sphere_circle(64, 0.5), EnergyParams(0.0));
  CHECK_FALSE(Hlat.critical);  // latitude circle is not critical
}

TEST_CASE("hessian matches finite differences of the gradient") {
  const auto c = equator(48);
  for (double s : {0.0, 0.1}) {
    const EnergyParams e(s);
    const auto H = hessian(c, e);
    const double h = 1e-5;
    for (int jn : {0, 7, 23}) {
      for (int k = 0; k < 3; ++k) {
        auto plus = c.node_list();
        auto minus = c.node_list();
        plus[jn][k] += h;
        minus[jn][k] -= h;
        const auto gp = first_variation(
            DiscreteClosedCurve(c.manifold(), std::move(plus)), e);
        const auto gm = first_variation(
            DiscreteClosedCurve(c.manifold(), std::move(minus)), e);
        for (int i = 0; i < c.size(); ++i) {
          for (int l = 0; l < 3; ++l) {
            const double fd = (gp[i][l] - gm[i][l]) / (2.0 * h);
            CHECK(std::fabs(H.H(3 * i + l, 3 * jn + k) - fd) < 1e-5);
          }
        }
      }
    }
  }
}

TEST_CASE("hessian-gradient consistency along random tangents") {
  const auto c = equator(48);
  const EnergyParams e(0.1);
  const auto H = hessian(c, e);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  Eigen::VectorXd delta(3 * 48);
  for (int i = 0; i < 48; ++i) {
    Vec d(3);
    d << nd(rng), nd(rng), nd(rng);
    delta.segment(3 * i, 3) = c.manifold().project_tangent(c.node(i), d);
  }
  delta.normalize();
  const double h = 1e-5;
  auto plus = c.node_list();
  auto minus = c.node_list();
  for (int i = 0; i < 48; ++i) {
    plus[i] += h * Vec(delta.segment(3 * i, 3));
    minus[i] -= h * Vec(delta.segment(3 * i, 3));
  }
  const auto gp =
      first_variation(DiscreteClosedCurve(c.manifold(), std::move(plus)), e);
  const auto gm =
      first_variation(DiscreteClosedCurve(c.manifold(), std::move(minus)), e);
  const Eigen::VectorXd Hd = H.H * delta;
  for (int i = 0; i < 48; ++i) {
    const Vec fd = (gp[i] - gm[i]) / (2.0 * h);
    CHECK((Vec(Hd.segment(3 * i, 3)) - fd).norm() < 1e-5);
  }
}

TEST_CASE("quadratic form matches the continuum E_0 form on smooth fields") {
  const int N = 1024;
  const auto c = equator(N);
  const auto H = hessian(c, EnergyParams(0.0));
  for (int j : {0, 1, 2, 3}) {
    const Eigen::VectorXd v = z_field(N, j);
    // discrete sum approximates the integral with weight h = 2 pi / N
    const double form = v.dot(H.H * v);
    const double expect = (j == 0 ? -2.0 * M_PI : M_PI * (j * j - 1.0));
    if (j == 1) {
      CHECK(std::fabs(form) < 1e-6);  // rotation zero mode
    } else {
      CHECK(std::fabs(form - expect) / std::fabs(expect) < 1e-4);
    }
  }
}

TEST_CASE("reparametrization fields are near zero modes") {
  const int N = 256;
  const auto c = equator(N);
  const auto H = hessian(c, EnergyParams(0.0));
  Eigen::VectorXd v(3 * N);
  const auto T = unit_tangent(c);
  for (int i = 0; i < N; ++i) {
    const double t = 2.0 * M_PI * i / N;
    v.segment(3 * i, 3) = (1.0 + 0.5 * std::sin(3.0 * t)) * T[i];
  }
  CHECK(std::fabs(v.dot(H.H * v)) < 1e-10 * v.squaredNorm());
}

TEST_CASE("morse index of the equator and its covers") {
  for (int N : {128, 256}) {
    const auto rep = morse_index(equator(N), EnergyParams(0.0));
    CHECK(rep.index == 1);
    CHECK(rep.structural_zero_modes == N);
    CHECK(rep.zero_modes >= N);  // radial zeros plus geometric ones
  }
  CHECK(morse_index(sphere_circle(256, 0.0, 2), EnergyParams(0.0)).index == 3);
  CHECK(morse_index(sphere_circle(256, 0.0, 3), EnergyParams(0.0)).index == 5);
}

TEST_CASE("flat torus geodesic has index 0") {
  for (int N : {128, 256}) {
    const auto rep = morse_index(torus_line(N), EnergyParams(0.0));
    CHECK(rep.index == 0);
    CHECK(rep.structural_zero_modes == 0);
    CHECK(rep.zero_modes >= 2);  // translations
  }
}

TEST_CASE("semicontinuity report") {
  const int N = 96;
  // constant sequence: equality case
  {
    std::vector<std::pair<DiscreteClosedCurve, double>> seq;
    for (double s : {0.1, 0.05, 0.025}) seq.emplace_back(equator(N), s);
    const auto rep = semicontinuity_report(seq, equator(N));
    CHECK(rep.limit_index == 1);
    CHECK(rep.semicontinuous);
    for (const auto& e : rep.entries) CHECK(e.index == 1);
  }
  // relaxed perturbed equators
  {
    std::vector<std::pair<DiscreteClosedCurve, double>> seq;
    FlowOptions o;
    o.grad_tol = 1e-8;
    o.max_iters = 4000;
    for (double s : {0.1, 0.05, 0.025}) {
      auto [c, r] = relax(testutil::perturb(equator(N), 1e-3, 9),
                          EnergyParams(s), o);
      seq.emplace_back(c, s);
    }
    const auto rep = semicontinuity_report(seq, equator(N));
    CHECK(rep.limit_index == 1);
    CHECK(rep.semicontinuous);
    // projected form values approach the limit values for the smallest sigma
    REQUIRE(rep.limit_form_values.size() == 1);
    const double lim = rep.limit_form_values[0];
    const double last = rep.entries.back().projected_form_values[0];
    CHECK(std::fabs(last - lim) / std::fabs(lim) < 0.05);
  }
}
