#include "viscmm/hopf.hpp"

#include <cmath>

namespace viscmm {

namespace {

struct Quat {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;
};

Quat from_vec(const Vec& v) { return {v[0], v[1], v[2], v[3]}; }

Vec to_vec(const Quat& q) {
  Vec v(4);
  v << q.w, q.x, q.y, q.z;
  return v;
}

Quat mul(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quat conj(const Quat& q) { return {q.w, -q.x, -q.y, -q.z}; }

// the automorphism fixing 1, j, k and sending i to -i
Quat tilde(const Quat& q) { return {q.w, -q.x, q.y, q.z}; }

Quat scale(double s, const Quat& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }

Quat add(const Quat& a, const Quat& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

double qnorm(const Quat& q) {
  return std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
}

Quat normalized(const Quat& q) { return scale(1.0 / qnorm(q), q); }

// e^{i theta} q, the circle action
Quat rot_i(double theta, const Quat& q) {
  const Quat e{std::cos(theta), std::sin(theta), 0.0, 0.0};
  return mul(e, q);
}

// S^2 point (x1, x2, x3) embedded as x1 + x2 j + x3 k
Quat embed_s2(const Vec& v) { return {v[0], 0.0, v[1], v[2]}; }

// lambda = tilde(Gamma)^{-1} T Gamma^{-1} for the unit base tangent T;
// the lift covers the base at speed 2, so d(gamma)/ds = 2T = 2 tilde(G)
// lambda G.
Quat lift_lambda(const Quat& G, const Vec& gdot) {
  return mul(mul(conj(tilde(G)), embed_s2(gdot)), conj(G));
}

}  // namespace

Vec hopf_projection(const Vec& q) {
  if (q.size() != 4) {
    throw std::invalid_argument("hopf_projection: need a 4-vector");
  }
  if (std::fabs(q.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("hopf_projection: point is off S^3");
  }
  const Quat Q = from_vec(q);
  const Quat r = mul(tilde(Q), Q);
  Vec out(3);
  out << r.w, r.y, r.z;  // components along 1, j, k; the i-part vanishes
  return out;
}

LiftedCurve horizontal_lift(const DiscreteClosedCurve& base,
                            const Vec& basepoint) {
  if (base.manifold().kind() != ManifoldModel::Kind::kSphere ||
      base.manifold().ambient_dim() != 3) {
    throw std::invalid_argument("horizontal_lift: base must live on S^2");
  }
  if ((hopf_projection(basepoint) - base.node(0)).norm() > 1e-6) {
    throw std::invalid_argument(
        "horizontal_lift: basepoint is not in the fiber over the start");
  }
  const int N = base.size();
  const double L = length(base);
  const double ds = 0.5 * L / N;  // lift step; base node spacing is L/N

  const std::vector<Vec> tang = unit_tangent(base);
  auto gdot = [&](double frac_i) -> Vec {
    // unit tangent of the base at fractional node index
    const int i0 = static_cast<int>(std::floor(frac_i)) % N;
    const int i1 = (i0 + 1) % N;
    const double a = frac_i - std::floor(frac_i);
    Vec v = (1.0 - a) * tang[i0] + a * tang[i1];
    return v / v.norm();
  };

  LiftedCurve out;
  out.domain_length = 0.5 * L;
  out.points.reserve(N);
  Quat G = from_vec(basepoint / basepoint.norm());
  for (int i = 0; i < N; ++i) {
    out.points.push_back(to_vec(G));
    const Quat l0 = lift_lambda(G, gdot(i));
    out.lambda_span_defect = std::max(
        out.lambda_span_defect, std::sqrt(l0.w * l0.w + l0.x * l0.x));
    // RK4 on Gamma' = lambda(Gamma) Gamma, renormalized per step
    const Quat k1 = mul(l0, G);
    const Quat g2 = add(G, scale(0.5 * ds, k1));
    const Quat k2 = mul(lift_lambda(g2, gdot(i + 0.5)), g2);
    const Quat g3 = add(G, scale(0.5 * ds, k2));
    const Quat k3 = mul(lift_lambda(g3, gdot(i + 0.5)), g3);
    const Quat g4 = add(G, scale(ds, k3));
    const Quat k4 = mul(lift_lambda(g4, gdot(i + 1.0)), g4);
    G = add(G, scale(ds / 6.0,
                     add(add(k1, scale(2.0, k2)), add(scale(2.0, k3), k4))));
    G = normalized(G);
  }
  // fiber comparison of the end point against the start
  const Quat r = mul(G, conj(from_vec(out.points[0])));
  out.holonomy = std::atan2(r.x, r.w);
  out.fiber_defect = std::sqrt(r.y * r.y + r.z * r.z);
  for (int i = 0; i < N; ++i) {
    out.projection_defect =
        std::max(out.projection_defect,
                 (hopf_projection(out.points[i]) - base.node(i)).norm());
  }
  return out;
}

Vec HopfTorusGrid::wrapped(int i, int j) const {
  double phase = 0.0;
  while (i < 0) {
    i += Nt;
    phase -= holonomy;
  }
  while (i >= Nt) {
    i -= Nt;
    phase += holonomy;
  }
  int jj = j % Ntheta;
  if (jj < 0) jj += Ntheta;
  const Vec& p = points[i * Ntheta + jj];
  if (phase == 0.0) return p;
  return to_vec(rot_i(phase, from_vec(p)));
}

HopfTorusGrid hopf_torus(const LiftedCurve& lifted, int Ntheta) {
  if (Ntheta < 8) {
    throw std::invalid_argument("hopf_torus: need at least 8 fiber samples");
  }
  HopfTorusGrid grid;
  grid.Nt = static_cast<int>(lifted.points.size());
  grid.Ntheta = Ntheta;
  grid.dt = lifted.domain_length / grid.Nt;
  grid.dtheta = 2.0 * M_PI / Ntheta;
  grid.holonomy = lifted.holonomy;
  grid.points.reserve(grid.Nt * Ntheta);
  for (int i = 0; i < grid.Nt; ++i) {
    const Quat G = from_vec(lifted.points[i]);
    for (int j = 0; j < Ntheta; ++j) {
      grid.points.push_back(to_vec(rot_i(grid.dtheta * j, G)));
    }
  }
  return grid;
}

namespace {

// normal to the surface within T S^3: the 4D cross product of Gamma,
// Gamma_t, Gamma_theta
Vec normal4(const Vec& a, const Vec& b, const Vec& c) {
  Vec n(4);
  auto det3 = [](double a1, double a2, double a3, double b1, double b2,
                 double b3, double c1, double c2, double c3) {
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) +
           a3 * (b1 * c2 - b2 * c1);
  };
  n[0] = det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]);
  n[1] = -det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]);
  n[2] = det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]);
  n[3] = -det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]);
  return n;
}

struct GridForms {
  Eigen::MatrixXd E, F, G, area;  // first fundamental form and dA density
  Eigen::MatrixXd H, K;
};

GridForms grid_forms(const HopfTorusGrid& g) {
  GridForms f;
  f.E.resize(g.Nt, g.Ntheta);
  f.F.resize(g.Nt, g.Ntheta);
  f.G.resize(g.Nt, g.Ntheta);
  f.area.resize(g.Nt, g.Ntheta);
  f.H.resize(g.Nt, g.Ntheta);
  f.K.resize(g.Nt, g.Ntheta);
  for (int i = 0; i < g.Nt; ++i) {
    for (int j = 0; j < g.Ntheta; ++j) {
      const Vec p = g.at(i, j);
      const Vec pt = (g.wrapped(i + 1, j) - g.wrapped(i - 1, j)) / (2.0 * g.dt);
      const Vec pq = (g.wrapped(i, j + 1) - g.wrapped(i, j - 1)) / (2.0 * g.dtheta);
      const Vec ptt = (g.wrapped(i + 1, j) - 2.0 * p + g.wrapped(i - 1, j)) /
                      (g.dt * g.dt);
      const Vec pqq = (g.wrapped(i, j + 1) - 2.0 * p + g.wrapped(i, j - 1)) /
                      (g.dtheta * g.dtheta);
      const Vec ptq = (g.wrapped(i + 1, j + 1) - g.wrapped(i + 1, j - 1) -
                       g.wrapped(i - 1, j + 1) + g.wrapped(i - 1, j - 1)) /
                      (4.0 * g.dt * g.dtheta);
      Vec n = normal4(p, pt, pq);
      n /= n.norm();
      const double E = pt.dot(pt), F = pt.dot(pq), G = pq.dot(pq);
      const double L = ptt.dot(n), M = ptq.dot(n), N2 = pqq.dot(n);
      const double det = E * G - F * F;
      f.E(i, j) = E;
      f.F(i, j) = F;
      f.G(i, j) = G;
      f.area(i, j) = std::sqrt(std::max(0.0, det));
      f.H(i, j) = (G * L - 2.0 * F * M + E * N2) / (2.0 * det);
      f.K(i, j) = (L * N2 - M * M) / det;
    }
  }
  return f;
}

}  // namespace

TorusCurvatures torus_curvatures(const HopfTorusGrid& grid,
                                 const std::vector<double>& base_kappa) {
  if (!base_kappa.empty() &&
      static_cast<int>(base_kappa.size()) != grid.Nt) {
    throw std::invalid_argument(
        "torus_curvatures: base curvature has the wrong length");
  }
  const GridForms f = grid_forms(grid);
  TorusCurvatures out;
  out.H = f.H;
  out.K = f.K;
  for (int i = 0; i < grid.Nt; ++i) {
    for (int j = 0; j < grid.Ntheta; ++j) {
      out.max_K_defect = std::max(out.max_K_defect, std::fabs(f.K(i, j) + 1.0));
      if (!base_kappa.empty()) {
        out.max_H_defect = std::max(
            out.max_H_defect, std::fabs(std::fabs(f.H(i, j)) - base_kappa[i]));
      }
    }
  }
  return out;
}

double willmore_sigma(const HopfTorusGrid& grid, double sigma) {
  const GridForms f = grid_forms(grid);
  double W = 0.0;
  for (int i = 0; i < grid.Nt; ++i) {
    for (int j = 0; j < grid.Ntheta; ++j) {
      W += (1.0 + sigma * sigma * f.H(i, j) * f.H(i, j)) * f.area(i, j);
    }
  }
  return W * grid.dt * grid.dtheta;
}

double willmore_residual(const HopfTorusGrid& grid, double sigma) {
  const GridForms f = grid_forms(grid);
  double res = 0.0;
  for (int i = 0; i < grid.Nt; ++i) {
    const int im = (i + grid.Nt - 1) % grid.Nt;
    const int ip = (i + 1) % grid.Nt;
    for (int j = 0; j < grid.Ntheta; ++j) {
      const int jm = (j + grid.Ntheta - 1) % grid.Ntheta;
      const int jp = (j + 1) % grid.Ntheta;
      // H is invariant under the fiber rotation, so plain periodic wrap
      const double ltt =
          (f.H(ip, j) - 2.0 * f.H(i, j) + f.H(im, j)) / (grid.dt * grid.dt);
      const double lqq = (f.H(i, jp) - 2.0 * f.H(i, j) + f.H(i, jm)) /
                         (grid.dtheta * grid.dtheta);
      const double lap = ltt + lqq;
      const double H = f.H(i, j), K = f.K(i, j);
      res = std::max(res, std::fabs(2.0 * H - sigma * sigma *
                                               (lap + 2.0 * H * (H * H - 2.0 * K))));
    }
  }
  return res;
}

double area_energy(const HopfTorusGrid& grid, double sigma,
                   const std::vector<double>& base_kappa) {
  if (static_cast<int>(base_kappa.size()) != grid.Nt) {
    throw std::invalid_argument(
        "area_energy: base curvature has the wrong length");
  }
  const GridForms f = grid_forms(grid);
  double A = 0.0;
  for (int i = 0; i < grid.Nt; ++i) {
    const double II2 = 2.0 + 4.0 * base_kappa[i] * base_kappa[i];
    for (int j = 0; j < grid.Ntheta; ++j) {
      A += (1.0 + sigma * sigma * II2) * f.area(i, j);
    }
  }
  return A * grid.dt * grid.dtheta;
}

}  // namespace viscmm
