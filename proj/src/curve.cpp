#include "viscmm/curve.hpp"

#include <algorithm>
#include <cmath>

namespace viscmm {

namespace {

// Per-curve edge data shared by the energy, curvature and gradient loops.
struct EdgeData {
  Eigen::MatrixXd e;       // q x N, e_i = displacement node i -> i+1
  std::vector<double> n;   // chord norms |e_i|
  std::vector<double> ell;  // geodesic chord lengths
  std::vector<double> gf;   // d ell / d n
};

EdgeData compute_edges(const DiscreteClosedCurve& c) {
  const auto& X = c.nodes();
  const int N = c.size();
  const int q = static_cast<int>(X.rows());
  const bool sph = c.manifold().kind() == ManifoldModel::Kind::kSphere;
  const auto& sides = c.manifold().sides();

  EdgeData d;
  d.e.resize(q, N);
  d.n.resize(N);
  d.ell.resize(N);
  d.gf.resize(N);
  for (int i = 0; i < N; ++i) {
    const int ip = (i + 1) % N;
    for (int k = 0; k < q; ++k) {
      double dk = X(k, ip) - X(k, i);
      if (!sph) dk = std::remainder(dk, sides[k]);
      d.e(k, i) = dk;
    }
    const double nn = d.e.col(i).norm();
    d.n[i] = nn;
    if (sph) {
      const double half = std::min(1.0, 0.5 * nn);
      d.ell[i] = 2.0 * std::asin(half);
      d.gf[i] = 1.0 / std::sqrt(std::max(1e-300, 1.0 - half * half));
    } else {
      d.ell[i] = nn;
      d.gf[i] = 1.0;
    }
  }
  return d;
}

// kappa_i^2 * ds_i terms: m_i = tangential second difference at node i,
// D_i = (ell_{i-1} + ell_i)/2, w_i = |m_i|^2 / D_i^3.
struct BendingData {
  Eigen::MatrixXd m;      // q x N
  std::vector<double> a;  // <x_i, dd_i> (sphere) or 0
  std::vector<double> D;
  std::vector<double> w;
};

BendingData compute_bending(const DiscreteClosedCurve& c, const EdgeData& d) {
  const auto& X = c.nodes();
  const int N = c.size();
  const int q = static_cast<int>(X.rows());
  const bool sph = c.manifold().kind() == ManifoldModel::Kind::kSphere;

  BendingData b;
  b.m.resize(q, N);
  b.a.assign(N, 0.0);
  b.D.resize(N);
  b.w.resize(N);
  for (int i = 0; i < N; ++i) {
    const int im = (i + N - 1) % N;
    b.D[i] = 0.5 * (d.ell[im] + d.ell[i]);
    double aa = 0.0;
    for (int k = 0; k < q; ++k) {
      const double dd = d.e(k, i) - d.e(k, im);
      b.m(k, i) = dd;
      if (sph) aa += X(k, i) * dd;
    }
    if (sph) {
      b.a[i] = aa;
      for (int k = 0; k < q; ++k) b.m(k, i) -= aa * X(k, i);
    }
    const double D3 = b.D[i] * b.D[i] * b.D[i];
    b.w[i] = b.m.col(i).squaredNorm() / D3;
  }
  return b;
}

}  // namespace

DiscreteClosedCurve::DiscreteClosedCurve(ManifoldModel manifold,
                                         std::vector<Vec> nodes)
    : manifold_(std::move(manifold)) {
  const int N = static_cast<int>(nodes.size());
  if (N < 8) {
    throw std::invalid_argument("DiscreteClosedCurve: need at least 8 nodes");
  }
  const int q = manifold_.ambient_dim();
  nodes_.resize(q, N);
  for (int i = 0; i < N; ++i) {
    if (nodes[i].size() != q) {
      throw std::invalid_argument("DiscreteClosedCurve: wrong node dimension");
    }
    nodes_.col(i) = manifold_.project_point(nodes[i]);
  }
  for (int i = 0; i < N; ++i) {
    const int ip = (i + 1) % N;
    if (manifold_.displacement(nodes_.col(i), nodes_.col(ip)).norm() < 1e-12) {
      throw std::invalid_argument(
          "DiscreteClosedCurve: coincident adjacent nodes");
    }
  }
}

DiscreteClosedCurve::DiscreteClosedCurve(ManifoldModel manifold,
                                         Eigen::MatrixXd nodes)
    : DiscreteClosedCurve(std::move(manifold), [&nodes] {
        std::vector<Vec> v;
        v.reserve(nodes.cols());
        for (int i = 0; i < nodes.cols(); ++i) v.push_back(nodes.col(i));
        return v;
      }()) {}

Vec DiscreteClosedCurve::node(int i) const {
  const int N = size();
  int j = i % N;
  if (j < 0) j += N;
  return nodes_.col(j);
}

std::vector<Vec> DiscreteClosedCurve::node_list() const {
  std::vector<Vec> v;
  v.reserve(size());
  for (int i = 0; i < size(); ++i) v.push_back(nodes_.col(i));
  return v;
}

double length(const DiscreteClosedCurve& c) {
  const EdgeData d = compute_edges(c);
  double L = 0.0;
  for (double l : d.ell) L += l;
  return L;
}

std::vector<double> arclength_weights(const DiscreteClosedCurve& c) {
  const EdgeData d = compute_edges(c);
  const int N = c.size();
  std::vector<double> ds(N);
  for (int i = 0; i < N; ++i) ds[i] = 0.5 * (d.ell[(i + N - 1) % N] + d.ell[i]);
  return ds;
}

std::vector<double> geodesic_curvature(const DiscreteClosedCurve& c) {
  const EdgeData d = compute_edges(c);
  const BendingData b = compute_bending(c, d);
  const int N = c.size();
  std::vector<double> kappa(N);
  for (int i = 0; i < N; ++i) {
    kappa[i] = b.m.col(i).norm() / (b.D[i] * b.D[i]);
  }
  return kappa;
}

double energy(const DiscreteClosedCurve& c, const EnergyParams& e) {
  const EdgeData d = compute_edges(c);
  double L = 0.0;
  for (double l : d.ell) L += l;
  if (e.sigma == 0.0) return L;
  const BendingData b = compute_bending(c, d);
  double W = 0.0;
  for (double w : b.w) W += w;
  return L + e.sigma * e.sigma * W;
}

double bending(const DiscreteClosedCurve& c, const EnergyParams& e) {
  if (e.sigma == 0.0) return 0.0;
  const EdgeData d = compute_edges(c);
  const BendingData b = compute_bending(c, d);
  double W = 0.0;
  for (double w : b.w) W += w;
  return e.sigma * e.sigma * W;
}

void first_variation_into(const DiscreteClosedCurve& c, const EnergyParams& e,
                          Eigen::MatrixXd& grad) {
  const auto& X = c.nodes();
  const int N = c.size();
  const int q = static_cast<int>(X.rows());
  const bool sph = c.manifold().kind() == ManifoldModel::Kind::kSphere;
  const double s2 = e.sigma * e.sigma;

  const EdgeData d = compute_edges(c);
  grad.resize(q, N);
  grad.setZero();

  // length part: d ell_i / dx contributes +-gf_i * ehat_i
  for (int j = 0; j < N; ++j) {
    const int jm = (j + N - 1) % N;
    for (int k = 0; k < q; ++k) {
      grad(k, j) += d.gf[jm] * d.e(k, jm) / d.n[jm] - d.gf[j] * d.e(k, j) / d.n[j];
    }
  }

  if (s2 > 0.0) {
    const BendingData b = compute_bending(c, d);
    std::vector<double> B(N);  // 3 w_i / D_i
    for (int i = 0; i < N; ++i) B[i] = 3.0 * b.w[i] / b.D[i];
    for (int j = 0; j < N; ++j) {
      const int jm = (j + N - 1) % N;
      const int jp = (j + 1) % N;
      const double c_m = 2.0 / (b.D[jm] * b.D[jm] * b.D[jm]);
      const double c_p = 2.0 / (b.D[jp] * b.D[jp] * b.D[jp]);
      const double c_0 = 2.0 * (2.0 + b.a[j]) / (b.D[j] * b.D[j] * b.D[j]);
      const double f_m = 0.5 * (B[jm] + B[j]) * d.gf[jm] / d.n[jm];
      const double f_p = 0.5 * (B[j] + B[jp]) * d.gf[j] / d.n[j];
      for (int k = 0; k < q; ++k) {
        grad(k, j) += s2 * (c_m * b.m(k, jm) + c_p * b.m(k, jp) -
                            c_0 * b.m(k, j) - f_m * d.e(k, jm) + f_p * d.e(k, j));
      }
    }
  }

  if (sph) {
    for (int j = 0; j < N; ++j) {
      const double dot = X.col(j).dot(grad.col(j));
      grad.col(j) -= dot * X.col(j);
    }
  }
}

std::vector<Vec> first_variation(const DiscreteClosedCurve& c,
                                 const EnergyParams& e) {
  Eigen::MatrixXd g;
  first_variation_into(c, e, g);
  std::vector<Vec> out;
  out.reserve(c.size());
  for (int i = 0; i < c.size(); ++i) out.push_back(g.col(i));
  return out;
}

std::vector<Vec> unit_tangent(const DiscreteClosedCurve& c) {
  const int N = c.size();
  const auto& M = c.manifold();
  const auto& X = c.nodes();
  const std::vector<double> ds = arclength_weights(c);
  std::vector<Vec> T(N);
  for (int i = 0; i < N; ++i) {
    const int im = (i + N - 1) % N;
    const int ip = (i + 1) % N;
    Vec v = M.displacement(X.col(im), X.col(ip)) / (2.0 * ds[i]);
    v = M.project_tangent(X.col(i), v);
    const double nv = v.norm();
    if (nv < 1e-12) {
      throw std::runtime_error("unit_tangent: degenerate tangent");
    }
    T[i] = v / nv;
  }
  return T;
}

std::vector<Vec> discrete_covariant_derivative(const DiscreteClosedCurve& c,
                                               const std::vector<Vec>& field) {
  const int N = c.size();
  if (static_cast<int>(field.size()) != N) {
    throw std::invalid_argument(
        "discrete_covariant_derivative: field size mismatch");
  }
  const auto& M = c.manifold();
  const auto& X = c.nodes();
  if (M.kind() == ManifoldModel::Kind::kSphere) {
    for (int i = 0; i < N; ++i) {
      if (std::fabs(X.col(i).dot(field[i])) >
          kOnManifoldTol * (1.0 + field[i].norm())) {
        throw std::invalid_argument(
            "discrete_covariant_derivative: field not tangent");
      }
    }
  }
  const std::vector<double> ds = arclength_weights(c);
  std::vector<Vec> out(N);
  for (int i = 0; i < N; ++i) {
    const int im = (i + N - 1) % N;
    const int ip = (i + 1) % N;
    const Vec diff = (field[ip] - field[im]) / (2.0 * ds[i]);
    out[i] = M.project_tangent(X.col(i), diff);
  }
  return out;
}

double el_residual(const DiscreteClosedCurve& c, const EnergyParams& e) {
  const int N = c.size();
  if (N < 16) {
    throw std::invalid_argument(
        "el_residual: need N >= 16 for the fourth-order stencil");
  }
  const auto& M = c.manifold();
  const auto& X = c.nodes();
  const double s2 = e.sigma * e.sigma;

  const std::vector<Vec> ud = unit_tangent(c);
  const std::vector<Vec> A = discrete_covariant_derivative(c, ud);   // D_t udot
  const std::vector<Vec> A2 = discrete_covariant_derivative(c, A);   // D_t^2 udot
  const std::vector<double> kap = geodesic_curvature(c);

  std::vector<Vec> W(N);
  for (int i = 0; i < N; ++i) W[i] = 2.0 * A2[i] + 3.0 * kap[i] * kap[i] * ud[i];
  const std::vector<Vec> DW = discrete_covariant_derivative(c, W);

  double res = 0.0;
  for (int i = 0; i < N; ++i) {
    const Vec R = M.riemann_curvature(X.col(i), A[i], ud[i], ud[i]);
    const Vec r = A[i] - s2 * (DW[i] + 2.0 * R);
    res = std::max(res, r.norm());
  }
  return res;
}

// ---------------------------------------------------------------------------
// Arclength resampling through a periodic cubic spline.

namespace {

// Periodic cubic spline second derivatives on non-uniform knots
// t_0..t_{N-1} with period T; cyclic tridiagonal system solved by
// Sherman-Morrison over two Thomas passes.
class PeriodicSpline {
 public:
  PeriodicSpline(std::vector<double> knots, double period, Eigen::MatrixXd vals)
      : t_(std::move(knots)), T_(period), z_(std::move(vals)) {
    const int N = static_cast<int>(t_.size());
    const int q = static_cast<int>(z_.rows());
    M_.resize(q, N);
    std::vector<double> h(N);
    for (int i = 0; i < N; ++i) {
      h[i] = (i + 1 < N ? t_[i + 1] : t_[0] + T_) - t_[i];
    }
    std::vector<double> lo(N), di(N), up(N);
    Eigen::MatrixXd rhs(q, N);
    for (int i = 0; i < N; ++i) {
      const int im = (i + N - 1) % N;
      const int ip = (i + 1) % N;
      lo[i] = h[im] / 6.0;
      di[i] = (h[im] + h[i]) / 3.0;
      up[i] = h[i] / 6.0;
      rhs.col(i) = (z_.col(ip) - z_.col(i)) / h[i] -
                   (z_.col(i) - z_.col(im)) / h[im];
    }
    for (int k = 0; k < q; ++k) {
      Eigen::VectorXd r = rhs.row(k).transpose();
      M_.row(k) = solve_cyclic(lo, di, up, r).transpose();
    }
    h_ = std::move(h);
  }

  Vec eval(double t) const {
    const int N = static_cast<int>(t_.size());
    double u = std::fmod(t - t_[0], T_);
    if (u < 0.0) u += T_;
    u += t_[0];
    int i = int(std::upper_bound(t_.begin(), t_.end(), u) - t_.begin()) - 1;
    i = std::clamp(i, 0, N - 1);
    const int ip = (i + 1) % N;
    const double h = h_[i];
    const double a = (t_[i] + h - u) / h;
    const double b = (u - t_[i]) / h;
    return a * z_.col(i) + b * z_.col(ip) +
           ((a * a * a - a) * M_.col(i) + (b * b * b - b) * M_.col(ip)) *
               (h * h) / 6.0;
  }

 private:
  static Eigen::VectorXd solve_tridiag(const std::vector<double>& lo,
                                       const std::vector<double>& di,
                                       const std::vector<double>& up,
                                       Eigen::VectorXd r) {
    const int n = static_cast<int>(r.size());
    std::vector<double> c(n);
    c[0] = up[0] / di[0];
    r[0] /= di[0];
    for (int i = 1; i < n; ++i) {
      const double m = di[i] - lo[i] * c[i - 1];
      c[i] = up[i] / m;
      r[i] = (r[i] - lo[i] * r[i - 1]) / m;
    }
    for (int i = n - 2; i >= 0; --i) r[i] -= c[i] * r[i + 1];
    return r;
  }

  static Eigen::VectorXd solve_cyclic(const std::vector<double>& lo,
                                      const std::vector<double>& di,
                                      const std::vector<double>& up,
                                      const Eigen::VectorXd& r) {
    const int n = static_cast<int>(r.size());
    // Corner entries lo[0] (row 0, col n-1) and up[n-1] (row n-1, col 0).
    const double alpha = lo[0];
    const double beta = up[n - 1];
    const double gamma = -di[0];
    std::vector<double> d2(di);
    d2[0] -= gamma;
    d2[n - 1] -= alpha * beta / gamma;
    std::vector<double> lo2(lo), up2(up);
    lo2[0] = 0.0;
    up2[n - 1] = 0.0;
    Eigen::VectorXd y = solve_tridiag(lo2, d2, up2, r);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    u[0] = gamma;
    u[n - 1] = beta;
    Eigen::VectorXd zz = solve_tridiag(lo2, d2, up2, u);
    const double fact = (y[0] + alpha * y[n - 1] / gamma) /
                        (1.0 + zz[0] + alpha * zz[n - 1] / gamma);
    return y - fact * zz;
  }

  std::vector<double> t_;
  std::vector<double> h_;
  double T_;
  Eigen::MatrixXd z_;   // periodic part of the lifted nodes
  Eigen::MatrixXd M_;   // spline second derivatives
};

}  // namespace

DiscreteClosedCurve resample_arclength(const DiscreteClosedCurve& c, int Nout) {
  if (Nout < 8) {
    throw std::invalid_argument("resample_arclength: need N >= 8");
  }
  const auto& M = c.manifold();
  const auto& X = c.nodes();
  const int Nin = c.size();
  const int q = static_cast<int>(X.rows());
  const bool sph = M.kind() == ManifoldModel::Kind::kSphere;

  // Lift to a continuous representative (identity on the sphere, unwrapped
  // coordinates on the torus) and collect the chord parameter.
  Eigen::MatrixXd Z(q, Nin + 1);
  std::vector<double> t(Nin + 1, 0.0);
  Z.col(0) = X.col(0);
  for (int i = 0; i < Nin; ++i) {
    const Vec d = M.displacement(X.col(i), X.col((i + 1) % Nin));
    Z.col(i + 1) = Z.col(i) + d;
    t[i + 1] = t[i] + M.geodesic_distance(X.col(i), X.col((i + 1) % Nin));
  }
  const double T = t[Nin];
  const Vec winding = Z.col(Nin) - Z.col(0);

  Eigen::MatrixXd zper(q, Nin);
  for (int i = 0; i < Nin; ++i) {
    zper.col(i) = Z.col(i) - (t[i] / T) * winding;
  }
  const PeriodicSpline spline(std::vector<double>(t.begin(), t.end() - 1), T,
                              std::move(zper));
  auto curve_at = [&](double s) -> Vec {
    Vec p = spline.eval(s) + (s / T) * winding;
    if (sph) p /= p.norm();
    return p;
  };

  // Dense polyline along the spline.
  const int Mdense = 8 * std::max(Nin, Nout);
  Eigen::MatrixXd P(q, Mdense + 1);
  for (int k = 0; k <= Mdense; ++k) {
    P.col(k) = curve_at(T * k / Mdense);
  }
  auto dist = [&](const Vec& a, const Vec& b) {
    if (sph) return 2.0 * std::asin(std::min(1.0, 0.5 * (b - a).norm()));
    return (b - a).norm();
  };
  auto interp = [&](int seg, double lam) -> Vec {
    Vec p = (1.0 - lam) * P.col(seg) + lam * P.col(seg + 1);
    if (sph) p /= p.norm();
    return p;
  };
  double S = 0.0;
  for (int k = 0; k < Mdense; ++k) S += dist(P.col(k), P.col(k + 1));

  // March Nout equal geodesic chords from node 0; shoot on the chord so
  // the closing chord matches.
  auto march = [&](double Tc, Eigen::MatrixXd* out) {
    Vec prev = P.col(0);
    if (out) out->col(0) = prev;
    int seg = 0;
    double lam = 0.0;
    for (int j = 1; j < Nout; ++j) {
      while (seg < Mdense - 1 && dist(prev, P.col(seg + 1)) < Tc) {
        ++seg;
        lam = 0.0;
      }
      double hi = 1.0;
      double lo = lam;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (dist(prev, interp(seg, mid)) < Tc) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      lam = 0.5 * (lo + hi);
      prev = interp(seg, lam);
      if (out) out->col(j) = prev;
    }
    return dist(prev, P.col(0)) - Tc;  // closing defect
  };

  double lo = 0.5 * S / Nout;
  double hi = 1.5 * S / Nout;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (march(mid, nullptr) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  Eigen::MatrixXd out(q, Nout);
  march(0.5 * (lo + hi), &out);
  return DiscreteClosedCurve(M, std::move(out));
}

}  // namespace viscmm
