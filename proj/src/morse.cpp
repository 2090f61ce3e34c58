#include "viscmm/morse.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "energy_model.hpp"

namespace viscmm {

namespace {

// Second-order forward jet over D seed variables.
struct Jet2 {
  double v = 0.0;
  Eigen::VectorXd g;
  Eigen::MatrixXd H;

  Jet2() = default;
  explicit Jet2(int dim)
      : g(Eigen::VectorXd::Zero(dim)), H(Eigen::MatrixXd::Zero(dim, dim)) {}
};

int jdim(const Jet2& a) { return static_cast<int>(a.g.size()); }

Jet2 jconst(double v, int dim) {
  Jet2 r(dim);
  r.v = v;
  return r;
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r.v += b.v;
  r.g += b.g;
  r.H += b.H;
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r.v -= b.v;
  r.g -= b.g;
  r.H -= b.H;
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r(jdim(a));
  r.v = a.v * b.v;
  r.g = a.g * b.v + b.g * a.v;
  r.H = a.H * b.v + b.H * a.v + a.g * b.g.transpose() + b.g * a.g.transpose();
  return r;
}

Jet2 operator*(double s, const Jet2& a) {
  Jet2 r = a;
  r.v *= s;
  r.g *= s;
  r.H *= s;
  return r;
}
Jet2 operator*(const Jet2& a, double s) { return s * a; }
Jet2 operator-(const Jet2& a, double s) {
  Jet2 r = a;
  r.v -= s;
  return r;
}

// Chain rule for f(a): f', f''.
Jet2 unary(const Jet2& a, double f, double fp, double fpp) {
  Jet2 r(jdim(a));
  r.v = f;
  r.g = fp * a.g;
  r.H = fp * a.H + fpp * (a.g * a.g.transpose());
  return r;
}

Jet2 sqrt(const Jet2& a) {
  const double s = std::sqrt(a.v);
  return unary(a, s, 0.5 / s, -0.25 / (s * a.v));
}

Jet2 asin(const Jet2& a) {
  const double d = 1.0 - a.v * a.v;
  const double rd = 1.0 / std::sqrt(d);
  return unary(a, std::asin(a.v), rd, a.v * rd / d);
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double inv = 1.0 / b.v;
  return a * unary(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

double scalar_value(const Jet2& a) { return a.v; }

}  // namespace

HessianMatrix hessian(const DiscreteClosedCurve& c, const EnergyParams& e) {
  const int N = c.size();
  const int q = c.manifold().ambient_dim();
  const bool sph = c.manifold().kind() == ManifoldModel::Kind::kSphere;
  const auto& sides = c.manifold().sides();
  const double* sp = sides.empty() ? nullptr : sides.data();
  const int D = 3 * q;

  HessianMatrix out;
  out.sigma = e.sigma;
  out.H = Eigen::MatrixXd::Zero(N * q, N * q);

  std::vector<Jet2> xm(q), x0(q), xp(q);
  for (int i = 0; i < N; ++i) {
    const int im = (i + N - 1) % N;
    const int ip = (i + 1) % N;
    for (int k = 0; k < q; ++k) {
      xm[k] = jconst(c.node(im)[k], D);
      xm[k].g[k] = 1.0;
      x0[k] = jconst(c.node(i)[k], D);
      x0[k].g[q + k] = 1.0;
      xp[k] = jconst(c.node(ip)[k], D);
      xp[k].g[2 * q + k] = 1.0;
    }
    const Jet2 term = detail::node_term<Jet2>(
        sph, sp, q, e.sigma * e.sigma, xm.data(), x0.data(), xp.data());
    const int nodes[3] = {im, i, ip};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        out.H.block(nodes[a] * q, nodes[b] * q, q, q) +=
            term.H.block(a * q, b * q, q, q);
      }
    }
  }
  out.H = 0.5 * (out.H + out.H.transpose()).eval();

  double defect = 0.0;
  for (const auto& g : first_variation(c, e)) defect = std::max(defect, g.norm());
  out.critical_defect = defect;
  out.critical = defect <= 1e-4;
  return out;
}

IndexReport morse_index(const HessianMatrix& Hm, double eig_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hm.H,
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("morse_index: eigensolver failed");
  }
  IndexReport rep;
  rep.eigenvalues = es.eigenvalues();
  const double lam_max = std::max(std::fabs(rep.eigenvalues.minCoeff()),
                                  std::fabs(rep.eigenvalues.maxCoeff()));
  rep.eig_tol = eig_tol > 0.0 ? eig_tol : 1e-6 * lam_max;
  for (int i = 0; i < rep.eigenvalues.size(); ++i) {
    const double lam = rep.eigenvalues[i];
    if (lam < -rep.eig_tol) {
      ++rep.index;
    } else if (lam <= rep.eig_tol) {
      ++rep.zero_modes;
    }
  }
  return rep;
}

IndexReport morse_index(const DiscreteClosedCurve& c, const EnergyParams& e,
                        double eig_tol) {
  auto rep = morse_index(hessian(c, e), eig_tol);
  const int codim = c.manifold().ambient_dim() - c.manifold().intrinsic_dim();
  rep.structural_zero_modes = codim * c.size();
  return rep;
}

SemicontinuityReport semicontinuity_report(
    const std::vector<std::pair<DiscreteClosedCurve, double>>& seq,
    const DiscreteClosedCurve& limit) {
  const int N = limit.size();
  const int q = limit.manifold().ambient_dim();
  for (const auto& [c, s] : seq) {
    if (c.size() != N || c.manifold().ambient_dim() != q) {
      throw std::invalid_argument(
          "semicontinuity_report: mismatched discretizations");
    }
  }

  SemicontinuityReport rep;
  const HessianMatrix H0 = hessian(limit, EnergyParams(0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H0.H);
  const Eigen::VectorXd lam = es.eigenvalues();
  IndexReport limit_idx = morse_index(H0);
  rep.limit_index = limit_idx.index;

  // negative directions of the limit, as per-node tangent fields
  std::vector<Eigen::VectorXd> dirs;
  for (int i = 0; i < lam.size(); ++i) {
    if (lam[i] < -limit_idx.eig_tol) {
      dirs.push_back(es.eigenvectors().col(i));
      rep.limit_form_values.push_back(lam[i]);
    }
  }

  int min_tail = std::numeric_limits<int>::max();
  for (const auto& [c, s] : seq) {
    const EnergyParams e(s);
    const HessianMatrix Hn = hessian(c, e);
    SemicontinuityEntry entry;
    entry.sigma = s;
    const IndexReport ir = morse_index(Hn);
    entry.index = ir.index;
    entry.zero_modes = ir.zero_modes;
    for (const auto& v : dirs) {
      Eigen::VectorXd vn(N * q);
      for (int i = 0; i < N; ++i) {
        const Vec proj = c.manifold().project_tangent(
            c.node(i), Vec(v.segment(i * q, q)));
        vn.segment(i * q, q) = proj;
      }
      entry.projected_form_values.push_back(vn.dot(Hn.H * vn));
    }
    min_tail = std::min(min_tail, entry.index);
    rep.entries.push_back(std::move(entry));
  }
  rep.semicontinuous = seq.empty() || rep.limit_index <= min_tail;
  return rep;
}

}  // namespace viscmm
