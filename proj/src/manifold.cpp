#include "viscmm/manifold.hpp"

#include <cmath>

namespace viscmm {

ManifoldModel ManifoldModel::sphere(int intrinsic_dim) {
  if (intrinsic_dim < 2) {
    throw std::invalid_argument("sphere: intrinsic dimension must be >= 2");
  }
  return ManifoldModel(Kind::kSphere, intrinsic_dim, intrinsic_dim + 1);
}

ManifoldModel ManifoldModel::flat_torus(std::vector<double> sides) {
  if (sides.size() < 2) {
    throw std::invalid_argument("flat_torus: need at least 2 side lengths");
  }
  for (double s : sides) {
    if (!(s > 0.0)) {
      throw std::invalid_argument("flat_torus: side lengths must be positive");
    }
  }
  ManifoldModel M(Kind::kFlatTorus, static_cast<int>(sides.size()),
                  static_cast<int>(sides.size()));
  M.sides_ = std::move(sides);
  return M;
}

ManifoldModel ManifoldModel::constant_curvature(double K_M) {
  ManifoldModel M(Kind::kConstantCurvature, 2, 0);
  M.K_M_ = K_M;
  return M;
}

double ManifoldModel::gauss_curvature() const {
  switch (kind_) {
    case Kind::kSphere:
      return 1.0;
    case Kind::kFlatTorus:
      return 0.0;
    case Kind::kConstantCurvature:
      return K_M_;
  }
  return 0.0;
}

void ManifoldModel::require_embedded(const char* op) const {
  if (!is_embedded()) {
    throw std::invalid_argument(std::string(op) +
                                ": unsupported manifold kind");
  }
}

void ManifoldModel::require_on_manifold(const Vec& x, const char* op) const {
  if (off_manifold(x) > kOnManifoldTol) {
    throw std::invalid_argument(std::string(op) + ": point is off-manifold");
  }
}

double ManifoldModel::off_manifold(const Vec& x) const {
  require_embedded("off_manifold");
  if (kind_ == Kind::kSphere) return std::fabs(x.norm() - 1.0);
  return 0.0;  // every ambient point represents a torus point
}

Vec ManifoldModel::project_point(const Vec& x) const {
  require_embedded("project_point");
  if (x.size() != q_) {
    throw std::invalid_argument("project_point: wrong ambient dimension");
  }
  if (kind_ == Kind::kSphere) {
    const double r = x.norm();
    if (r < 1e-12) {
      throw std::invalid_argument("project_point: zero vector has no radial "
                                  "projection onto the sphere");
    }
    return x / r;
  }
  Vec y = x;
  for (int k = 0; k < q_; ++k) {
    y[k] = std::fmod(y[k], sides_[k]);
    if (y[k] < 0.0) y[k] += sides_[k];
  }
  return y;
}

Vec ManifoldModel::project_tangent(const Vec& x, const Vec& v) const {
  require_embedded("project_tangent");
  require_on_manifold(x, "project_tangent");
  if (kind_ == Kind::kSphere) {
    const Vec n = x / x.norm();
    return v - n.dot(v) * n;
  }
  return v;
}

Vec ManifoldModel::second_fundamental_form(const Vec& x, const Vec& v,
                                           const Vec& w) const {
  require_embedded("second_fundamental_form");
  require_on_manifold(x, "second_fundamental_form");
  if (kind_ == Kind::kSphere) {
    const Vec n = x / x.norm();
    if (std::fabs(n.dot(v)) > kOnManifoldTol * (1.0 + v.norm()) ||
        std::fabs(n.dot(w)) > kOnManifoldTol * (1.0 + w.norm())) {
      throw std::invalid_argument("second_fundamental_form: non-tangent input");
    }
    return -v.dot(w) * n;
  }
  return Vec::Zero(q_);
}

Vec ManifoldModel::riemann_curvature(const Vec& x, const Vec& X, const Vec& Y,
                                     const Vec& Z) const {
  require_embedded("riemann_curvature");
  require_on_manifold(x, "riemann_curvature");
  const double K = gauss_curvature();
  return K * (Y.dot(Z) * X - X.dot(Z) * Y);
}

double ManifoldModel::geodesic_distance(const Vec& a, const Vec& b) const {
  require_embedded("geodesic_distance");
  if (kind_ == Kind::kSphere) {
    const double c = 0.5 * (b - a).norm();
    return 2.0 * std::asin(std::min(1.0, c));
  }
  return displacement(a, b).norm();
}

Vec ManifoldModel::displacement(const Vec& a, const Vec& b) const {
  require_embedded("displacement");
  if (kind_ == Kind::kSphere) return b - a;
  Vec d = b - a;
  for (int k = 0; k < q_; ++k) {
    const double L = sides_[k];
    d[k] = std::remainder(d[k], L);
  }
  return d;
}

bool ManifoldModel::operator==(const ManifoldModel& o) const {
  return kind_ == o.kind_ && m_ == o.m_ && q_ == o.q_ && sides_ == o.sides_ &&
         K_M_ == o.K_M_;
}

}  // namespace viscmm
