#ifndef VISCMM_MANIFOLD_HPP
#define VISCMM_MANIFOLD_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace viscmm {

using Vec = Eigen::VectorXd;

// Built-in target manifolds.  The sphere is the unit sphere S^m in
// R^{m+1}; the flat torus is R^q modulo the lattice spanned by the side
// lengths, represented by wrapped ambient coordinates.  The constant
// curvature kind carries only the scalar K_M for the curvature-ODE level
// and supports no embedded geometry.
class ManifoldModel {
 public:
  enum class Kind { kSphere, kFlatTorus, kConstantCurvature };

  static ManifoldModel sphere(int intrinsic_dim = 2);
  static ManifoldModel flat_torus(std::vector<double> sides);
  static ManifoldModel constant_curvature(double K_M);

  Kind kind() const { return kind_; }
  int intrinsic_dim() const { return m_; }
  int ambient_dim() const { return q_; }
  double gauss_curvature() const;  // sectional curvature constant
  const std::vector<double>& sides() const { return sides_; }

  bool is_embedded() const { return kind_ != Kind::kConstantCurvature; }

  // Retraction onto M.  Sphere: radial projection (x != 0); flat torus:
  // coordinate wrapping into [0, side_k).
  Vec project_point(const Vec& x) const;

  // Orthogonal projection of an ambient vector onto T_x M.
  Vec project_tangent(const Vec& x, const Vec& v) const;

  // Second fundamental form II(v, w) at x; normal-valued, symmetric.
  Vec second_fundamental_form(const Vec& x, const Vec& v, const Vec& w) const;

  // R(X,Y)Z = K (<Y,Z> X - <X,Z> Y) for the constant-curvature models.
  Vec riemann_curvature(const Vec& x, const Vec& X, const Vec& Y,
                        const Vec& Z) const;

  // Geodesic distance between nearby points (great-circle distance on the
  // sphere, wrapped Euclidean distance on the torus).
  double geodesic_distance(const Vec& a, const Vec& b) const;

  // Minimal ambient displacement b - a (wrapped on the torus).
  Vec displacement(const Vec& a, const Vec& b) const;

  // Distance from x to M; used by the on-manifold checks.
  double off_manifold(const Vec& x) const;

  bool operator==(const ManifoldModel& o) const;

 private:
  ManifoldModel(Kind kind, int m, int q) : kind_(kind), m_(m), q_(q) {}

  void require_embedded(const char* op) const;
  void require_on_manifold(const Vec& x, const char* op) const;

  Kind kind_;
  int m_;
  int q_;
  std::vector<double> sides_;
  double K_M_ = 0.0;
};

// Tolerance accepted by the on-manifold and tangency checks.
inline constexpr double kOnManifoldTol = 1e-8;

}  // namespace viscmm

#endif
