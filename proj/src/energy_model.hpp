#ifndef VISCMM_SRC_ENERGY_MODEL_HPP
#define VISCMM_SRC_ENERGY_MODEL_HPP

#include <cmath>

// Internal: the discrete energy written as a sum of per-node stencil
// terms over (x_{i-1}, x_i, x_{i+1}), templated on the scalar type so
// second-order forward jets can differentiate it exactly.  Must mirror
// the loops in curve.cpp term for term.

namespace viscmm::detail {

inline double scalar_value(double x) { return x; }

template <typename S>
struct Vec4 {
  S c[4];
};

// term_i = ell(x_i, x_{i+1}) + sigma^2 |m_i|^2 / D_i^3  with
//   m_i = P_i(second difference), D_i = (ell_{i-1} + ell_i)/2.
template <typename S>
S node_term(bool sphere, const double* sides, int q, double sigma2,
            const S* xm_raw, const S* x0_raw, const S* xp_raw) {
  using std::asin;  // fall back to ADL for jet types
  using std::sqrt;
  Vec4<S> xm, x0, xp;

  auto normalize = [&](const S* in, Vec4<S>& out) {
    S n2 = in[0] * in[0];
    for (int k = 1; k < q; ++k) n2 = n2 + in[k] * in[k];
    const S n = sqrt(n2);
    for (int k = 0; k < q; ++k) out.c[k] = in[k] / n;
  };
  if (sphere) {
    normalize(xm_raw, xm);
    normalize(x0_raw, x0);
    normalize(xp_raw, xp);
  } else {
    for (int k = 0; k < q; ++k) {
      xm.c[k] = xm_raw[k];
      x0.c[k] = x0_raw[k];
      xp.c[k] = xp_raw[k];
    }
  }

  Vec4<S> em, ep;  // edges i-1 -> i and i -> i+1
  for (int k = 0; k < q; ++k) {
    em.c[k] = x0.c[k] - xm.c[k];
    ep.c[k] = xp.c[k] - x0.c[k];
    if (!sphere) {
      const double L = sides[k];
      em.c[k] = em.c[k] - L * std::round(scalar_value(em.c[k]) / L);
      ep.c[k] = ep.c[k] - L * std::round(scalar_value(ep.c[k]) / L);
    }
  }
  auto dot = [&](const Vec4<S>& a, const Vec4<S>& b) {
    S s = a.c[0] * b.c[0];
    for (int k = 1; k < q; ++k) s = s + a.c[k] * b.c[k];
    return s;
  };
  auto chord = [&](const Vec4<S>& e) {
    const S n = sqrt(dot(e, e));
    if (!sphere) return n;
    return 2.0 * asin(0.5 * n);
  };

  const S ell_m = chord(em);
  const S ell_p = chord(ep);
  if (sigma2 == 0.0) return ell_p;

  const S D = 0.5 * (ell_m + ell_p);
  Vec4<S> dd;
  for (int k = 0; k < q; ++k) dd.c[k] = ep.c[k] - em.c[k];
  if (sphere) {
    const S a = dot(x0, dd);
    for (int k = 0; k < q; ++k) dd.c[k] = dd.c[k] - a * x0.c[k];
  }
  const S w = dot(dd, dd) / (D * D * D);
  return ell_p + sigma2 * w;
}

}  // namespace viscmm::detail

#endif
