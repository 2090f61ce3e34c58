#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "viscmm/elliptic.hpp"

using viscmm::EllipticModulus;

namespace {

// Independent quadrature oracle: plain recursive Simpson, no shared code
// with the library integrator.
template <typename F>
double oracle_simpson(const F& f, double a, double b, int depth = 26,
                      double tol = 1e-14) {
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

double oracle_K(double p) {
  return oracle_simpson(
      [p](double th) {
        return 1.0 / std::sqrt(1.0 - p * p * std::sin(th) * std::sin(th));
      },
      0.0, M_PI / 2.0);
}

double oracle_E(double p) {
  return oracle_simpson(
      [p](double th) {
        return std::sqrt(1.0 - p * p * std::sin(th) * std::sin(th));
      },
      0.0, M_PI / 2.0);
}

}  // namespace

TEST_CASE("modulus domain") {
  CHECK_THROWS_AS(EllipticModulus(1.0), std::domain_error);
  CHECK_THROWS_AS(EllipticModulus(-0.1), std::domain_error);
  CHECK_THROWS_AS(EllipticModulus(1.5), std::domain_error);
  CHECK_NOTHROW(EllipticModulus(0.0));
  CHECK_NOTHROW(EllipticModulus(0.999999));
}

TEST_CASE("complete_K") {
  CHECK(viscmm::complete_K(EllipticModulus(0.0)) ==
        doctest::Approx(M_PI / 2.0).epsilon(1e-14));

  const double k_half = viscmm::complete_K(EllipticModulus(0.5));
  CHECK(std::fabs(k_half - oracle_K(0.5)) / oracle_K(0.5) < 1e-10);

  const double k_ext = viscmm::complete_K(EllipticModulus(0.999999));
  CHECK(k_ext > 7.0);
  CHECK(std::fabs(k_ext - oracle_K(0.999999)) / oracle_K(0.999999) < 1e-8);
  // monotone in p
  CHECK(k_ext > k_half);
  CHECK(k_half > viscmm::complete_K(EllipticModulus(0.1)));
}

TEST_CASE("complete_E") {
  CHECK(viscmm::complete_E(EllipticModulus(0.0)) ==
        doctest::Approx(M_PI / 2.0).epsilon(1e-14));
  CHECK(std::fabs(viscmm::complete_E(EllipticModulus(0.999999)) - 1.0) < 1e-4);
  const double e_half = viscmm::complete_E(EllipticModulus(0.5));
  CHECK(std::fabs(e_half - oracle_E(0.5)) / oracle_E(0.5) < 1e-10);
}

TEST_CASE("complete integrals vs quadrature over the p grid") {
  for (double p : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99}) {
    const EllipticModulus mod(p);
    CHECK(std::fabs(viscmm::complete_K(mod) - oracle_K(p)) / oracle_K(p) <
          1e-10);
    CHECK(std::fabs(viscmm::complete_E(mod) - oracle_E(p)) / oracle_E(p) <
          1e-10);
  }
}

TEST_CASE("incomplete_F") {
  CHECK(viscmm::incomplete_F(0.83, EllipticModulus(0.0)) ==
        doctest::Approx(0.83).epsilon(1e-13));
  for (double p : {0.2, 0.6, 0.9}) {
    const EllipticModulus mod(p);
    CHECK(std::fabs(viscmm::incomplete_F(M_PI / 2.0, mod) -
                    viscmm::complete_K(mod)) < 1e-12);
  }
  const double f_oracle = oracle_simpson(
      [](double th) {
        return 1.0 / std::sqrt(1.0 - 0.09 * std::sin(th) * std::sin(th));
      },
      0.0, 0.7);
  CHECK(std::fabs(viscmm::incomplete_F(0.7, EllipticModulus(0.3)) - f_oracle) <
        1e-10);
  // odd in phi
  CHECK(viscmm::incomplete_F(-0.7, EllipticModulus(0.3)) ==
        doctest::Approx(-viscmm::incomplete_F(0.7, EllipticModulus(0.3))));
}

TEST_CASE("jacobi special values") {
  for (double p : {0.0, 0.3, 0.8}) {
    const auto j = viscmm::jacobi(0.0, EllipticModulus(p));
    CHECK(std::fabs(j.sn) < 1e-14);
    CHECK(j.cn == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(j.dn == doctest::Approx(1.0).epsilon(1e-14));
  }
  for (double t : {-2.0, 0.3, 1.7}) {
    const auto j = viscmm::jacobi(t, EllipticModulus(0.0));
    CHECK(j.sn == doctest::Approx(std::sin(t)).epsilon(1e-13));
    CHECK(j.cn == doctest::Approx(std::cos(t)).epsilon(1e-13));
    CHECK(j.dn == doctest::Approx(1.0));
  }
}

TEST_CASE("jacobi identities over (t,p) grid") {
  for (int ip = 0; ip < 10; ++ip) {
    const double p = 0.099 * ip;  // up to 0.891
    const EllipticModulus mod(p);
    for (int it = 0; it < 100; ++it) {
      const double t = -5.0 + 0.1 * it;
      const auto j = viscmm::jacobi(t, mod);
      CHECK(std::fabs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-12);
      CHECK(std::fabs(j.dn * j.dn + p * p * j.sn * j.sn - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("dn periodicity 2K, sn/cn periodicity 4K") {
  const EllipticModulus mod(0.6);
  const double K = viscmm::complete_K(mod);
  for (double t : {0.0, 0.41, 1.3, 2.9}) {
    const auto j0 = viscmm::jacobi(t, mod);
    const auto j2 = viscmm::jacobi(t + 2.0 * K, mod);
    const auto j4 = viscmm::jacobi(t + 4.0 * K, mod);
    CHECK(std::fabs(j2.dn - j0.dn) < 1e-10);
    CHECK(std::fabs(j2.sn + j0.sn) < 1e-10);  // half-period flips sn
    CHECK(std::fabs(j4.sn - j0.sn) < 1e-10);
    CHECK(std::fabs(j4.cn - j0.cn) < 1e-10);
  }
}

TEST_CASE("derivative table by central differences") {
  const double h = 1e-4;
  for (double p : {0.2, 0.5, 0.9}) {
    const EllipticModulus mod(p);
    for (double t : {0.3, 1.1, 2.4}) {
      const auto jm = viscmm::jacobi(t - h, mod);
      const auto jp = viscmm::jacobi(t + h, mod);
      const auto j = viscmm::jacobi(t, mod);
      const double dsn = (jp.sn - jm.sn) / (2 * h);
      const double dcn = (jp.cn - jm.cn) / (2 * h);
      const double ddn = (jp.dn - jm.dn) / (2 * h);
      CHECK(std::fabs(dsn - j.cn * j.dn) < 1e-6);
      CHECK(std::fabs(dcn + j.sn * j.dn) < 1e-6);
      CHECK(std::fabs(ddn + p * p * j.sn * j.cn) < 1e-6);
    }
  }
}

TEST_CASE("dn ODE residual") {
  CHECK(std::fabs(viscmm::dn_ode_residual(0.7, EllipticModulus(0.0), 1e-4)) <
        1e-10);
  CHECK(std::fabs(viscmm::dn_ode_residual(1.3, EllipticModulus(0.5), 1e-4)) <
        1e-6);
  const EllipticModulus p9(0.9);
  const double t = 2.0 * viscmm::complete_K(p9) * 0.37;
  CHECK(std::fabs(viscmm::dn_ode_residual(t, p9, 1e-4)) < 1e-6);
}
