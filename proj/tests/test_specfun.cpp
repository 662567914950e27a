#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/special_functions/legendre.hpp>

#include "defectqm/errors.hpp"
#include "defectqm/specfun.hpp"

using namespace defectqm;
using namespace defectqm::specfun;

TEST_CASE("Kummer function against frozen high-precision values") {
  // Reference values computed with mpmath.hyp1f1 at 30 digits.
  CHECK(kummer_1f1({0.5, 1.5, 1.0}) == doctest::Approx(1.4626517459071816).epsilon(1e-14));
  CHECK(kummer_1f1({-3.0, 2.5, 1.7}) == doctest::Approx(-0.17391746031746031).epsilon(1e-13));
  CHECK(kummer_1f1({1.3, 2.1, -8.0}) == doctest::Approx(0.06264706993532429).epsilon(1e-12));
  CHECK(kummer_1f1({0.7, 1.2, 30.0}) == doctest::Approx(1387216960934.6288).epsilon(1e-12));
}

TEST_CASE("Kummer identities") {
  // M(a, a, x) = e^x and M(1, 2, 2x) = e^x sinh(x) / x.
  for (double x : {-3.0, -0.5, 0.0, 0.8, 4.0}) {
    CHECK(kummer_1f1({1.7, 1.7, x}) == doctest::Approx(std::exp(x)).epsilon(1e-13));
    if (x != 0.0) CHECK(kummer_1f1({1.0, 2.0, 2 * x}) == doctest::Approx(std::exp(x) * std::sinh(x) / x).epsilon(1e-13));
  }
}

TEST_CASE("Kummer series terminates for a = -n") {
  for (int n = 0; n <= 20; ++n) {
    const auto terms = kummer_series_terms({-double(n), 3.5, 2.0});
    CHECK(terms.size() == std::size_t(n) + 1);
    CHECK(terms.back() != 0.0);
  }
  // Laguerre link: M(-2, 1, x) = 1 - 2x + x^2/2.
  CHECK(kummer_1f1({-2.0, 1.0, 3.0}) == doctest::Approx(1 - 6 + 4.5));
}

TEST_CASE("Kummer poles and runaway series") {
  CHECK_THROWS_AS(kummer_1f1({1.0, 0.0, 1.0}), PoleError);
  CHECK_THROWS_AS(kummer_1f1({1.0, -3.0, 1.0}), PoleError);
  CHECK_THROWS_AS(kummer_1f1({0.5, 1.0, 1e6}), ConvergenceError);
}

TEST_CASE("Hermite polynomials") {
  CHECK(hermite(0, 2.0) == 1.0);
  CHECK(hermite(1, 2.0) == 4.0);
  CHECK(hermite(4, 1.3) == doctest::Approx(-23.4224).epsilon(1e-13));
  CHECK_THROWS_AS(hermite(-1, 0.0), DomainError);
}

TEST_CASE("generalized Legendre series terminates exactly at l_alpha - m_alpha") {
  for (double m : {0.0, 1.0, 1.0 / 0.9, 2.0 / 0.5, 2.7}) {
    for (int n = 0; n <= 6; ++n) {
      const auto s = gen_legendre_eigenfunction(m, n);
      CHECK(s.terminated);
      CHECK(s.degree == n);
      CHECK(s.coeffs.size() == std::size_t(n) + 1);
      for (int k = (n + 1) % 2; k <= n; k += 2) CHECK(s.coeffs[k] == 0.0);
    }
  }
}

TEST_CASE("non-eigenvalue lambda_bar gives a non-terminating series") {
  const auto s = gen_legendre_recursion(1.3, legendre_lambda_bar(2.1), 200);
  CHECK_FALSE(s.terminated);
  CHECK_THROWS_AS(gen_legendre_eval(s, 0.3), NotAnEigenfunctionError);
  CHECK_THROWS_AS(gen_legendre_recursion(-1.0, 0.0), DomainError);
}

TEST_CASE("terminated series solve the deformed Legendre equation") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> mdist(0.0, 6.0), xdist(-0.99, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    const double m = mdist(rng);
    const int n = trial % 7;
    const auto s = gen_legendre_eigenfunction(m, n);
    double scale = 0.0;
    for (double c : s.coeffs) scale = std::max(scale, std::abs(c));
    const double xi = xdist(rng);
    const auto g = gen_legendre_polynomial(s, xi);
    const double res = (1 - xi * xi) * g.d2 - 2 * (m + 1) * xi * g.d1 - (m * m + m + s.lambda_bar) * g.value;
    CHECK(std::abs(res) / scale < 1e-9);
  }
}

TEST_CASE("alpha = 1 reproduces classical associated Legendre functions up to a constant") {
  for (int l = 0; l <= 4; ++l) {
    for (int m = 0; m <= l; ++m) {
      const auto s = gen_legendre_eigenfunction(m, l - m);
      const double ref = gen_legendre_eval(s, 0.31) / boost::math::legendre_p(l, m, 0.31);
      for (double xi : {-0.77, -0.2, 0.55, 0.9}) {
        const double p = boost::math::legendre_p(l, m, xi);
        if (std::abs(p) < 1e-8) continue;
        CHECK(gen_legendre_eval(s, xi) / p == doctest::Approx(ref).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("gen_legendre_eval domain") {
  const auto s = gen_legendre_eigenfunction(1.0, 1);
  CHECK_THROWS_AS(gen_legendre_eval(s, 1.0), DomainError);
  CHECK_THROWS_AS(gen_legendre_eigenfunction(1.0, -1), DomainError);
}
