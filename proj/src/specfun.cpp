#include "defectqm/specfun.hpp"

#include <cmath>

#include <fmt/format.h>

#include "defectqm/errors.hpp"

namespace defectqm::specfun {

namespace {

bool nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

void check_pole(double c) {
  if (nonpositive_integer(c)) throw PoleError(fmt::format("1F1 has a pole at c = {}", c));
}

// Direct series sum; records terms when `terms` is non-null.
double kummer_direct(const KummerParams& p, std::vector<double>* terms) {
  double t = 1.0, s = 1.0;
  if (terms) terms->push_back(t);
  if (nonpositive_integer(p.a)) {
    const int n = static_cast<int>(-p.a);
    for (int k = 0; k < n; ++k) {
      t *= (p.a + k) / (p.c + k) * p.x / (k + 1);
      s += t;
      if (terms) terms->push_back(t);
    }
    return s;
  }
  for (int k = 0; k < kKummerMaxTerms; ++k) {
    const double ratio = (p.a + k) / (p.c + k) * p.x / (k + 1);
    t *= ratio;
    s += t;
    if (terms) terms->push_back(t);
    if (!std::isfinite(s)) throw ConvergenceError(fmt::format("1F1({}, {}, {}) overflows", p.a, p.c, p.x));
    if (std::abs(ratio) < 1.0 && std::abs(t) <= kKummerTolerance * std::abs(s)) return s;
    if (t == 0.0) return s;
  }
  throw ConvergenceError(fmt::format("1F1({}, {}, {}) did not converge in {} terms", p.a, p.c, p.x, kKummerMaxTerms));
}

}  // namespace

double kummer_1f1(const KummerParams& p) {
  check_pole(p.c);
  if (nonpositive_integer(p.a) || p.x >= 0.0) return kummer_direct(p, nullptr);
  // Alternating series for x < 0 loses digits; the transformed one has positive terms.
  return std::exp(p.x) * kummer_1f1({p.c - p.a, p.c, -p.x});
}

std::vector<double> kummer_series_terms(const KummerParams& p) {
  check_pole(p.c);
  std::vector<double> terms;
  kummer_direct(p, &terms);
  return terms;
}

double hermite(int n, double x) {
  if (n < 0) throw DomainError("Hermite degree must be >= 0");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

struct Numerator {
  double value;
  double scale;
};

Numerator recursion_numerator(int n, double m, double lambda_bar) {
  const double t1 = n * (n - 1.0), t2 = 2.0 * (m + 1.0) * n, t3 = m * (m + 1.0);
  return {t1 + t2 + lambda_bar + t3,
          std::abs(t1) + std::abs(t2) + std::abs(lambda_bar) + std::abs(t3)};
}

}  // namespace

GenLegendreSeries gen_legendre_recursion(double m_alpha, double lambda_bar, int n_max) {
  if (m_alpha < 0.0) throw DomainError("m_alpha must be >= 0");
  if (n_max < 1) throw DomainError("n_max must be >= 1");

  GenLegendreSeries s;
  s.m_alpha = m_alpha;
  s.lambda_bar = lambda_bar;
  s.coeffs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  s.coeffs[0] = 1.0;
  s.coeffs[1] = 1.0;

  for (int n = 0; n + 2 <= n_max; ++n) {
    const Numerator num = recursion_numerator(n, m_alpha, lambda_bar);
    if (std::abs(num.value) <= 1e-12 * std::max(1.0, num.scale)) {
      // Keep only the chain that closes at degree n.
      s.terminated = true;
      s.degree = n;
      s.coeffs.resize(static_cast<std::size_t>(n) + 1);
      for (int k = (n + 1) % 2; k <= n; k += 2) s.coeffs[k] = 0.0;
      return s;
    }
    s.coeffs[n + 2] = num.value / ((n + 1.0) * (n + 2.0)) * s.coeffs[n];
  }
  return s;
}

GenLegendreSeries gen_legendre_eigenfunction(double m_alpha, int n) {
  if (n < 0) throw DomainError("angular excitation n must be >= 0");
  GenLegendreSeries s = gen_legendre_recursion(m_alpha, legendre_lambda_bar(m_alpha + n), n + 2);
  if (!s.terminated || s.degree != n)
    throw NotAnEigenfunctionError(fmt::format("series for m_alpha = {}, n = {} did not close", m_alpha, n));
  return s;
}

PolyValue gen_legendre_polynomial(const GenLegendreSeries& series, double xi) {
  if (!series.terminated) throw NotAnEigenfunctionError("non-terminating generalized Legendre series");
  PolyValue v;
  for (std::size_t k = series.coeffs.size(); k-- > 0;) {
    v.d2 = v.d2 * xi + 2.0 * v.d1;
    v.d1 = v.d1 * xi + v.value;
    v.value = v.value * xi + series.coeffs[k];
  }
  return v;
}

double gen_legendre_eval(const GenLegendreSeries& series, double xi) {
  if (!series.terminated) throw NotAnEigenfunctionError("non-terminating generalized Legendre series");
  if (!(xi > -1.0 && xi < 1.0)) throw DomainError("xi must lie in (-1, 1)");
  return std::pow(1.0 - xi * xi, 0.5 * series.m_alpha) * gen_legendre_polynomial(series, xi).value;
}

}  // namespace defectqm::specfun
