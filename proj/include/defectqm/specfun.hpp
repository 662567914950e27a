#pragma once

#include <vector>

namespace defectqm::specfun {

/// Arguments of Kummer's M(a, c, x) = 1F1(a; c; x).
struct KummerParams {
  double a = 0.0;
  double c = 1.0;
  double x = 0.0;
};

inline constexpr double kKummerTolerance = 1e-14;
inline constexpr int kKummerMaxTerms = 100000;

/// Confluent hypergeometric function M(a, c, x).
///
/// For a = -n (n a nonnegative integer) the series is summed as the exact
/// degree-n polynomial. Otherwise the series runs until the relative size of
/// the last term falls below kKummerTolerance; negative arguments go through
/// Kummer's transformation M(a, c, x) = e^x M(c - a, c, -x) first.
///
/// Throws PoleError when c is a nonpositive integer and ConvergenceError if
/// kKummerMaxTerms terms are not enough.
double kummer_1f1(const KummerParams& p);

/// Terms of the series as summed by kummer_1f1 for the direct (untransformed)
/// expansion. For a = -n this has exactly n + 1 entries.
std::vector<double> kummer_series_terms(const KummerParams& p);

/// Physicists' Hermite polynomial H_n(x) by three-term recurrence.
double hermite(int n, double x);

/// Power-series solution G(xi) = sum a_k xi^k of the alpha-deformed Legendre
/// equation
///   (1 - xi^2) G'' - 2 (m + 1) xi G' - (m^2 + m + lambda_bar) G = 0,
/// with F(xi) = (1 - xi^2)^(m/2) G(xi) solving the generalized associated
/// Legendre equation. With this sign convention a physical eigenvalue has
/// lambda_bar = -l_alpha (l_alpha + 1), which makes the recursion numerator
/// (n + m)(n + m + 1) + lambda_bar vanish at n = l_alpha - m.
struct GenLegendreSeries {
  double m_alpha = 0.0;
  double lambda_bar = 0.0;
  /// a_k indexed by the power of xi. For a terminated series only the
  /// terminating parity chain survives and coeffs.size() == degree + 1.
  std::vector<double> coeffs;
  bool terminated = false;
  int degree = -1;  // polynomial degree of G when terminated
};

/// lambda_bar of the physical eigenfunction with effective orbital number l_alpha.
inline double legendre_lambda_bar(double l_alpha) { return -l_alpha * (l_alpha + 1.0); }

inline constexpr int kLegendreMaxTerms = 10000;

/// Runs the two-term recursion from a_0 = 1 (even chain) and a_1 = 1 (odd
/// chain). A chain terminates when its numerator vanishes to within 1e-12 of
/// the size of its terms; otherwise both chains are truncated at n_max.
GenLegendreSeries gen_legendre_recursion(double m_alpha, double lambda_bar, int n_max = kLegendreMaxTerms);

/// Convenience: the terminated series for m_alpha and integer excitation n
/// (l_alpha = m_alpha + n).
GenLegendreSeries gen_legendre_eigenfunction(double m_alpha, int n);

/// F(xi) = (1 - xi^2)^(m_alpha / 2) * G(xi) for xi in (-1, 1).
/// Throws NotAnEigenfunctionError if the series did not terminate.
double gen_legendre_eval(const GenLegendreSeries& series, double xi);

/// G(xi), G'(xi), G''(xi) of a terminated series.
struct PolyValue {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};
PolyValue gen_legendre_polynomial(const GenLegendreSeries& series, double xi);

}  // namespace defectqm::specfun
