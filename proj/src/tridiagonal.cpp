#include "defectqm/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "defectqm/errors.hpp"

namespace defectqm {

int sturm_count(const SymTridiagonal& t, double x) {
  const std::size_t n = t.size();
  int count = 0;
  double q = 1.0;
  constexpr double tiny = std::numeric_limits<double>::min() * 1e10;
  for (std::size_t i = 0; i < n; ++i) {
    const double o2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - x - (i == 0 ? 0.0 : o2 / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

double bisect_eigenvalue(const SymTridiagonal& t, int k, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, int count) {
  if (count < 0 || static_cast<std::size_t>(count) > t.size())
    throw DomainError("requested more eigenvalues than the matrix has");
  auto [lo, hi] = gershgorin_bounds(t);
  std::vector<double> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    // Eigenvalues are ascending, so the previous one bounds this one from below.
    const double start = out.empty() ? lo : std::max(lo, out.back() - 1e-9 * std::max(1.0, std::abs(out.back())));
    out.push_back(bisect_eigenvalue(t, k, start, hi));
  }
  return out;
}

std::vector<double> eigenvector(const SymTridiagonal& t, double eigenvalue) {
  const std::size_t n = t.size();
  if (n == 0) return {};
  const double scale = std::max(1.0, std::abs(eigenvalue));
  const double shift = eigenvalue + 1e-13 * scale;
  std::vector<double> v(n, 1.0), c(n), d(n);
  for (int it = 0; it < 3; ++it) {
    // Thomas algorithm on (T - shift) x = v.
    double denom = t.diag[0] - shift;
    if (denom == 0.0) denom = 1e-300;
    c[0] = n > 1 ? t.off[0] / denom : 0.0;
    d[0] = v[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
      denom = t.diag[i] - shift - t.off[i - 1] * c[i - 1];
      if (denom == 0.0) denom = 1e-300;
      c[i] = i + 1 < n ? t.off[i] / denom : 0.0;
      d[i] = (v[i] - t.off[i - 1] * d[i - 1]) / denom;
    }
    v[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) v[i] = d[i] - c[i] * v[i + 1];
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ConvergenceError("inverse iteration failed");
    for (double& x : v) x /= norm;
  }
  return v;
}

int count_nodes(const std::vector<double>& v, double rel_floor) {
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const double floor = rel_floor * vmax;
  int nodes = 0, last = 0;
  for (double x : v) {
    if (std::abs(x) < floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++nodes;
    last = s;
  }
  return nodes;
}

}  // namespace defectqm
