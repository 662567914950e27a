#pragma once

#include <utility>
#include <vector>

namespace defectqm {

/// Real symmetric tridiagonal matrix: diag has n entries, off has n - 1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
};

/// Number of eigenvalues strictly below x (Sturm sequence count).
int sturm_count(const SymTridiagonal& t, double x);

/// Gershgorin bounds [lo, hi] containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t);

/// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double bisect_eigenvalue(const SymTridiagonal& t, int k, double lo, double hi);

/// Lowest `count` eigenvalues in ascending order.
std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, int count);

/// Eigenvector for a (converged) eigenvalue by inverse iteration, unit 2-norm.
std::vector<double> eigenvector(const SymTridiagonal& t, double eigenvalue);

/// Sign changes of v ignoring entries below rel_floor * max|v|.
int count_nodes(const std::vector<double>& v, double rel_floor = 1e-8);

}  // namespace defectqm
