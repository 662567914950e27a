#pragma once

#include <optional>
#include <vector>

#include "defectqm/analytic.hpp"
#include "defectqm/core_model.hpp"
#include "defectqm/tridiagonal.hpp"

namespace defectqm::oracle {

struct SolverConfig {
  int grid_points = 20000;
  std::optional<double> r_min;  // overrides RadialProblem::r_min
  std::optional<double> r_max;  // overrides RadialProblem::r_max
  /// Number of lowest eigenvalues; 0 means problem.level + 1.
  int n_eigenvalues = 0;
  double target_tolerance = 1e-10;
  bool richardson = true;
  /// Worker threads for validate_spectrum (1 = sequential).
  int threads = 1;
  /// Residual above which validate_spectrum flags an entry.
  double validation_tolerance = 1e-6;

  /// Throws DomainError unless grid_points >= 100 and r_min < r_max (when both set).
  void validate() const;
};

struct OracleResult {
  /// Radial eigenvalues plus problem.separated_energy, ascending.
  std::vector<double> eigenvalues;
  double grid_h = 0.0;
  /// max over levels of |E(h) - E(h/2)| / 3 (0 without Richardson).
  double extrapolation_error_estimate = 0.0;
  std::vector<double> level_error_estimates;
  /// Interior sign changes of each eigenvector on the coarse grid.
  std::vector<int> node_counts;
  /// Raw eigenvalues on the coarse grid (without Richardson), separated energy included.
  std::vector<double> coarse_eigenvalues;
};

/// Discretized operator for a problem on an explicit grid.
///   Spherical / Line  vertex-centered central differences, n interior points
///   Cylindrical       cell-centered finite volume in the R = u / sqrt(rho) form, n cells
struct Discretization {
  SymTridiagonal matrix;
  std::vector<double> nodes;
  double h = 0.0;
};
Discretization discretize(const RadialProblem& problem, double r_min, double r_max, int n);

/// Lowest eigenvalues of -u''/2 + (c/r^2 + V) u = E u with Dirichlet ends.
/// Throws UnboundStateError when a requested eigenvalue reaches the potential at
/// r_max and DomainError when the potential is not finite on the grid.
OracleResult solve_radial(const RadialProblem& problem, const SolverConfig& cfg = {});

/// Fills energy_oracle, residual, node_count and the flag for every entry.
/// Errors are recorded on the entry; the batch always completes.
std::vector<analytic::SpectrumEntry> validate_spectrum(std::vector<analytic::SpectrumEntry> entries,
                                                       const PotentialSpec& spec, const BackgroundGeometry& geom,
                                                       const SolverConfig& cfg = {});

/// Oracle value of one state with its analytic counterpart attached.
analytic::SpectrumEntry validate_state(const PotentialSpec& spec, const BackgroundGeometry& geom,
                                       const QuantumNumbers& qn, const SolverConfig& cfg = {});

}  // namespace defectqm::oracle
