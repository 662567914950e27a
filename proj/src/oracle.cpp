#include "defectqm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "defectqm/errors.hpp"

namespace defectqm::oracle {

void SolverConfig::validate() const {
  if (grid_points < 100) throw DomainError(fmt::format("grid_points must be >= 100, got {}", grid_points));
  if (r_min && r_max && !(*r_min < *r_max)) throw DomainError("r_min must be below r_max");
  if (n_eigenvalues < 0) throw DomainError("n_eigenvalues must be >= 0");
  if (threads < 1) throw DomainError("threads must be >= 1");
}

namespace {

double sample(const RadialProblem& p, double r) {
  const double v = p.potential(r);
  if (!std::isfinite(v)) throw DomainError(fmt::format("potential is not finite at r = {}", r));
  return v;
}

Discretization vertex_scheme(const RadialProblem& p, double a, double b, int n) {
  Discretization d;
  d.h = (b - a) / (n + 1);
  const double h2 = d.h * d.h;
  const double c = p.measure == RadialMeasure::Line ? 0.0 : p.centrifugal;
  d.nodes.resize(n);
  d.matrix.diag.resize(n);
  d.matrix.off.assign(n > 0 ? n - 1 : 0, -0.5 / h2);
  for (int i = 0; i < n; ++i) {
    const double r = a + (i + 1) * d.h;
    d.nodes[i] = r;
    d.matrix.diag[i] = 1.0 / h2 + sample(p, r) + (c != 0.0 ? c / (r * r) : 0.0);
  }
  return d;
}

// Flux form -(1/2rho)(rho R')' + nu^2/(2 rho^2) R with nu^2 = 2c + 1/4, which is
// the same operator as the u-form after u = sqrt(rho) R. Cell centers keep rho = 0
// off the grid, and the symmetric scaling sqrt(rho) brings it back to u.
Discretization cell_scheme(const RadialProblem& p, double a, double b, int n) {
  Discretization d;
  d.h = (b - a) / n;
  const double h = d.h, h2 = h * h;
  const double nu2 = 2.0 * p.centrifugal + 0.25;
  d.nodes.resize(n);
  d.matrix.diag.resize(n);
  d.matrix.off.resize(n > 0 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) d.nodes[i] = a + (i + 0.5) * h;
  for (int i = 0; i < n; ++i) {
    const double rho = d.nodes[i];
    const double f_in = a + i * h, f_out = a + (i + 1) * h;
    // Dirichlet at the outer wall through a mirrored ghost cell.
    const double outer = i + 1 == n ? 2.0 * f_out : f_out;
    d.matrix.diag[i] = (f_in + outer) / (2.0 * h2 * rho) + nu2 / (2.0 * rho * rho) + sample(p, rho);
    if (i + 1 < n) d.matrix.off[i] = -0.5 * f_out / (h2 * std::sqrt(rho * d.nodes[i + 1]));
  }
  return d;
}

struct GridSolution {
  std::vector<double> eigenvalues;
  std::vector<int> nodes;
  double h = 0.0;
};

GridSolution solve_grid(const RadialProblem& p, double a, double b, int n, int count, bool with_nodes) {
  const Discretization d = discretize(p, a, b, n);
  GridSolution g;
  g.h = d.h;
  g.eigenvalues = lowest_eigenvalues(d.matrix, count);
  if (with_nodes)
    for (double e : g.eigenvalues) g.nodes.push_back(count_nodes(eigenvector(d.matrix, e)));
  return g;
}

}  // namespace

Discretization discretize(const RadialProblem& problem, double r_min, double r_max, int n) {
  if (!problem.potential) throw DomainError("radial problem has no potential");
  if (!(r_min < r_max)) throw DomainError("r_min must be below r_max");
  if (n < 3) throw DomainError("grid needs at least 3 points");
  if (problem.measure == RadialMeasure::Cylindrical) return cell_scheme(problem, r_min, r_max, n);
  return vertex_scheme(problem, r_min, r_max, n);
}

OracleResult solve_radial(const RadialProblem& problem, const SolverConfig& cfg) {
  cfg.validate();
  const double a = cfg.r_min.value_or(problem.r_min);
  const double b = cfg.r_max.value_or(problem.r_max);
  if (!(a < b)) throw DomainError("r_min must be below r_max");
  if (problem.measure != RadialMeasure::Line && a < 0.0) throw DomainError("radial grids need r_min >= 0");
  const int count = cfg.n_eigenvalues > 0 ? cfg.n_eigenvalues : problem.level + 1;
  const int n = cfg.grid_points;
  // Fine grid with exactly half the spacing.
  const int n_fine = problem.measure == RadialMeasure::Cylindrical ? 2 * n : 2 * n + 1;

  GridSolution coarse, fine;
  if (cfg.richardson && cfg.threads > 1) {
    auto f = std::async(std::launch::async, [&] { return solve_grid(problem, a, b, n_fine, count, false); });
    coarse = solve_grid(problem, a, b, n, count, true);
    fine = f.get();
  } else {
    coarse = solve_grid(problem, a, b, n, count, true);
    if (cfg.richardson) fine = solve_grid(problem, a, b, n_fine, count, false);
  }

  OracleResult r;
  r.grid_h = coarse.h;
  r.node_counts = coarse.nodes;
  const double threshold = problem.measure == RadialMeasure::Line
                               ? std::min(sample(problem, a), sample(problem, b))
                               : problem.effective_potential(b);
  for (int k = 0; k < count; ++k) {
    double e = coarse.eigenvalues[k];
    double err = 0.0;
    if (cfg.richardson) {
      const double ef = fine.eigenvalues[k];
      e = ef + (ef - coarse.eigenvalues[k]) / 3.0;
      err = std::abs(coarse.eigenvalues[k] - ef) / 3.0;
    }
    if (!(e < threshold))
      throw UnboundStateError(
          fmt::format("level {} (E = {}) is not below the potential at the box edge ({})", k, e, threshold));
    r.eigenvalues.push_back(e + problem.separated_energy);
    r.coarse_eigenvalues.push_back(coarse.eigenvalues[k] + problem.separated_energy);
    r.level_error_estimates.push_back(err);
    r.extrapolation_error_estimate = std::max(r.extrapolation_error_estimate, err);
  }
  return r;
}

namespace {

void fill_entry(analytic::SpectrumEntry& entry, const PotentialSpec& spec, const BackgroundGeometry& geom,
                const SolverConfig& cfg) {
  try {
    const RadialProblem problem = effective_radial_problem(spec, geom, entry.qn);
    const OracleResult res = solve_radial(problem, cfg);
    const int k = problem.level;
    entry.energy_oracle = res.eigenvalues[k];
    entry.residual = std::abs(entry.energy_analytic - res.eigenvalues[k]);
    entry.oracle_error_estimate = res.level_error_estimates[k];
    entry.node_count = res.node_counts[k];
    entry.flagged = *entry.residual > cfg.validation_tolerance || res.node_counts[k] != k;
    if (!entry.variants.empty()) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [name, value] : entry.variants) {
        const double d = std::abs(value - res.eigenvalues[k]);
        if (d < best) {
          best = d;
          entry.preferred_variant = name;
        }
      }
    }
  } catch (const std::exception& e) {
    entry.error = e.what();
    entry.flagged = true;
  }
}

}  // namespace

std::vector<analytic::SpectrumEntry> validate_spectrum(std::vector<analytic::SpectrumEntry> entries,
                                                       const PotentialSpec& spec, const BackgroundGeometry& geom,
                                                       const SolverConfig& cfg) {
  cfg.validate();
  SolverConfig inner = cfg;
  inner.threads = 1;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), entries.size());
  if (workers <= 1) {
    for (auto& e : entries) fill_entry(e, spec, geom, inner);
    return entries;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < entries.size(); i += workers) fill_entry(entries[i], spec, geom, inner);
    });
  for (auto& t : pool) t.join();
  return entries;
}

analytic::SpectrumEntry validate_state(const PotentialSpec& spec, const BackgroundGeometry& geom,
                                       const QuantumNumbers& qn, const SolverConfig& cfg) {
  analytic::SpectrumEntry entry = analytic::make_entry(spec, geom, qn);
  fill_entry(entry, spec, geom, cfg);
  return entry;
}

}  // namespace defectqm::oracle
