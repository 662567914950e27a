#include <doctest.h>

#include <cmath>
#include <limits>

#include "defectqm/errors.hpp"
#include "defectqm/oracle.hpp"
#include "defectqm/tridiagonal.hpp"

using namespace defectqm;
using namespace defectqm::oracle;

namespace {

RadialProblem line_oscillator() {
  RadialProblem p;
  p.potential = [](double x) { return 0.5 * x * x; };
  p.measure = RadialMeasure::Line;
  p.r_min = -10.0;
  p.r_max = 10.0;
  return p;
}

}  // namespace

TEST_CASE("Sturm bisection on a small matrix") {
  // [[2,-1,0],[-1,2,-1],[0,-1,2]] has eigenvalues 2 - sqrt(2), 2, 2 + sqrt(2).
  SymTridiagonal t{{2, 2, 2}, {-1, -1}};
  CHECK(sturm_count(t, 0.0) == 0);
  CHECK(sturm_count(t, 2.5) == 2);
  CHECK(sturm_count(t, 10.0) == 3);
  const auto ev = lowest_eigenvalues(t, 3);
  CHECK(ev[0] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ev[2] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-14));
  const auto v = eigenvector(t, ev[1]);
  CHECK(std::abs(v[1]) < 1e-8);
  CHECK(count_nodes(v) == 1);
  CHECK(count_nodes(eigenvector(t, ev[2])) == 2);
  CHECK_THROWS_AS(lowest_eigenvalues(t, 4), DomainError);
}

TEST_CASE("flat 1D oscillator") {
  const auto r = solve_radial(line_oscillator(), {});
  CHECK(r.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("hydrogen s state") {
  RadialProblem p;
  p.potential = [](double r) { return -1.0 / r; };
  p.r_min = 0.0;
  p.r_max = 60.0;
  const auto r = solve_radial(p, {});
  CHECK(std::abs(r.eigenvalues[0] + 0.5) < 1e-7);
}

TEST_CASE("oscillator in the string background, m = 1, alpha = 0.5") {
  const auto e = validate_state(PotentialSpec::harmonic(1.0), BackgroundGeometry::cosmic_string(0.5), {0, 0, 1, 0});
  CHECK(e.energy_analytic == 3.5);
  REQUIRE(e.energy_oracle);
  CHECK(std::abs(*e.energy_oracle - 3.5) < 1e-6);
  CHECK(e.node_count == 0);
}

TEST_CASE("Coulomb and Kratzer cross-validation examples") {
  const auto c = validate_state(PotentialSpec::coulomb(1.0), BackgroundGeometry::cosmic_string(0.999999), {1, 0, 1, 1});
  REQUIRE(c.residual);
  CHECK(*c.residual < 1e-7);
  const auto k = validate_state(PotentialSpec::kratzer_gamma2(100.0), BackgroundGeometry::global_monopole(0.3046), {0, 0, 0, 1});
  REQUIRE(k.residual);
  CHECK(*k.residual < 1e-6);
  CHECK_FALSE(k.flagged);
}

TEST_CASE("Morse residual is reported, not required to be small") {
  const auto m = validate_state(PotentialSpec::morse_gamma2(400.0, 1.0), BackgroundGeometry::global_monopole(1.0), {0, 0, 0, 1});
  REQUIRE(m.residual);
  CHECK(*m.residual > 1e-3);
  CHECK(m.flagged);
  CHECK(m.preferred_variant == "kummer");
  CHECK(std::abs(m.variants.at("kummer") - *m.energy_oracle) < std::abs(m.variants.at("verbatim") - *m.energy_oracle));
}

TEST_CASE("ladder ordering and node counts") {
  SolverConfig cfg;
  cfg.n_eigenvalues = 6;
  cfg.grid_points = 4000;
  const auto r = solve_radial(line_oscillator(), cfg);
  for (int k = 0; k < 6; ++k) {
    CHECK(r.node_counts[k] == k);
    CHECK(r.eigenvalues[k] == doctest::Approx(k + 0.5).epsilon(1e-7));
    if (k) CHECK(r.eigenvalues[k] > r.eigenvalues[k - 1]);
  }
  const auto p = effective_radial_problem(PotentialSpec::coulomb(1.0), BackgroundGeometry::cosmic_string(0.7), {4, 0, 1, 1});
  const auto c = solve_radial(p, cfg);
  for (int k = 0; k < 4; ++k) CHECK(c.node_counts[k] == k);
}

TEST_CASE("second-order convergence without extrapolation") {
  SolverConfig cfg;
  cfg.richardson = false;
  std::vector<double> errs;
  for (int n : {999, 1999, 3999}) {
    cfg.grid_points = n;
    errs.push_back(std::abs(solve_radial(line_oscillator(), cfg).eigenvalues[0] - 0.5));
  }
  CHECK(std::log2(errs[0] / errs[1]) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::log2(errs[1] / errs[2]) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("Richardson error estimate bounds the actual error") {
  const auto p = effective_radial_problem(PotentialSpec::harmonic(1.0), BackgroundGeometry::cosmic_string(0.9), {1, 0, 1, 0});
  const auto r = solve_radial(p, {});
  CHECK(std::abs(r.eigenvalues[1] - (2 + 1 / 0.9 + 1.5)) < r.level_error_estimates[1]);
  CHECK(r.extrapolation_error_estimate >= r.level_error_estimates[1]);
}

TEST_CASE("doubling the box leaves bound levels unchanged") {
  const auto p = effective_radial_problem(PotentialSpec::kratzer_gamma2(100.0), BackgroundGeometry::global_monopole(0.5), {1, 0, 0, 2});
  // Same spacing and nodes on the overlap, so only the box edge differs.
  SolverConfig a, b;
  a.grid_points = 4000;
  b.grid_points = 8001;
  b.r_max = p.r_min + 2.0 * (p.r_max - p.r_min);
  const double e1 = solve_radial(p, a).eigenvalues[1];
  const double e2 = solve_radial(p, b).eigenvalues[1];
  CHECK(std::abs(e1 - e2) < 1e-9);
}

TEST_CASE("error paths") {
  RadialProblem p = line_oscillator();
  SolverConfig bad;
  bad.grid_points = 50;
  CHECK_THROWS_AS(solve_radial(p, bad), DomainError);
  SolverConfig inverted;
  inverted.r_min = 2.0;
  inverted.r_max = 1.0;
  CHECK_THROWS_AS(solve_radial(p, inverted), DomainError);

  RadialProblem nan = p;
  nan.potential = [](double x) { return x > 3.0 ? std::numeric_limits<double>::quiet_NaN() : 0.0; };
  CHECK_THROWS_AS(solve_radial(nan, {}), DomainError);

  // A 1/r well cut at r = 5 cannot hold the n = 3 hydrogen level (E = -1/18).
  RadialProblem h;
  h.potential = [](double r) { return -1.0 / r; };
  h.r_min = 0.0;
  h.r_max = 5.0;
  h.level = 2;
  SolverConfig cfg;
  cfg.grid_points = 2000;
  CHECK_THROWS_AS(solve_radial(h, cfg), UnboundStateError);
}

TEST_CASE("batch validation records per-entry errors and survives") {
  auto entries = analytic::spectrum(PotentialSpec::coulomb(1.0), BackgroundGeometry::cosmic_string(0.5), 2);
  analytic::SpectrumEntry broken;
  broken.qn = {0, 0, 0, 0};  // n_r' = 0 is not a Coulomb state
  entries.push_back(broken);
  SolverConfig cfg;
  cfg.threads = 3;
  const auto out = validate_spectrum(entries, PotentialSpec::coulomb(1.0), BackgroundGeometry::cosmic_string(0.5), cfg);
  REQUIRE(out.size() == entries.size());
  CHECK(out.back().error.has_value());
  CHECK(out.back().flagged);
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    CHECK_FALSE(out[i].error.has_value());
    CHECK(*out[i].residual < 1e-6);
  }
  SolverConfig serial;
  const auto again = validate_spectrum(entries, PotentialSpec::coulomb(1.0), BackgroundGeometry::cosmic_string(0.5), serial);
  for (std::size_t i = 0; i + 1 < out.size(); ++i) CHECK(*again[i].energy_oracle == *out[i].energy_oracle);
}
