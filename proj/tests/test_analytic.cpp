#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "defectqm/analytic.hpp"
#include "defectqm/errors.hpp"

using namespace defectqm;
using namespace defectqm::analytic;

namespace {

template <class F>
double quad(F f, double a, double b) {
  double s = 0.0;
  const int pieces = 32;
  for (int i = 0; i < pieces; ++i)
    s += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a + (b - a) * i / pieces,
                                                                       a + (b - a) * (i + 1) / pieces, 12, 1e-14);
  return s;
}

}  // namespace

TEST_CASE("oscillator levels in the string background") {
  CHECK(ho_string_energy({0, 0, 0, 0}, 0.5) == 1.5);
  CHECK(ho_string_energy({0, 0, 1, 0}, 0.5) == 3.5);
  CHECK(ho_string_energy({1, 1, 2, 0}, 1.0) == 6.5);
  CHECK(ho_string_energy({0, 0, -1, 0}, 0.9) == doctest::Approx(1.5 + 1.0 / 0.9));
  CHECK_THROWS_AS(ho_string_energy({0, 0, 0, 0}, 1.5), DomainError);
}

TEST_CASE("Coulomb levels in the string background") {
  CHECK(coulomb_string_energy({1, 0, 0, 0}, 0.3) == -0.5);
  CHECK(coulomb_string_energy({1, 0, 1, 1}, 1.0) == doctest::Approx(-0.125));
  CHECK(coulomb_string_energy({1, 0, 1, 1}, 0.5) == doctest::Approx(-1.0 / 18.0));
}

TEST_CASE("Kratzer levels against frozen values") {
  // Independent evaluation at 30 digits (natural units hbar^2/(mu A^2)).
  CHECK(kratzer_monopole_energy({0, 0, 0, 0}, 1.0, 100.0) == doctest::Approx(-45.24375390137480).epsilon(1e-14));
  CHECK(kratzer_monopole_energy({0, 0, 0, 1}, 1.0, 100.0) == doctest::Approx(-44.40029113414151).epsilon(1e-14));
  CHECK(kratzer_monopole_energy({0, 0, 0, 1}, 0.5, 100.0) == doctest::Approx(-42.05061470192798).epsilon(1e-14));
  CHECK(kratzer_monopole_energy({1, 0, 0, 0}, 1.0, 100.0) == doctest::Approx(-37.72517878396961).epsilon(1e-14));
}

TEST_CASE("Kratzer derived quantities") {
  const auto k = kratzer_derived(0, 1.0, 100.0);
  CHECK(k.lambda_l == doctest::Approx(0.5 + std::sqrt(100.25)));
  CHECK(k.w_classical == doctest::Approx(10.0));
  CHECK(k.theta == 1.0);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> g(0.01, 1e4), bd(0.05, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double g2 = g(rng), b = bd(rng);
    const int l = i % 5;
    const auto a = kratzer_derived(l, b, g2);
    CHECK(a.lambda_l >= 1.0);
    CHECK(kratzer_derived(l + 1, b, g2).lambda_l > a.lambda_l);
    if (l > 0) CHECK(kratzer_derived(l, b * 0.9, g2).lambda_l > a.lambda_l);
  }
}

TEST_CASE("Kratzer expansion") {
  const double g2 = 1e4;
  const auto e = kratzer_expansion_energy({0, 0, 0, 0}, 1.0, g2);
  const double exact = kratzer_monopole_energy({0, 0, 0, 0}, 1.0, g2);
  CHECK(e.in_regime);
  CHECK(std::abs(e.energy - exact) / std::abs(exact) < 1e-4);
  CHECK_FALSE(kratzer_expansion_energy({0, 0, 0, 0}, 1.0, 81.0).in_regime);
  for (double b : {1.0, 0.5, 0.3046}) CHECK(kratzer_expansion_terms({0, 0, 0, 0}, b, g2)[0] == -0.5 * g2);
  double prev = INFINITY;
  for (double gamma : {10.0, 30.0, 100.0, 300.0, 1000.0}) {
    const double err = std::abs(kratzer_expansion_energy({0, 0, 0, 1}, 0.7, gamma * gamma).energy -
                                kratzer_monopole_energy({0, 0, 0, 1}, 0.7, gamma * gamma));
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("Morse coefficients reproduce the expansion of 1/(1+x)^2 to second order") {
  for (double beta : {0.5, 1.0, 1.7, 3.0}) {
    const auto c = morse_coefficients(beta);
    CHECK(c.c0 + c.c1 + c.c2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(-beta * (c.c1 + 2 * c.c2) == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(0.5 * beta * beta * (c.c1 + 4 * c.c2) == doctest::Approx(3.0).epsilon(1e-14));
  }
}

TEST_CASE("Morse vibrational levels") {
  const double g2 = 2500.0, beta = 1.0, w = 50.0;
  CHECK(morse_vibrational_energy({0, 0, 0, 0}, 1.0, g2, beta) == doctest::Approx(1.5 * w - 0.5 * g2));
  const double n_lm = 0.5 * (std::sqrt(33.0) - 1.0);
  CHECK(morse_vibrational_energy({0, 0, 0, 1}, 0.5, g2, beta) == doctest::Approx(w * (n_lm + 1.5) - 0.5 * g2));
  for (double b : {1.0, 0.6})
    CHECK(morse_vibrational_energy({1, 0, 0, 0}, b, g2, beta) - morse_vibrational_energy({0, 0, 0, 0}, b, g2, beta) ==
          doctest::Approx(2 * w));
}

TEST_CASE("Morse rotational-vibrational levels") {
  const double g2 = 2500.0, g = 50.0;
  for (double beta : {1.0, 2.0}) {
    for (int n = 0; n < 3; ++n) {
      const auto r = morse_rotvib_energy({n, 0, 0, 0}, 0.8, g2, beta);
      const double v = n + 0.5;
      const double ladder = 0.5 * (-g2 + 2 * g * beta * v - beta * beta * v * v);
      CHECK(r.verbatim == doctest::Approx(ladder));
      CHECK(r.rederived == doctest::Approx(ladder));
      CHECK(r.kummer == doctest::Approx(ladder));
    }
  }
  // b = 1, l = 1, gamma = 50: both closed forms agree with the kummer value to O(gamma^-2).
  const auto r = morse_rotvib_energy({0, 0, 0, 1}, 1.0, g2, 2.0);
  CHECK(std::abs(r.verbatim - r.kummer) < 0.01);
  CHECK(std::abs(r.rederived - r.kummer) < 1e-3);
  CHECK(r.valid);
  CHECK(r.turning_x == doctest::Approx(std::sqrt(1.0 / 100.0)));
  CHECK_FALSE(morse_rotvib_energy({3, 0, 0, 0}, 1.0, 25.0, 1.0).valid);
}

TEST_CASE("every analytic level satisfies its own quantization condition") {
  const auto string = BackgroundGeometry::cosmic_string(0.7);
  const auto mono = BackgroundGeometry::global_monopole(0.6);
  for (const auto& q : shell_labels(PotentialFamily::HarmonicOscillator3D, 3)) {
    const auto s = PotentialSpec::harmonic(1.0);
    CHECK(std::abs(quantization_residual(s, string, q, energy(s, string, q))) < 1e-10);
  }
  for (const auto& q : shell_labels(PotentialFamily::Coulomb, 4)) {
    const auto s = PotentialSpec::coulomb(1.0);
    CHECK(std::abs(quantization_residual(s, string, q, energy(s, string, q))) < 1e-10);
  }
  for (const auto& q : shell_labels(PotentialFamily::Kratzer, 3)) {
    const auto s = PotentialSpec::kratzer_gamma2(100.0);
    CHECK(std::abs(quantization_residual(s, mono, q, energy(s, mono, q))) < 1e-10);
    const auto v = PotentialSpec::morse_gamma2(2500.0, 1.3, MorseTreatment::Vibrational);
    CHECK(std::abs(quantization_residual(v, mono, q, energy(v, mono, q))) < 1e-10);
    const auto m = PotentialSpec::morse_gamma2(2500.0, 1.3);
    const double kummer = morse_rotvib_energy(q, 0.6, 2500.0, 1.3).kummer;
    CHECK(std::abs(quantization_residual(m, mono, q, kummer)) < 1e-10);
  }
}

TEST_CASE("string raises and monopole weakens binding") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> pd(0.05, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = pd(rng), a2 = a * pd(rng);
    const QuantumNumbers ho{i % 3, i % 2, 1 + i % 3, 0};
    CHECK(ho_string_energy(ho, a2) > ho_string_energy(ho, a));
    const QuantumNumbers co{1 + i % 3, 0, -(1 + i % 2), 2};
    CHECK(coulomb_string_energy(co, a2) > coulomb_string_energy(co, a));
    const QuantumNumbers m0{1 + i % 4, 0, 0, 0};
    CHECK(coulomb_string_energy(m0, a2) == coulomb_string_energy(m0, a));
    const QuantumNumbers kr{i % 3, 0, 0, 1 + i % 3};
    CHECK(kratzer_monopole_energy(kr, a2, 100.0) > kratzer_monopole_energy(kr, a, 100.0));
    CHECK(kratzer_monopole_energy(kr, a2, 100.0) < 0.0);
  }
}

TEST_CASE("spectrum degeneracies") {
  const auto ho = spectrum(PotentialSpec::harmonic(1.0), BackgroundGeometry::cosmic_string(1.0), 2);
  for (const auto& e : ho)
    if (e.energy_analytic == 2.5) CHECK(e.degeneracy_labels.size() == 3);
  for (std::size_t i = 1; i < ho.size(); ++i) CHECK(ho[i].energy_analytic >= ho[i - 1].energy_analytic);

  const auto split = spectrum(PotentialSpec::harmonic(1.0), BackgroundGeometry::cosmic_string(0.999), 1);
  std::set<std::size_t> sizes;
  for (const auto& e : split)
    if (e.energy_analytic > 2.0) sizes.insert(e.degeneracy_labels.size());
  CHECK(sizes == std::set<std::size_t>{1, 2});

  const auto h = spectrum(PotentialSpec::coulomb(1.0), BackgroundGeometry::cosmic_string(1.0), 3);
  for (const auto& e : h) {
    const int n = e.qn.radial + e.qn.orbital;
    CHECK(e.degeneracy_labels.size() == std::size_t(n * n));
  }
}

TEST_CASE("oscillator wavefunction normalization") {
  const HoStringWavefunction g({0, 0, 0, 0}, 1.0);
  CHECK(g.normalization() == doctest::Approx(std::pow(std::numbers::pi, -0.75)).epsilon(1e-8));

  for (const QuantumNumbers q : {QuantumNumbers{0, 0, 0, 0}, QuantumNumbers{1, 2, 1, 0}, QuantumNumbers{2, 0, -3, 0}}) {
    for (double alpha : {1.0, 0.8, 0.5}) {
      const HoStringWavefunction psi(q, alpha);
      const double radial = quad([&](double r) { return psi.density(r, 0.0) / psi.density(1.0, 0.0) * r; }, 0.0, 15.0);
      const double axial = quad([&](double z) { return psi.density(1.0, z); }, -12.0, 12.0);
      // density factorizes: |psi(r,z)|^2 = |psi(r,0)|^2 |psi(1,z)|^2 / |psi(1,0)|^2
      const double total = 2.0 * std::numbers::pi * alpha * radial * axial;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("oscillator wavefunction shape") {
  const HoStringWavefunction psi({0, 0, 1, 0}, 0.5);
  CHECK(psi.nu() == 2.0);
  CHECK(psi.radial(2e-3) / psi.radial(1e-3) == doctest::Approx(4.0).epsilon(1e-5));
  CHECK(std::abs(psi(1.0, 0.3, 0.2)) == doctest::Approx(std::sqrt(psi.density(1.0, 0.2))));
  CHECK(std::arg(psi(1.0, 0.3, 0.0)) == doctest::Approx(0.3));
  CHECK_THROWS_AS(HoStringWavefunction({-1, 0, 0, 0}, 1.0), NotAnEigenfunctionError);
}

TEST_CASE("reduced radial wavefunctions") {
  const ReducedRadialWavefunction h(PotentialSpec::coulomb(1.0), BackgroundGeometry::cosmic_string(1.0), {1, 0, 0, 0});
  for (double r : {0.1, 1.0, 3.0}) CHECK(h(r) == doctest::Approx(2.0 * r * std::exp(-r)).epsilon(1e-9));

  struct Case {
    PotentialSpec spec;
    BackgroundGeometry geom;
    QuantumNumbers qn;
  };
  const Case cases[] = {
      {PotentialSpec::coulomb(1.0), BackgroundGeometry::cosmic_string(0.5), {3, 0, 1, 1}},
      {PotentialSpec::kratzer_gamma2(100.0), BackgroundGeometry::global_monopole(0.3046), {2, 0, 0, 1}},
      {PotentialSpec::morse_gamma2(2500.0, 1.0, MorseTreatment::Vibrational), BackgroundGeometry::global_monopole(0.5),
       {1, 0, 0, 2}},
      {PotentialSpec::morse_gamma2(2500.0, 1.0), BackgroundGeometry::global_monopole(1.0), {1, 0, 0, 1}},
  };
  for (const auto& c : cases) {
    const ReducedRadialWavefunction u(c.spec, c.geom, c.qn);
    const double norm = quad([&](double r) { return u(r) * u(r); }, 0.0, u.extent());
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
    int nodes = 0;
    double prev = 0.0;
    for (int i = 1; i < 20000; ++i) {
      const double v = u(u.extent() * i / 20000.0);
      if (std::abs(v) < 1e-8) continue;
      if (prev != 0.0 && (v > 0) != (prev > 0)) ++nodes;
      prev = v;
    }
    const int expected = c.spec.family == PotentialFamily::Coulomb ? c.qn.radial - 1 : c.qn.radial;
    CHECK(nodes == expected);
  }
  CHECK_THROWS_AS(ReducedRadialWavefunction(PotentialSpec::harmonic(1.0), BackgroundGeometry::minkowski(), {}),
                  DomainError);
}

TEST_CASE("make_entry exposes the Morse variants") {
  const auto e = make_entry(PotentialSpec::morse_gamma2(2500.0, 2.0), BackgroundGeometry::global_monopole(1.0), {0, 0, 0, 1});
  CHECK(e.variants.size() == 3);
  CHECK(e.energy_analytic == e.variants.at("verbatim"));
  CHECK(e.variants.at("rederived") != e.variants.at("verbatim"));
}
