#include "defectqm/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "defectqm/errors.hpp"
#include "defectqm/specfun.hpp"

namespace defectqm::analytic {

namespace {

using specfun::kummer_1f1;

double lb_term(int l, double b) { return l * (l + 1.0) / (b * b); }

void require_unit_interval(double p, const char* name) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError(fmt::format("{} must lie in (0, 1], got {}", name, p));
}

void require_positive(double x, const char* name) {
  if (!(std::isfinite(x) && x > 0.0)) throw DomainError(fmt::format("{} must be positive, got {}", name, x));
}

// Integral of f over [a, b], split so the adaptive rule sees each bump.
template <class F>
double integrate(F f, double a, double b, int pieces = 16) {
  using boost::math::quadrature::gauss_kronrod;
  double s = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + (b - a) * i / pieces, hi = a + (b - a) * (i + 1) / pieces;
    s += gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-13);
  }
  return s;
}

}  // namespace

double ho_string_energy(const QuantumNumbers& qn, double alpha) {
  require_unit_interval(alpha, "alpha");
  validate_quantum_numbers(PotentialFamily::HarmonicOscillator3D, qn);
  return 2.0 * qn.radial + qn.axial + std::abs(qn.magnetic) / alpha + 1.5;
}

double coulomb_string_energy(const QuantumNumbers& qn, double alpha) {
  require_unit_interval(alpha, "alpha");
  const auto eq = effective_quantum_number(PotentialFamily::Coulomb, BackgroundGeometry::cosmic_string(alpha), qn);
  const double n = eq.l_alpha + qn.radial;
  return -0.5 / (n * n);
}

KratzerDerived kratzer_derived(int l, double b, double gamma2) {
  require_unit_interval(b, "b");
  require_positive(gamma2, "gamma^2");
  if (l < 0) throw DomainError("l must be >= 0");
  KratzerDerived k;
  k.gamma2 = gamma2;
  k.lambda_l = 0.5 + std::sqrt(0.25 + gamma2 + lb_term(l, b));
  k.theta = 1.0;
  k.w_classical = std::sqrt(gamma2);
  return k;
}

double kratzer_monopole_energy(const QuantumNumbers& qn, double b, double gamma2) {
  validate_quantum_numbers(PotentialFamily::Kratzer, qn);
  const KratzerDerived k = kratzer_derived(qn.orbital, b, gamma2);
  const double s = qn.radial + k.lambda_l;
  return -0.5 * gamma2 * gamma2 / (s * s);
}

std::array<double, 5> kratzer_expansion_terms(const QuantumNumbers& qn, double b, double gamma2) {
  validate_quantum_numbers(PotentialFamily::Kratzer, qn);
  const KratzerDerived k = kratzer_derived(qn.orbital, b, gamma2);
  const double depth = 0.5 * gamma2;
  // w^2 = 2D / (mu A^2); no square root so the first term is exactly -D.
  const double w2 = 2.0 * depth / k.theta;
  const double w = k.w_classical;
  const double v = qn.radial + 0.5;
  const double ang = 0.25 + lb_term(qn.orbital, b);
  return {-0.5 * w2 * k.theta, v * w, ang / (2.0 * k.theta), -1.5 * v * v / k.theta,
          -1.5 * v * ang / (w * k.theta * k.theta)};
}

KratzerExpansion kratzer_expansion_energy(const QuantumNumbers& qn, double b, double gamma2) {
  const auto t = kratzer_expansion_terms(qn, b, gamma2);
  KratzerExpansion e;
  e.energy = (((t[0] + t[1]) + t[2]) + t[3]) + t[4];
  e.in_regime = std::sqrt(gamma2) >= kKratzerExpansionMinGamma;
  return e;
}

MorseCoefficients morse_coefficients(double beta) {
  require_positive(beta, "beta");
  const double ib = 1.0 / beta, ib2 = ib * ib;
  return {1.0 - 3.0 * ib + 3.0 * ib2, 4.0 * ib - 6.0 * ib2, -ib + 3.0 * ib2};
}

MorseDerived morse_derived(int l, double b, double gamma2, double beta, double energy) {
  require_unit_interval(b, "b");
  require_positive(gamma2, "gamma^2");
  if (l < 0) throw DomainError("l must be >= 0");
  MorseDerived d;
  d.gamma2 = gamma2;
  d.c = morse_coefficients(beta);
  const double L = lb_term(l, b);
  d.beta1_sq = L * d.c.c0 - 2.0 * energy;
  d.gamma1_sq = gamma2 - 0.5 * d.c.c1 * L;
  d.gamma2_rot = std::sqrt(gamma2 + d.c.c2 * L);
  return d;
}

double morse_vibrational_energy(const QuantumNumbers& qn, double b, double gamma2, double beta) {
  validate_quantum_numbers(PotentialFamily::Morse, qn);
  require_unit_interval(b, "b");
  require_positive(gamma2, "gamma^2");
  require_positive(beta, "beta");
  const double w = std::sqrt(gamma2) * beta;
  const double n_lm = 0.5 * (std::sqrt(1.0 + 4.0 * lb_term(qn.orbital, b)) - 1.0) + 2.0 * qn.radial;
  return w * (n_lm + 1.5) - 0.5 * gamma2;
}

MorseRotVib morse_rotvib_energy(const QuantumNumbers& qn, double b, double gamma2, double beta) {
  validate_quantum_numbers(PotentialFamily::Morse, qn);
  require_unit_interval(b, "b");
  require_positive(gamma2, "gamma^2");
  const MorseCoefficients c = morse_coefficients(beta);
  const double g = std::sqrt(gamma2);
  const double v = qn.radial + 0.5;
  const int l = qn.orbital;
  const double L = lb_term(l, b);
  const double ladder = -gamma2 + 2.0 * g * beta * v - beta * beta * v * v;
  const double c12 = c.c1 + c.c2;

  MorseRotVib r;
  const double ll = l * (l + 1.0);
  r.verbatim = 0.5 * (ladder + L - 3.0 * (beta - 1.0) / (beta * g) * v * L -
                      9.0 * (beta - 1.0) * (beta - 1.0) / (4.0 * gamma2) * ll * ll / (b * b));
  r.rederived =
      0.5 * (ladder + L * (c.c0 + c12) - beta * L * c12 * v / g - L * L * c12 * c12 / (4.0 * gamma2));

  const MorseDerived d = morse_derived(l, b, gamma2, beta, 0.0);
  const double s = d.gamma1_sq / d.gamma2_rot - beta * v;
  r.kummer = 0.5 * (L * c.c0 - s * s);

  r.turning_x = std::sqrt((2.0 * qn.radial + 1.0) / (g * beta));
  r.valid = r.turning_x < kMorseValidX;
  return r;
}

double morse_quantization_residual(const QuantumNumbers& qn, double b, double gamma2, double beta, double energy) {
  const MorseDerived d = morse_derived(qn.orbital, b, gamma2, beta, energy);
  if (d.beta1_sq < 0.0) throw DomainError("energy lies above the rotational threshold");
  return 0.5 + std::sqrt(d.beta1_sq) / beta - d.gamma1_sq / (d.gamma2_rot * beta) + qn.radial;
}

double energy(const PotentialSpec& spec, const BackgroundGeometry& geom, const QuantumNumbers& qn) {
  const ScaleRecord s = nondimensionalize(spec, geom);
  const double p = deficit_parameter(spec.family, geom);
  switch (spec.family) {
    case PotentialFamily::HarmonicOscillator3D: return ho_string_energy(qn, p);
    case PotentialFamily::Coulomb: return coulomb_string_energy(qn, p);
    case PotentialFamily::Kratzer: return kratzer_monopole_energy(qn, p, s.gamma2);
    case PotentialFamily::Morse:
      if (spec.morse == MorseTreatment::Vibrational) return morse_vibrational_energy(qn, p, s.gamma2, s.beta);
      return morse_rotvib_energy(qn, p, s.gamma2, s.beta).verbatim;
  }
  throw DomainError("unknown potential family");
}

double quantization_residual(const PotentialSpec& spec, const BackgroundGeometry& geom, const QuantumNumbers& qn,
                             double e) {
  const ScaleRecord s = nondimensionalize(spec, geom);
  const EffectiveQuantumNumber eq = effective_quantum_number(spec.family, geom, qn);
  // Each residual is a + n, where M(a, c, x) must reduce to a polynomial of degree n.
  switch (spec.family) {
    case PotentialFamily::HarmonicOscillator3D: {
      const double e_rho = e - (qn.axial + 0.5);
      return 0.5 * (1.0 + eq.m_alpha) - 0.5 * e_rho + qn.radial;
    }
    case PotentialFamily::Coulomb: {
      if (!(e < 0.0)) throw DomainError("Coulomb bound states have E < 0");
      return eq.l_alpha + 1.0 - 1.0 / std::sqrt(-2.0 * e) + (qn.radial - 1);
    }
    case PotentialFamily::Kratzer: {
      if (!(e < 0.0)) throw DomainError("Kratzer bound states have E < 0");
      const KratzerDerived k = kratzer_derived(qn.orbital, geom.b(), s.gamma2);
      return k.lambda_l - s.gamma2 / std::sqrt(-2.0 * e) + qn.radial;
    }
    case PotentialFamily::Morse: {
      if (spec.morse == MorseTreatment::RotationalVibrational)
        return morse_quantization_residual(qn, geom.b(), s.gamma2, s.beta, e);
      const double w = std::sqrt(s.gamma2) * s.beta;
      const double l_eff = 0.5 * (std::sqrt(1.0 + 4.0 * eq.l_b_term) - 1.0);
      return 0.5 * (l_eff + 1.5) - 0.5 * (e + 0.5 * s.gamma2) / w + qn.radial;
    }
  }
  throw DomainError("unknown potential family");
}

HoStringWavefunction::HoStringWavefunction(const QuantumNumbers& qn, double alpha) : qn_(qn), alpha_(alpha) {
  if (qn.radial < 0 || qn.axial < 0) throw NotAnEigenfunctionError("HO labels n_rho and n_z must be >= 0");
  require_unit_interval(alpha, "alpha");
  nu_ = std::abs(qn.magnetic) / alpha;
  energy_ = ho_string_energy(qn, alpha);

  const double rho_max = std::sqrt(2.0 * (2.0 * qn.radial + nu_ + 1.0)) + 9.0;
  const double radial_int = integrate([this](double r) { const double R = radial(r); return R * R * r; }, 0.0, rho_max);
  const double z_max = std::sqrt(2.0 * qn.axial + 1.0) + 9.0;
  const double axial_int =
      integrate([this](double z) { const double Z = axial(z); return Z * Z; }, -z_max, z_max);
  norm_ = 1.0 / std::sqrt(2.0 * std::numbers::pi * alpha * radial_int * axial_int);
}

double HoStringWavefunction::radial(double rho) const {
  if (rho < 0.0) throw DomainError("rho must be >= 0");
  const double x = rho * rho;
  const double power = nu_ == 0.0 ? 1.0 : std::pow(rho, nu_);
  return std::exp(-0.5 * x) * power * kummer_1f1({-static_cast<double>(qn_.radial), 1.0 + nu_, x});
}

double HoStringWavefunction::axial(double z) const { return specfun::hermite(qn_.axial, z) * std::exp(-0.5 * z * z); }

std::complex<double> HoStringWavefunction::operator()(double rho, double theta, double z) const {
  return norm_ * radial(rho) * axial(z) * std::polar(1.0, qn_.magnetic * theta);
}

double HoStringWavefunction::density(double rho, double z) const {
  const double v = norm_ * radial(rho) * axial(z);
  return v * v;
}

ReducedRadialWavefunction::ReducedRadialWavefunction(const PotentialSpec& spec, const BackgroundGeometry& geom,
                                                     const QuantumNumbers& qn) {
  if (spec.family == PotentialFamily::HarmonicOscillator3D)
    throw DomainError("the oscillator wavefunction is cylindrical; use HoStringWavefunction");
  validate_quantum_numbers(spec.family, qn);
  const ScaleRecord s = nondimensionalize(spec, geom);
  const EffectiveQuantumNumber eq = effective_quantum_number(spec.family, geom, qn);
  const double p = deficit_parameter(spec.family, geom);

  switch (spec.family) {
    case PotentialFamily::Coulomb: {
      const double la = eq.l_alpha;
      const double kappa = 1.0 / (la + qn.radial);
      const double n = qn.radial - 1.0;
      energy_ = -0.5 * kappa * kappa;
      shape_ = [la, kappa, n](double r) {
        return std::pow(r, la + 1.0) * std::exp(-kappa * r) * kummer_1f1({-n, 2.0 * la + 2.0, 2.0 * kappa * r});
      };
      break;
    }
    case PotentialFamily::Kratzer: {
      const double lambda = kratzer_derived(qn.orbital, p, s.gamma2).lambda_l;
      const double kappa = s.gamma2 / (qn.radial + lambda);
      const double n = qn.radial;
      energy_ = -0.5 * kappa * kappa;
      shape_ = [lambda, kappa, n](double r) {
        return std::pow(r, lambda) * std::exp(-kappa * r) * kummer_1f1({-n, 2.0 * lambda, 2.0 * kappa * r});
      };
      break;
    }
    case PotentialFamily::Morse: {
      const double n = qn.radial;
      if (spec.morse == MorseTreatment::Vibrational) {
        const double w = std::sqrt(s.gamma2) * s.beta;
        const double l_eff = 0.5 * (std::sqrt(1.0 + 4.0 * eq.l_b_term) - 1.0);
        energy_ = morse_vibrational_energy(qn, p, s.gamma2, s.beta);
        shape_ = [w, l_eff, n](double r) {
          return std::pow(r, l_eff + 1.0) * std::exp(-0.5 * w * r * r) * kummer_1f1({-n, l_eff + 1.5, w * r * r});
        };
      } else {
        energy_ = morse_rotvib_energy(qn, p, s.gamma2, s.beta).kummer;
        const MorseDerived d = morse_derived(qn.orbital, p, s.gamma2, s.beta, energy_);
        const double beta = s.beta;
        const double sp = std::sqrt(std::max(d.beta1_sq, 0.0)) / beta;
        const double zs = 2.0 * d.gamma2_rot / beta;
        shape_ = [beta, sp, zs, n](double r) {
          const double z = zs * std::exp(-beta * (r - 1.0));
          return std::exp(-0.5 * z) * std::pow(z, sp) * kummer_1f1({-n, 2.0 * sp + 1.0, z});
        };
      }
      break;
    }
    case PotentialFamily::HarmonicOscillator3D:
      break;
  }

  extent_ = effective_radial_problem(spec, geom, qn).r_max;
  const double total = integrate([this](double r) { const double u = shape_(r); return u * u; }, 0.0, extent_, 64);
  if (!(total > 0.0) || !std::isfinite(total)) throw ConvergenceError("wavefunction normalization failed");
  norm_ = 1.0 / std::sqrt(total);
}

SpectrumEntry make_entry(const PotentialSpec& spec, const BackgroundGeometry& geom, const QuantumNumbers& qn) {
  SpectrumEntry e;
  e.qn = qn;
  if (spec.family == PotentialFamily::Morse && spec.morse == MorseTreatment::RotationalVibrational) {
    const ScaleRecord s = nondimensionalize(spec, geom);
    const MorseRotVib r = morse_rotvib_energy(qn, deficit_parameter(spec.family, geom), s.gamma2, s.beta);
    e.energy_analytic = r.verbatim;
    e.variants = {{"verbatim", r.verbatim}, {"rederived", r.rederived}, {"kummer", r.kummer}};
  } else {
    e.energy_analytic = energy(spec, geom, qn);
  }
  e.degeneracy_labels = {qn};
  return e;
}

std::vector<QuantumNumbers> shell_labels(PotentialFamily family, int qn_max) {
  if (qn_max < 0) throw DomainError("qn_max must be >= 0");
  std::vector<QuantumNumbers> out;
  switch (family) {
    case PotentialFamily::HarmonicOscillator3D:
      for (int nr = 0; 2 * nr <= qn_max; ++nr)
        for (int nz = 0; 2 * nr + nz <= qn_max; ++nz)
          for (int m = -(qn_max - 2 * nr - nz); m <= qn_max - 2 * nr - nz; ++m) out.push_back({nr, nz, m, 0});
      break;
    case PotentialFamily::Coulomb:
      for (int nr = 1; nr <= qn_max; ++nr)
        for (int l = 0; nr + l <= qn_max; ++l)
          for (int m = -l; m <= l; ++m) out.push_back({nr, 0, m, l});
      break;
    case PotentialFamily::Kratzer:
    case PotentialFamily::Morse:
      for (int n = 0; n <= qn_max; ++n)
        for (int l = 0; n + l <= qn_max; ++l) out.push_back({n, 0, 0, l});
      break;
  }
  return out;
}

void assign_degeneracies(std::vector<SpectrumEntry>& entries, double tolerance) {
  std::size_t start = 0;
  while (start < entries.size()) {
    std::size_t end = start + 1;
    while (end < entries.size() && std::abs(entries[end].energy_analytic - entries[start].energy_analytic) <= tolerance)
      ++end;
    std::vector<QuantumNumbers> labels;
    for (std::size_t i = start; i < end; ++i) labels.push_back(entries[i].qn);
    for (std::size_t i = start; i < end; ++i) entries[i].degeneracy_labels = labels;
    start = end;
  }
}

std::vector<SpectrumEntry> spectrum(const PotentialSpec& spec, const BackgroundGeometry& geom, int qn_max) {
  std::vector<SpectrumEntry> out;
  for (const QuantumNumbers& qn : shell_labels(spec.family, qn_max)) out.push_back(make_entry(spec, geom, qn));
  std::stable_sort(out.begin(), out.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.energy_analytic < b.energy_analytic; });
  assign_degeneracies(out);
  return out;
}

}  // namespace defectqm::analytic
