#include "defectqm/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "defectqm/errors.hpp"

namespace defectqm {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void require_positive(double x, const char* what) {
  if (!positive_finite(x)) throw DomainError(fmt::format("{} must be positive and finite, got {}", what, x));
}

bool string_family(PotentialFamily f) {
  return f == PotentialFamily::HarmonicOscillator3D || f == PotentialFamily::Coulomb;
}

}  // namespace

BackgroundGeometry BackgroundGeometry::cosmic_string(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError(fmt::format("cosmic string needs 0 < alpha <= 1, got {}", alpha));
  return {GeometryKind::CosmicString, alpha, 1.0};
}

BackgroundGeometry BackgroundGeometry::global_monopole(double b) {
  if (!(b > 0.0 && b <= 1.0)) throw DomainError(fmt::format("global monopole needs 0 < b <= 1, got {}", b));
  return {GeometryKind::GlobalMonopole, 1.0, b};
}

PotentialSpec PotentialSpec::harmonic(double w) {
  PotentialSpec s;
  s.family = PotentialFamily::HarmonicOscillator3D;
  s.frequency = w;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::coulomb(double k) {
  PotentialSpec s;
  s.family = PotentialFamily::Coulomb;
  s.strength = k;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::kratzer(double depth, double length) {
  PotentialSpec s;
  s.family = PotentialFamily::Kratzer;
  s.depth = depth;
  s.length = length;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::kratzer_gamma2(double gamma2) {
  require_positive(gamma2, "gamma^2");
  return kratzer(0.5 * gamma2, 1.0);
}

PotentialSpec PotentialSpec::morse_potential(double depth, double beta, double r0, MorseTreatment treatment) {
  PotentialSpec s;
  s.family = PotentialFamily::Morse;
  s.depth = depth;
  s.stiffness = beta;
  s.length = r0;
  s.morse = treatment;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::morse_gamma2(double gamma2, double beta, MorseTreatment treatment) {
  require_positive(gamma2, "gamma^2");
  return morse_potential(0.5 * gamma2, beta, 1.0, treatment);
}

void PotentialSpec::validate() const {
  require_positive(mass, "mass");
  require_positive(hbar, "hbar");
  switch (family) {
    case PotentialFamily::HarmonicOscillator3D:
      require_positive(frequency, "w");
      break;
    case PotentialFamily::Coulomb:
      require_positive(strength, "k");
      break;
    case PotentialFamily::Kratzer:
      require_positive(depth, "D");
      require_positive(length, "A");
      break;
    case PotentialFamily::Morse:
      require_positive(depth, "D");
      require_positive(stiffness, "beta");
      require_positive(length, "r0");
      break;
  }
}

void validate_quantum_numbers(PotentialFamily family, const QuantumNumbers& qn) {
  switch (family) {
    case PotentialFamily::HarmonicOscillator3D:
      if (qn.radial < 0 || qn.axial < 0) throw DomainError("HO needs n_rho >= 0 and n_z >= 0");
      break;
    case PotentialFamily::Coulomb:
      if (qn.radial < 1) throw DomainError("Coulomb needs n_r' >= 1");
      if (qn.orbital < std::abs(qn.magnetic)) throw DomainError("Coulomb needs l >= |m| (n = l - |m| >= 0)");
      break;
    case PotentialFamily::Kratzer:
    case PotentialFamily::Morse:
      if (qn.radial < 0 || qn.orbital < 0) throw DomainError("radial and orbital labels must be >= 0");
      break;
  }
}

double deficit_parameter(PotentialFamily family, const BackgroundGeometry& geom) {
  if (string_family(family)) {
    if (geom.kind() == GeometryKind::GlobalMonopole)
      throw DomainError(fmt::format("{} is posed in a cosmic-string background", family_name(family)));
    return geom.alpha();
  }
  if (geom.kind() == GeometryKind::CosmicString)
    throw DomainError(fmt::format("{} is posed in a global-monopole background", family_name(family)));
  return geom.b();
}

BackgroundGeometry defect_geometry(PotentialFamily family, double parameter) {
  return string_family(family) ? BackgroundGeometry::cosmic_string(parameter)
                               : BackgroundGeometry::global_monopole(parameter);
}

EffectiveQuantumNumber effective_quantum_number(PotentialFamily family, const BackgroundGeometry& geom,
                                                const QuantumNumbers& qn) {
  validate_quantum_numbers(family, qn);
  const double p = deficit_parameter(family, geom);
  EffectiveQuantumNumber e;
  if (string_family(family)) {
    e.m_alpha = std::abs(qn.magnetic) / p;
    const int n = family == PotentialFamily::Coulomb ? qn.orbital - std::abs(qn.magnetic) : 0;
    e.l_alpha = e.m_alpha + n;
  } else {
    e.l_b_term = qn.orbital * (qn.orbital + 1.0) / (p * p);
  }
  return e;
}

ScaleRecord nondimensionalize(const PotentialSpec& spec, const BackgroundGeometry& geom) {
  spec.validate();
  deficit_parameter(spec.family, geom);
  ScaleRecord s;
  s.family = spec.family;
  const double mu = spec.mass, hb = spec.hbar;
  switch (spec.family) {
    case PotentialFamily::HarmonicOscillator3D:
      s.energy_unit = hb * spec.frequency;
      s.length_unit = std::sqrt(hb / (mu * spec.frequency));
      break;
    case PotentialFamily::Coulomb:
      s.energy_unit = mu * spec.strength * spec.strength / (hb * hb);
      s.length_unit = hb * hb / (mu * spec.strength);
      break;
    case PotentialFamily::Kratzer:
    case PotentialFamily::Morse:
      s.energy_unit = hb * hb / (mu * spec.length * spec.length);
      s.length_unit = spec.length;
      s.gamma2 = 2.0 * mu * spec.depth * spec.length * spec.length / (hb * hb);
      if (spec.family == PotentialFamily::Morse) s.beta = spec.stiffness;
      break;
  }
  return s;
}

RadialProblem effective_radial_problem(const PotentialSpec& spec, const BackgroundGeometry& geom,
                                       const QuantumNumbers& qn) {
  const ScaleRecord scale = nondimensionalize(spec, geom);
  const EffectiveQuantumNumber eq = effective_quantum_number(spec.family, geom, qn);

  RadialProblem p;
  p.scale = scale;
  p.r_min = kDefaultRMin;
  p.level = qn.radial;
  p.measure = RadialMeasure::Spherical;

  const double depth = scale.natural_depth();
  switch (spec.family) {
    case PotentialFamily::HarmonicOscillator3D:
      p.measure = RadialMeasure::Cylindrical;
      p.centrifugal = (eq.m_alpha * eq.m_alpha - 0.25) / 2.0;
      p.potential = [](double r) { return 0.5 * r * r; };
      p.separated_energy = qn.axial + 0.5;
      break;
    case PotentialFamily::Coulomb:
      p.centrifugal = eq.l_alpha * (eq.l_alpha + 1.0) / 2.0;
      p.potential = [](double r) { return -1.0 / r; };
      p.level = qn.radial - 1;
      break;
    case PotentialFamily::Kratzer:
      // -2D(1/r - 1/(2r^2)): the repulsive 1/r^2 part joins the angular barrier.
      p.centrifugal = eq.l_b_term / 2.0 + depth;
      p.potential = [depth](double r) { return -2.0 * depth / r; };
      break;
    case PotentialFamily::Morse:
      p.centrifugal = eq.l_b_term / 2.0;
      if (spec.morse == MorseTreatment::Vibrational) {
        const double w = std::sqrt(scale.gamma2) * scale.beta;
        p.potential = [depth, w](double r) { return -depth + 0.5 * w * w * r * r; };
      } else {
        const double beta = scale.beta;
        p.potential = [depth, beta](double r) {
          const double e = std::exp(-beta * (r - 1.0));
          return depth * (e * e - 2.0 * e);
        };
      }
      break;
  }

  const double energy = wkb_level_estimate(p, p.level);
  p.r_max = tail_radius(p, energy);
  return p;
}

namespace {

constexpr double kScanMin = 1e-7;
constexpr double kScanMax = 1e6;

double langer(const RadialProblem& p, double r) { return p.potential(r) + (p.centrifugal + 0.125) / (r * r); }

struct Well {
  double r_star;
  double v_min;
  double v_far;
};

Well locate_well(const RadialProblem& p) {
  constexpr int n = 6000;
  const double lmin = std::log(kScanMin), lmax = std::log(kScanMax);
  Well w{kScanMin, langer(p, kScanMin), langer(p, kScanMax)};
  for (int i = 0; i <= n; ++i) {
    const double r = std::exp(lmin + (lmax - lmin) * i / n);
    const double v = langer(p, r);
    if (!std::isfinite(v)) continue;
    if (v < w.v_min) {
      w.v_min = v;
      w.r_star = r;
    }
  }
  return w;
}

// Root of langer(r) = e between lo (below e) and hi (above e), or the reverse.
double crossing(const RadialProblem& p, double e, double lo, double hi) {
  double flo = langer(p, lo) - e;
  for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = langer(p, mid) - e;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct TurningPoints {
  double inner;
  double outer;
  bool bound;
};

TurningPoints turning_points(const RadialProblem& p, const Well& w, double e) {
  TurningPoints tp{0.0, 0.0, true};
  tp.inner = langer(p, kScanMin) < e ? 0.0 : crossing(p, e, w.r_star, kScanMin);
  double hi = std::max(2.0 * w.r_star, 1e-3);
  while (langer(p, hi) < e) {
    hi *= 2.0;
    if (hi > kScanMax) {
      tp.bound = false;
      return tp;
    }
  }
  tp.outer = crossing(p, e, w.r_star, hi);
  return tp;
}

double phase_integral(const RadialProblem& p, const TurningPoints& tp, double e) {
  // r = c - h cos(theta) absorbs the square-root endpoints.
  constexpr int n = 4000;
  const double c = 0.5 * (tp.outer + tp.inner), h = 0.5 * (tp.outer - tp.inner);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = std::numbers::pi * (i + 0.5) / n;
    const double r = std::max(c - h * std::cos(th), 1e-300);
    const double k2 = 2.0 * (e - langer(p, r));
    if (k2 > 0) s += std::sqrt(k2) * h * std::sin(th);
  }
  return s * std::numbers::pi / n;
}

}  // namespace

double wkb_level_estimate(const RadialProblem& problem, int level) {
  if (problem.measure == RadialMeasure::Line) throw DomainError("WKB sizing needs a radial problem");
  if (level < 0) throw DomainError("level must be >= 0");
  const Well w = locate_well(problem);
  const double target = std::numbers::pi * (level + 0.5);

  auto action = [&](double e) {
    const TurningPoints tp = turning_points(problem, w, e);
    if (!tp.bound) return std::numeric_limits<double>::infinity();
    return phase_integral(problem, tp, e);
  };

  double lo = w.v_min;
  double gap = std::max(1.0, std::abs(w.v_min) * 1e-3);
  double hi = w.v_min + gap;
  while (action(hi) < target) {
    if (hi >= w.v_far) throw UnboundStateError(fmt::format("well does not hold radial level {}", level));
    lo = hi;
    gap *= 2.0;
    hi = std::min(w.v_min + gap, w.v_far);
  }
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (action(mid) < target ? lo : hi) = mid;
  }
  const double e = 0.5 * (lo + hi);
  if (e >= w.v_far) throw UnboundStateError(fmt::format("well does not hold radial level {}", level));
  return e;
}

double tail_radius(const RadialProblem& problem, double energy, double tail_action) {
  const Well w = locate_well(problem);
  const TurningPoints tp = turning_points(problem, w, energy);
  if (!tp.bound) throw UnboundStateError("energy lies above the continuum threshold");
  const double step = 1e-3 * std::max(tp.outer, 1.0);
  double r = tp.outer, s = 0.0;
  double prev = 0.0;
  while (s < tail_action) {
    r += step;
    const double k = std::sqrt(std::max(2.0 * (langer(problem, r) - energy), 0.0));
    s += 0.5 * (k + prev) * step;
    prev = k;
    if (r > kScanMax) throw UnboundStateError("tail does not decay within the scan range");
  }
  return r;
}

std::string_view family_name(PotentialFamily family) noexcept {
  switch (family) {
    case PotentialFamily::HarmonicOscillator3D: return "harmonic-oscillator";
    case PotentialFamily::Coulomb: return "coulomb";
    case PotentialFamily::Kratzer: return "kratzer";
    case PotentialFamily::Morse: return "morse";
  }
  return "unknown";
}

std::string_view system_name(PotentialFamily family) noexcept {
  switch (family) {
    case PotentialFamily::HarmonicOscillator3D: return "ho-string";
    case PotentialFamily::Coulomb: return "coulomb-string";
    case PotentialFamily::Kratzer: return "kratzer-monopole";
    case PotentialFamily::Morse: return "morse-monopole";
  }
  return "unknown";
}

std::optional<PotentialFamily> family_from_system(std::string_view name) noexcept {
  if (name == "ho-string") return PotentialFamily::HarmonicOscillator3D;
  if (name == "coulomb-string") return PotentialFamily::Coulomb;
  if (name == "kratzer-monopole") return PotentialFamily::Kratzer;
  if (name == "morse-monopole") return PotentialFamily::Morse;
  return std::nullopt;
}

}  // namespace defectqm
