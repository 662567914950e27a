#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace defectqm {

enum class GeometryKind { Minkowski, CosmicString, GlobalMonopole };

/// Background metric of the defect. The string is parametrized by the
/// azimuthal rescaling alpha = 1 - 4G mu, the monopole by b with
/// b^2 = 1 - 8 pi G eta^2. Both equal 1 in Minkowski space.
class BackgroundGeometry {
 public:
  static BackgroundGeometry minkowski() noexcept { return {GeometryKind::Minkowski, 1.0, 1.0}; }
  static BackgroundGeometry cosmic_string(double alpha);
  static BackgroundGeometry global_monopole(double b);

  GeometryKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double b() const noexcept { return b_; }

 private:
  BackgroundGeometry(GeometryKind kind, double alpha, double b) noexcept
      : kind_(kind), alpha_(alpha), b_(b) {}

  GeometryKind kind_;
  double alpha_;
  double b_;
};

enum class PotentialFamily { HarmonicOscillator3D, Coulomb, Kratzer, Morse };

/// How the Morse problem is treated: harmonic expansion about r0 with the
/// angular barrier measured from the shifted origin, or the full exponential
/// potential with the rotational term.
enum class MorseTreatment { Vibrational, RotationalVibrational };

/// Potential family plus its physical parameters. Units are whatever the
/// caller uses, provided mass and hbar are expressed in the same system.
struct PotentialSpec {
  PotentialFamily family = PotentialFamily::HarmonicOscillator3D;
  double mass = 1.0;
  double hbar = 1.0;
  double frequency = 1.0;  // HO w
  double strength = 1.0;   // Coulomb k
  double depth = 1.0;      // Kratzer / Morse D
  double length = 1.0;     // Kratzer A, Morse r0
  double stiffness = 1.0;  // Morse beta
  MorseTreatment morse = MorseTreatment::RotationalVibrational;

  static PotentialSpec harmonic(double w);
  static PotentialSpec coulomb(double k);
  static PotentialSpec kratzer(double depth, double length);
  /// Kratzer with hbar = mu = A = 1 and D fixed by gamma^2 = 2 mu D A^2 / hbar^2.
  static PotentialSpec kratzer_gamma2(double gamma2);
  static PotentialSpec morse_potential(double depth, double beta, double r0,
                                       MorseTreatment treatment = MorseTreatment::RotationalVibrational);
  static PotentialSpec morse_gamma2(double gamma2, double beta,
                                    MorseTreatment treatment = MorseTreatment::RotationalVibrational);

  /// Throws DomainError unless every parameter the family uses is positive and finite.
  void validate() const;
};

/// Integer labels. Meaning per family:
///   HO       radial = n_rho, axial = n_z, magnetic = m
///   Coulomb  radial = n_r' >= 1, orbital = flat-space l >= |m|, magnetic = m
///            (the angular excitation is n = l - |m|)
///   Kratzer  radial = nbar_r, orbital = l
///   Morse    radial = n_M (vibrational) or n (rotational-vibrational), orbital = l
struct QuantumNumbers {
  int radial = 0;
  int axial = 0;
  int magnetic = 0;
  int orbital = 0;

  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

/// Throws DomainError when qn is not admissible for the family.
void validate_quantum_numbers(PotentialFamily family, const QuantumNumbers& qn);

/// Non-integer angular labels generated by the deficit.
struct EffectiveQuantumNumber {
  double m_alpha = 0.0;   // |m| / alpha
  double l_alpha = 0.0;   // m_alpha + n
  double l_b_term = 0.0;  // l(l+1) / b^2
};

EffectiveQuantumNumber effective_quantum_number(PotentialFamily family, const BackgroundGeometry& geom,
                                                const QuantumNumbers& qn);

/// Nondimensionalization: hbar = mass = 1 and one potential parameter = 1.
///   HO       energy hbar w, length sqrt(hbar / (mu w))
///   Coulomb  energy mu k^2 / hbar^2, length hbar^2 / (mu k)
///   Kratzer  energy hbar^2 / (mu A^2), length A, gamma^2 = 2 mu D A^2 / hbar^2
///   Morse    energy hbar^2 / (mu r0^2), length r0, gamma^2 = 2 mu D r0^2 / hbar^2
struct ScaleRecord {
  PotentialFamily family = PotentialFamily::HarmonicOscillator3D;
  double energy_unit = 1.0;
  double length_unit = 1.0;
  double gamma2 = 0.0;  // Kratzer and Morse only
  double beta = 0.0;    // Morse only

  double to_physical_energy(double e) const noexcept { return e * energy_unit; }
  double to_natural_energy(double e) const noexcept { return e / energy_unit; }
  double to_physical_length(double r) const noexcept { return r * length_unit; }
  double to_natural_length(double r) const noexcept { return r / length_unit; }
  /// Depth of the molecular well in natural units (gamma^2 / 2); zero otherwise.
  double natural_depth() const noexcept { return 0.5 * gamma2; }
};

ScaleRecord nondimensionalize(const PotentialSpec& spec, const BackgroundGeometry& geom);

/// Function space the radial coordinate lives in.
///   Line         plain 1D problem on [r_min, r_max], no centrifugal term
///   Cylindrical  u = sqrt(rho) R, transverse part of a cylindrical problem
///   Spherical    u = r R
enum class RadialMeasure { Line, Cylindrical, Spherical };

/// Nondimensional 1D eigenproblem  -u''/2 + [c / r^2 + V(r)] u = E u  with
/// Dirichlet ends. The inverse-square coefficient c is kept apart from V so
/// that solvers can treat the regular singular point at r = 0 exactly.
struct RadialProblem {
  std::function<double(double)> potential;
  double centrifugal = 0.0;
  RadialMeasure measure = RadialMeasure::Spherical;
  double r_min = 1e-12;
  double r_max = 1.0;
  /// Radial index of the state this problem was built for.
  int level = 0;
  /// Exactly known separated energy added to the radial eigenvalue (HO axial part).
  double separated_energy = 0.0;
  ScaleRecord scale;

  double effective_potential(double r) const { return potential(r) + centrifugal / (r * r); }
};

/// Default inner edge. Dirichlet at r_min biases s-states by about
/// u'(0)^2 r_min / 2, so it has to sit well below the target tolerance.
inline constexpr double kDefaultRMin = 1e-12;
/// WKB decay exponent required between the outer turning point and r_max.
inline constexpr double kTailAction = 34.0;

/// Builds the effective radial problem for one state and sizes its box from
/// a Langer-corrected Bohr-Sommerfeld estimate of the targeted level.
RadialProblem effective_radial_problem(const PotentialSpec& spec, const BackgroundGeometry& geom,
                                       const QuantumNumbers& qn);

/// Langer-corrected Bohr-Sommerfeld estimate of the radial level `level`.
/// Exact for the Coulomb, Kratzer and oscillator families. Throws
/// UnboundStateError if the well cannot hold that many levels.
double wkb_level_estimate(const RadialProblem& problem, int level);

/// Outer radius where the WKB decay exponent beyond the outer turning point
/// at `energy` reaches `tail_action`.
double tail_radius(const RadialProblem& problem, double energy, double tail_action = kTailAction);

std::string_view family_name(PotentialFamily family) noexcept;
/// CLI system identifier: ho-string, coulomb-string, kratzer-monopole, morse-monopole.
std::string_view system_name(PotentialFamily family) noexcept;
std::optional<PotentialFamily> family_from_system(std::string_view name) noexcept;
/// Deficit parameter relevant to the family: alpha for string systems, b for
/// monopole systems. Throws DomainError for a mismatched background.
double deficit_parameter(PotentialFamily family, const BackgroundGeometry& geom);
/// Geometry of the family's defect with the given parameter (1 gives the flat limit).
BackgroundGeometry defect_geometry(PotentialFamily family, double parameter);

}  // namespace defectqm
