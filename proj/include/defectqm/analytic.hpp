#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "defectqm/core_model.hpp"

namespace defectqm::analytic {

/// All energies in this namespace are nondimensional (see ScaleRecord).

/// E = N + |m|/alpha + 3/2 with N = 2 n_rho + n_z, in units hbar w.
double ho_string_energy(const QuantumNumbers& qn, double alpha);

/// E = -1 / (2 (l_alpha + n_r')^2) in units mu k^2 / hbar^2.
double coulomb_string_energy(const QuantumNumbers& qn, double alpha);

/// Kratzer quantities with hbar = mu = A = 1.
struct KratzerDerived {
  double gamma2 = 0.0;
  double lambda_l = 0.0;     // 1/2 + sqrt(1/4 + gamma^2 + l(l+1)/b^2)
  double theta = 1.0;        // moment of inertia mu A^2
  double w_classical = 0.0;  // sqrt(2 D / (mu A^2)) = gamma
};
KratzerDerived kratzer_derived(int l, double b, double gamma2);

/// -gamma^4 / 2 * (nbar_r + 1/2 + sqrt(1/4 + l(l+1)/b^2 + gamma^2))^-2 in units hbar^2/(mu A^2).
double kratzer_monopole_energy(const QuantumNumbers& qn, double b, double gamma2);

/// Large-gamma expansion, returned term by term:
///   [0] -w^2 Theta / 2                      (dissociation term, -D)
///   [1] (n + 1/2) hbar w
///   [2] hbar^2 / (2 Theta) (1/4 + l(l+1)/b^2)
///   [3] -3 (n + 1/2)^2 hbar^2 / (2 Theta)
///   [4] -3/2 (n + 1/2)(1/4 + l(l+1)/b^2) hbar^3 / (w Theta^2)
std::array<double, 5> kratzer_expansion_terms(const QuantumNumbers& qn, double b, double gamma2);

struct KratzerExpansion {
  double energy = 0.0;
  /// false when gamma < 10, below which the expansion is not trusted.
  bool in_regime = true;
};
KratzerExpansion kratzer_expansion_energy(const QuantumNumbers& qn, double b, double gamma2);

inline constexpr double kKratzerExpansionMinGamma = 10.0;

/// Coefficients of the fit 1/(1+x)^2 ~ c0 + c1 e^{-beta x} + c2 e^{-2 beta x},
/// matched through second order in x.
struct MorseCoefficients {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};
MorseCoefficients morse_coefficients(double beta);

/// Rotational parameters of the exponential-form radial equation, natural units.
struct MorseDerived {
  double gamma2 = 0.0;
  MorseCoefficients c;
  double beta1_sq = 0.0;    // l(l+1)/b^2 c0 - 2 E
  double gamma1_sq = 0.0;   // gamma^2 - c1/2 l(l+1)/b^2
  double gamma2_rot = 0.0;  // sqrt(gamma^2 + c2 l(l+1)/b^2)
};
MorseDerived morse_derived(int l, double b, double gamma2, double beta, double energy);

/// Harmonic-approximation level hbar w (N_lM + 3/2) - D with
/// N_lM = (sqrt(1 + 4 l(l+1)/b^2) - 1)/2 + 2 n_M and w = gamma beta.
double morse_vibrational_energy(const QuantumNumbers& qn, double b, double gamma2, double beta);

/// Rotational-vibrational Morse level evaluated three ways (units hbar^2/(M r0^2)):
///   verbatim    closed form with l^2(l+1)^2 / b^2 and no 1/beta^4 in the last term
///   rederived   expansion of the Kummer quantization to O(gamma^-2), with
///               (l(l+1)/b^2)^2 (c1+c2)^2 / (4 gamma^2) and c0 + c1 + c2 kept symbolic
///   kummer      quantization condition solved without expanding gamma1^2/gamma2
struct MorseRotVib {
  double verbatim = 0.0;
  double rederived = 0.0;
  double kummer = 0.0;
  /// Harmonic turning-point amplitude |x| = sqrt((2n+1)/(gamma beta)).
  double turning_x = 0.0;
  /// false when turning_x >= 0.3, outside the small-|x| expansion.
  bool valid = true;
};
inline constexpr double kMorseValidX = 0.3;
MorseRotVib morse_rotvib_energy(const QuantumNumbers& qn, double b, double gamma2, double beta);

/// 1/2 + |beta1/beta| - gamma1^2/(gamma2 beta) + n for `energy`; zero when the
/// Kummer series terminates at degree n.
double morse_quantization_residual(const QuantumNumbers& qn, double b, double gamma2, double beta, double energy);

/// Analytic energy for any supported (spec, geometry, qn), natural units.
/// Morse uses the treatment stored in spec (verbatim closed form for the
/// rotational-vibrational case).
double energy(const PotentialSpec& spec, const BackgroundGeometry& geom, const QuantumNumbers& qn);

/// Residual of the termination condition that quantizes this level; zero up to
/// rounding for every closed-form energy above (and for the Morse kummer path).
double quantization_residual(const PotentialSpec& spec, const BackgroundGeometry& geom, const QuantumNumbers& qn,
                             double energy);

/// HO eigenfunction in the string background, natural units.
class HoStringWavefunction {
 public:
  /// Throws NotAnEigenfunctionError for negative labels.
  HoStringWavefunction(const QuantumNumbers& qn, double alpha);

  /// Unnormalized radial part exp(-rho^2/2) rho^nu M(-n_rho, 1 + nu, rho^2).
  double radial(double rho) const;
  /// Axial Hermite-Gaussian H_{n_z}(z) exp(-z^2/2), unnormalized.
  double axial(double z) const;
  /// psi at (rho, theta, z) including C_Nm.
  std::complex<double> operator()(double rho, double theta, double z) const;
  /// |psi|^2, independent of theta.
  double density(double rho, double z) const;

  /// C_Nm such that the integral of |psi|^2 with measure alpha rho drho dtheta dz is 1.
  /// The ground state at alpha = 1 gives pi^(-3/4).
  double normalization() const noexcept { return norm_; }
  double energy() const noexcept { return energy_; }
  double nu() const noexcept { return nu_; }

 private:
  QuantumNumbers qn_;
  double alpha_;
  double nu_;
  double energy_;
  double norm_ = 1.0;
};

/// Normalized reduced radial function u(r) of a spherical system, with the
/// integral of u^2 dr equal to 1. The rotational-vibrational Morse state uses the
/// exponential-variable solution that goes with the kummer energy.
class ReducedRadialWavefunction {
 public:
  /// Throws DomainError for the HO family (see HoStringWavefunction).
  ReducedRadialWavefunction(const PotentialSpec& spec, const BackgroundGeometry& geom, const QuantumNumbers& qn);
  double operator()(double r) const { return norm_ * shape_(r); }
  double energy() const noexcept { return energy_; }
  /// Radius beyond which u is negligible; used to lay out sampling grids.
  double extent() const noexcept { return extent_; }
  double normalization() const noexcept { return norm_; }

 private:
  std::function<double(double)> shape_;
  double energy_ = 0.0;
  double extent_ = 0.0;
  double norm_ = 1.0;
};

/// One level of a spectrum table.
struct SpectrumEntry {
  QuantumNumbers qn;
  double energy_analytic = 0.0;
  std::optional<double> energy_oracle;
  std::optional<double> residual;
  std::optional<double> oracle_error_estimate;
  std::optional<int> node_count;
  /// Labels sharing this energy within kDegeneracyTolerance (including qn itself).
  std::vector<QuantumNumbers> degeneracy_labels;
  /// Alternative analytic evaluations (Morse: verbatim, rederived, kummer).
  std::map<std::string, double> variants;
  /// Variant closest to the oracle when variants and an oracle value exist.
  std::optional<std::string> preferred_variant;
  /// Set when the oracle residual exceeded the validation tolerance.
  bool flagged = false;
  std::optional<std::string> error;
};

inline constexpr double kDegeneracyTolerance = 1e-10;

/// Entry for one label with its analytic energy (and Morse variants) filled in.
SpectrumEntry make_entry(const PotentialSpec& spec, const BackgroundGeometry& geom, const QuantumNumbers& qn);

/// Sorted spectrum over the shell  2 n_rho + n_z + |m| <= qn_max  (HO),
/// n_r' + l <= qn_max with |m| <= l  (Coulomb, qn_max >= 1),
/// nbar_r + l <= qn_max  (Kratzer, Morse).
std::vector<SpectrumEntry> spectrum(const PotentialSpec& spec, const BackgroundGeometry& geom, int qn_max);

/// Labels in the shell used by spectrum(), unsorted.
std::vector<QuantumNumbers> shell_labels(PotentialFamily family, int qn_max);

/// Groups entries (already sorted by energy) into degeneracy classes.
void assign_degeneracies(std::vector<SpectrumEntry>& entries, double tolerance = kDegeneracyTolerance);

}  // namespace defectqm::analytic
