#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "defectqm/analytic.hpp"
#include "defectqm/core_model.hpp"

namespace defectqm::report {

enum class OutputFormat { Json, Csv, Pretty };
enum class UnitSystem { Natural, Physical };

OutputFormat parse_format(std::string_view s);
UnitSystem parse_units(std::string_view s);

/// Named defect configurations.
///   GUT_string       alpha = 0.999999
///   GUT_monopole     b^2 = 1 - 1e-6
///   stable_monopole  b^2 = 1 - 8 pi (0.19)^2
struct DefectPreset {
  std::string name;
  double parameter = 1.0;  // alpha or b
  bool monopole = false;
};
DefectPreset preset(std::string_view name);
std::vector<std::string> preset_names();

/// Which levels of the Morse problem a shift refers to.
enum class ShiftMode { Vibration, Rotation };

struct ShiftLevels {
  QuantumNumbers lower;
  QuantumNumbers upper;
};
/// Ground state and the lowest level the defect moves: m = 1 for string systems,
/// l = 1 for monopole systems.
ShiftLevels default_shift_levels(PotentialFamily family);
/// "r,z,m,l:r,z,m,l" (lower:upper).
ShiftLevels parse_levels(std::string_view text);

struct ShiftReport {
  std::string system;
  std::string preset;  // empty for explicit parameters
  std::string mode;    // "vibration" / "rotation" for Morse, empty otherwise
  BackgroundGeometry geom_defect = BackgroundGeometry::minkowski();
  ShiftLevels levels;
  double lower_flat = 0.0, upper_flat = 0.0;
  double lower_defect = 0.0, upper_defect = 0.0;
  double gap_flat = 0.0;
  double gap_defect = 0.0;
  double relative_change_percent = 0.0;
  /// Published percentage, signed: increases positive, decreases negative.
  std::optional<double> paper_claim_percent;
  /// Same sign and same rounded decimal exponent as the claim.
  bool agrees_order_of_magnitude = false;
};

/// Signed published figure for a preset, if one exists.
std::optional<double> published_claim(PotentialFamily family, std::string_view preset, ShiftMode mode);

/// Same sign and round(log10|.|) equal.
bool same_order_of_magnitude(double computed, double claim);

/// Gap between two levels in flat space and in the defect background, from the
/// closed-form spectra (the Morse rotation mode uses the verbatim closed form).
ShiftReport compute_shift(const PotentialSpec& spec, const BackgroundGeometry& defect, const ShiftLevels& levels);

/// Default spec used for shift presets: w = k = 1, Kratzer gamma^2 = 100,
/// Morse gamma^2 = 2500 with beta = 1.
PotentialSpec default_shift_spec(PotentialFamily family, ShiftMode mode = ShiftMode::Vibration);

/// Shift for a named preset with its published claim attached.
ShiftReport preset_shift(const PotentialSpec& spec, std::string_view preset_name, ShiftMode mode,
                         std::optional<ShiftLevels> levels = std::nullopt);

/// The eight published estimates, computed with default_shift_spec.
std::vector<ShiftReport> published_shift_reports();

/// One JSON line for the discrepancy log (claims the formulas do not reproduce).
nlohmann::json discrepancy_record(const ShiftReport& r);

/// Everything needed to render a spectrum table.
struct SpectrumContext {
  PotentialFamily family = PotentialFamily::HarmonicOscillator3D;
  BackgroundGeometry geom = BackgroundGeometry::minkowski();
  ScaleRecord scale;
  UnitSystem units = UnitSystem::Natural;
};

/// Label of the energy unit: "natural (hbar w)" or "physical".
std::string units_label(const SpectrumContext& ctx);

nlohmann::json entry_json(const analytic::SpectrumEntry& e, const SpectrumContext& ctx);
std::string format_spectrum(const std::vector<analytic::SpectrumEntry>& entries, const SpectrumContext& ctx,
                            OutputFormat fmt);

/// Fixed CSV header of spectrum tables.
inline constexpr std::string_view kSpectrumCsvHeader =
    "system,alpha,b,radial,axial,magnetic,orbital,E_analytic,E_oracle,residual,units,degeneracy,flagged,error";

nlohmann::json shift_json(const ShiftReport& r);
std::string format_shifts(const std::vector<ShiftReport>& reports, OutputFormat fmt);

inline constexpr std::string_view kShiftCsvHeader =
    "system,preset,mode,alpha,b,gap_flat,gap_defect,relative_change_percent,paper_claim_percent,"
    "agrees_order_of_magnitude";

/// Sampled wavefunction table.
struct WavefunctionTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
std::string format_table(const WavefunctionTable& t, OutputFormat fmt);

/// RFC-4180 field quoting.
std::string csv_field(std::string_view s);
/// Shortest round-trip decimal.
std::string number(double v);

}  // namespace defectqm::report
