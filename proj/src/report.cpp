#include "defectqm/report.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "defectqm/errors.hpp"

namespace defectqm::report {

using nlohmann::json;

OutputFormat parse_format(std::string_view s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "pretty") return OutputFormat::Pretty;
  throw DomainError(fmt::format("unknown format '{}'", s));
}

UnitSystem parse_units(std::string_view s) {
  if (s == "natural") return UnitSystem::Natural;
  if (s == "physical") return UnitSystem::Physical;
  throw DomainError(fmt::format("unknown unit system '{}'", s));
}

DefectPreset preset(std::string_view name) {
  if (name == "GUT_string") return {"GUT_string", 0.999999, false};
  if (name == "GUT_monopole") return {"GUT_monopole", std::sqrt(1.0 - 1e-6), true};
  if (name == "stable_monopole") {
    const double eta = 0.19;  // in Planck masses
    return {"stable_monopole", std::sqrt(1.0 - 8.0 * std::numbers::pi * eta * eta), true};
  }
  throw DomainError(fmt::format("unknown preset '{}'", name));
}

std::vector<std::string> preset_names() { return {"GUT_string", "GUT_monopole", "stable_monopole"}; }

ShiftLevels default_shift_levels(PotentialFamily family) {
  switch (family) {
    case PotentialFamily::HarmonicOscillator3D: return {{0, 0, 0, 0}, {0, 0, 1, 0}};
    case PotentialFamily::Coulomb: return {{1, 0, 0, 0}, {1, 0, 1, 1}};
    case PotentialFamily::Kratzer:
    case PotentialFamily::Morse: return {{0, 0, 0, 0}, {0, 0, 0, 1}};
  }
  throw DomainError("unknown potential family");
}

namespace {

QuantumNumbers parse_qn(std::string_view s) {
  QuantumNumbers q;
  int* fields[] = {&q.radial, &q.axial, &q.magnetic, &q.orbital};
  std::size_t i = 0;
  std::string item;
  std::istringstream in{std::string(s)};
  while (std::getline(in, item, ',')) {
    if (i == 4) throw DomainError(fmt::format("too many labels in '{}'", s));
    std::size_t used = 0;
    try {
      *fields[i] = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw DomainError(fmt::format("bad label '{}' in '{}'", item, s));
    ++i;
  }
  if (i != 4) throw DomainError(fmt::format("expected 4 labels radial,axial,magnetic,orbital in '{}'", s));
  return q;
}

}  // namespace

ShiftLevels parse_levels(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw DomainError("levels must look like r,z,m,l:r,z,m,l");
  return {parse_qn(text.substr(0, colon)), parse_qn(text.substr(colon + 1))};
}

std::optional<double> published_claim(PotentialFamily family, std::string_view p, ShiftMode mode) {
  switch (family) {
    case PotentialFamily::HarmonicOscillator3D:
      if (p == "GUT_string") return 1e-5;
      break;
    case PotentialFamily::Coulomb:
      if (p == "GUT_string") return 4e-3;
      break;
    case PotentialFamily::Kratzer:
      if (p == "stable_monopole") return -350.0;
      if (p == "GUT_monopole") return -1.0;
      break;
    case PotentialFamily::Morse:
      if (mode == ShiftMode::Vibration) {
        if (p == "GUT_monopole") return -3e-5;
        if (p == "stable_monopole") return -32.0;
      } else {
        if (p == "GUT_monopole") return -8e-4;
        if (p == "stable_monopole") return -85.0;
      }
      break;
  }
  return std::nullopt;
}

bool same_order_of_magnitude(double computed, double claim) {
  if (computed == 0.0 || claim == 0.0) return computed == claim;
  if ((computed > 0.0) != (claim > 0.0)) return false;
  return std::lround(std::log10(std::abs(computed))) == std::lround(std::log10(std::abs(claim)));
}

ShiftReport compute_shift(const PotentialSpec& spec, const BackgroundGeometry& defect, const ShiftLevels& levels) {
  const BackgroundGeometry flat = defect_geometry(spec.family, 1.0);
  deficit_parameter(spec.family, defect);
  ShiftReport r;
  r.system = std::string(system_name(spec.family));
  if (spec.family == PotentialFamily::Morse)
    r.mode = spec.morse == MorseTreatment::Vibrational ? "vibration" : "rotation";
  r.geom_defect = defect;
  r.levels = levels;
  r.lower_flat = analytic::energy(spec, flat, levels.lower);
  r.upper_flat = analytic::energy(spec, flat, levels.upper);
  r.lower_defect = analytic::energy(spec, defect, levels.lower);
  r.upper_defect = analytic::energy(spec, defect, levels.upper);
  r.gap_flat = r.upper_flat - r.lower_flat;
  r.gap_defect = r.upper_defect - r.lower_defect;
  if (r.gap_flat == 0.0) throw DomainError("the chosen levels are degenerate in flat space");
  r.relative_change_percent = 100.0 * (r.gap_defect - r.gap_flat) / r.gap_flat;
  return r;
}

PotentialSpec default_shift_spec(PotentialFamily family, ShiftMode mode) {
  switch (family) {
    case PotentialFamily::HarmonicOscillator3D: return PotentialSpec::harmonic(1.0);
    case PotentialFamily::Coulomb: return PotentialSpec::coulomb(1.0);
    case PotentialFamily::Kratzer: return PotentialSpec::kratzer_gamma2(100.0);
    case PotentialFamily::Morse:
      return PotentialSpec::morse_gamma2(
          2500.0, 1.0, mode == ShiftMode::Vibration ? MorseTreatment::Vibrational : MorseTreatment::RotationalVibrational);
  }
  throw DomainError("unknown potential family");
}

ShiftReport preset_shift(const PotentialSpec& spec, std::string_view preset_name, ShiftMode mode,
                         std::optional<ShiftLevels> levels) {
  const DefectPreset p = preset(preset_name);
  const bool monopole_family = spec.family == PotentialFamily::Kratzer || spec.family == PotentialFamily::Morse;
  if (p.monopole != monopole_family)
    throw DomainError(fmt::format("preset {} does not apply to {}", p.name, system_name(spec.family)));
  PotentialSpec s = spec;
  if (s.family == PotentialFamily::Morse)
    s.morse = mode == ShiftMode::Vibration ? MorseTreatment::Vibrational : MorseTreatment::RotationalVibrational;
  ShiftReport r = compute_shift(s, defect_geometry(s.family, p.parameter), levels.value_or(default_shift_levels(s.family)));
  r.preset = p.name;
  r.paper_claim_percent = published_claim(s.family, p.name, mode);
  if (r.paper_claim_percent) r.agrees_order_of_magnitude = same_order_of_magnitude(r.relative_change_percent, *r.paper_claim_percent);
  return r;
}

std::vector<ShiftReport> published_shift_reports() {
  struct Case {
    PotentialFamily family;
    const char* preset;
    ShiftMode mode;
  };
  const Case cases[] = {
      {PotentialFamily::HarmonicOscillator3D, "GUT_string", ShiftMode::Vibration},
      {PotentialFamily::Coulomb, "GUT_string", ShiftMode::Vibration},
      {PotentialFamily::Kratzer, "stable_monopole", ShiftMode::Vibration},
      {PotentialFamily::Kratzer, "GUT_monopole", ShiftMode::Vibration},
      {PotentialFamily::Morse, "GUT_monopole", ShiftMode::Vibration},
      {PotentialFamily::Morse, "stable_monopole", ShiftMode::Vibration},
      {PotentialFamily::Morse, "GUT_monopole", ShiftMode::Rotation},
      {PotentialFamily::Morse, "stable_monopole", ShiftMode::Rotation},
  };
  std::vector<ShiftReport> out;
  for (const Case& c : cases) out.push_back(preset_shift(default_shift_spec(c.family, c.mode), c.preset, c.mode));
  return out;
}

namespace {

json qn_json(const QuantumNumbers& q) {
  return {{"radial", q.radial}, {"axial", q.axial}, {"magnetic", q.magnetic}, {"orbital", q.orbital}};
}

double energy_factor(const SpectrumContext& ctx) {
  return ctx.units == UnitSystem::Physical ? ctx.scale.energy_unit : 1.0;
}

std::string unit_name(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::HarmonicOscillator3D: return "hbar*w";
    case PotentialFamily::Coulomb: return "mu*k^2/hbar^2";
    case PotentialFamily::Kratzer: return "hbar^2/(mu*A^2)";
    case PotentialFamily::Morse: return "hbar^2/(mu*r0^2)";
  }
  return "";
}

std::string opt_number(const std::optional<double>& v, double factor) { return v ? number(*v * factor) : ""; }

}  // namespace

std::string units_label(const SpectrumContext& ctx) {
  return ctx.units == UnitSystem::Physical ? "physical" : "natural:" + unit_name(ctx.family);
}

json entry_json(const analytic::SpectrumEntry& e, const SpectrumContext& ctx) {
  const double f = energy_factor(ctx);
  json j;
  j["system"] = std::string(system_name(ctx.family));
  j["alpha"] = ctx.geom.alpha();
  j["b"] = ctx.geom.b();
  j["qn"] = qn_json(e.qn);
  j["E_analytic"] = e.energy_analytic * f;
  j["E_oracle"] = e.energy_oracle ? json(*e.energy_oracle * f) : json(nullptr);
  j["residual"] = e.residual ? json(*e.residual * f) : json(nullptr);
  j["units"] = units_label(ctx);
  j["degeneracy"] = e.degeneracy_labels.size();
  json labels = json::array();
  for (const auto& q : e.degeneracy_labels) labels.push_back(qn_json(q));
  j["degeneracy_labels"] = labels;
  if (!e.variants.empty()) {
    json v = json::object();
    for (const auto& [name, value] : e.variants) v[name] = value * f;
    j["variants"] = v;
  }
  if (e.preferred_variant) j["preferred_variant"] = *e.preferred_variant;
  if (e.node_count) j["node_count"] = *e.node_count;
  if (e.oracle_error_estimate) j["oracle_error_estimate"] = *e.oracle_error_estimate * f;
  j["flagged"] = e.flagged;
  j["error"] = e.error ? json(*e.error) : json(nullptr);
  return j;
}

std::string format_spectrum(const std::vector<analytic::SpectrumEntry>& entries, const SpectrumContext& ctx,
                            OutputFormat format) {
  const double f = energy_factor(ctx);
  const std::string sys(system_name(ctx.family));
  switch (format) {
    case OutputFormat::Json: {
      json doc;
      doc["system"] = sys;
      doc["alpha"] = ctx.geom.alpha();
      doc["b"] = ctx.geom.b();
      doc["units"] = units_label(ctx);
      doc["entries"] = json::array();
      for (const auto& e : entries) doc["entries"].push_back(entry_json(e, ctx));
      return doc.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::string out(kSpectrumCsvHeader);
      out += "\r\n";
      for (const auto& e : entries) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\r\n", csv_field(sys), number(ctx.geom.alpha()),
                           number(ctx.geom.b()), e.qn.radial, e.qn.axial, e.qn.magnetic, e.qn.orbital,
                           number(e.energy_analytic * f), opt_number(e.energy_oracle, f), opt_number(e.residual, f),
                           csv_field(units_label(ctx)), e.degeneracy_labels.size(), e.flagged ? "true" : "false",
                           csv_field(e.error.value_or("")));
      }
      return out;
    }
    case OutputFormat::Pretty: {
      std::string out = fmt::format("{}  alpha={}  b={}  units={}\n", sys, number(ctx.geom.alpha()),
                                    number(ctx.geom.b()), units_label(ctx));
      out += fmt::format("{:>4} {:>4} {:>4} {:>4}  {:>22} {:>22} {:>10} {:>4}  {}\n", "rad", "ax", "m", "l", "E_analytic",
                         "E_oracle", "residual", "deg", "note");
      for (const auto& e : entries) {
        std::string note = e.error.value_or(e.flagged ? "flagged" : "");
        if (e.preferred_variant) note += (note.empty() ? "" : " ") + std::string("preferred=") + *e.preferred_variant;
        out += fmt::format("{:>4} {:>4} {:>4} {:>4}  {:>22.15g} {:>22} {:>10} {:>4}  {}\n", e.qn.radial, e.qn.axial,
                           e.qn.magnetic, e.qn.orbital, e.energy_analytic * f,
                           e.energy_oracle ? fmt::format("{:.15g}", *e.energy_oracle * f) : "-",
                           e.residual ? fmt::format("{:.2e}", *e.residual * f) : "-", e.degeneracy_labels.size(), note);
      }
      return out;
    }
  }
  return {};
}

json shift_json(const ShiftReport& r) {
  json j;
  j["system"] = r.system;
  j["preset"] = r.preset.empty() ? json(nullptr) : json(r.preset);
  j["mode"] = r.mode.empty() ? json(nullptr) : json(r.mode);
  j["alpha"] = r.geom_defect.alpha();
  j["b"] = r.geom_defect.b();
  j["levels"] = {{"lower", qn_json(r.levels.lower)}, {"upper", qn_json(r.levels.upper)}};
  j["energies_flat"] = {r.lower_flat, r.upper_flat};
  j["energies_defect"] = {r.lower_defect, r.upper_defect};
  j["gap_flat"] = r.gap_flat;
  j["gap_defect"] = r.gap_defect;
  j["relative_change_percent"] = r.relative_change_percent;
  j["paper_claim_percent"] = r.paper_claim_percent ? json(*r.paper_claim_percent) : json(nullptr);
  j["agrees_order_of_magnitude"] = r.agrees_order_of_magnitude;
  return j;
}

json discrepancy_record(const ShiftReport& r) {
  json j;
  j["kind"] = "shift_estimate";
  j["system"] = r.system;
  j["preset"] = r.preset;
  j["mode"] = r.mode.empty() ? json(nullptr) : json(r.mode);
  j["parameter"] = r.system.find("string") != std::string::npos ? r.geom_defect.alpha() : r.geom_defect.b();
  j["computed_percent"] = r.relative_change_percent;
  j["paper_claim_percent"] = r.paper_claim_percent ? json(*r.paper_claim_percent) : json(nullptr);
  j["agrees_order_of_magnitude"] = r.agrees_order_of_magnitude;
  return j;
}

std::string format_shifts(const std::vector<ShiftReport>& reports, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(shift_json(r));
      return json{{"reports", arr}}.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::string out(kShiftCsvHeader);
      out += "\r\n";
      for (const auto& r : reports)
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\r\n", csv_field(r.system), csv_field(r.preset),
                           csv_field(r.mode), number(r.geom_defect.alpha()), number(r.geom_defect.b()),
                           number(r.gap_flat), number(r.gap_defect), number(r.relative_change_percent),
                           r.paper_claim_percent ? number(*r.paper_claim_percent) : "",
                           r.agrees_order_of_magnitude ? "true" : "false");
      return out;
    }
    case OutputFormat::Pretty: {
      std::string out = fmt::format("{:<18} {:<16} {:<10} {:>14} {:>14} {:>12}  {}\n", "system", "preset", "mode",
                                    "computed %", "claim %", "same order", "gap flat -> defect");
      for (const auto& r : reports)
        out += fmt::format("{:<18} {:<16} {:<10} {:>14.4g} {:>14} {:>12}  {:.10g} -> {:.10g}\n", r.system,
                           r.preset.empty() ? "-" : r.preset, r.mode.empty() ? "-" : r.mode,
                           r.relative_change_percent,
                           r.paper_claim_percent ? fmt::format("{:.4g}", *r.paper_claim_percent) : "-",
                           r.paper_claim_percent ? (r.agrees_order_of_magnitude ? "yes" : "no") : "-", r.gap_flat,
                           r.gap_defect);
      return out;
    }
  }
  return {};
}

std::string format_table(const WavefunctionTable& t, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      json rows = json::array();
      for (const auto& row : t.rows) rows.push_back(row);
      return json{{"columns", t.columns}, {"rows", rows}}.dump() + "\n";
    }
    case OutputFormat::Csv:
    case OutputFormat::Pretty: {
      std::string out;
      for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_field(t.columns[i]);
      out += "\r\n";
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (i) out += ',';
          out += number(row[i]);
        }
        out += "\r\n";
      }
      return out;
    }
  }
  return {};
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string number(double v) { return fmt::format("{}", v); }

}  // namespace defectqm::report
