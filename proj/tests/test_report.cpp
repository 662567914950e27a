#include <doctest.h>

#include <cmath>
#include <numbers>

#include "defectqm/errors.hpp"
#include "defectqm/report.hpp"

using namespace defectqm;
using namespace defectqm::report;

TEST_CASE("presets") {
  CHECK(preset("GUT_string").parameter == 0.999999);
  CHECK_FALSE(preset("GUT_string").monopole);
  const auto g = preset("GUT_monopole");
  CHECK(g.monopole);
  CHECK(1.0 - g.parameter * g.parameter == doctest::Approx(1e-6).epsilon(1e-9));
  const auto s = preset("stable_monopole");
  CHECK(s.parameter * s.parameter == doctest::Approx(1.0 - 8.0 * std::numbers::pi * 0.0361).epsilon(1e-14));
  CHECK_THROWS_AS(preset("domain_wall"), DomainError);
  CHECK(preset_names().size() == 3);
}

TEST_CASE("published claims carry their sign") {
  CHECK(*published_claim(PotentialFamily::HarmonicOscillator3D, "GUT_string", ShiftMode::Vibration) == 1e-5);
  CHECK(*published_claim(PotentialFamily::Coulomb, "GUT_string", ShiftMode::Vibration) == 4e-3);
  CHECK(*published_claim(PotentialFamily::Kratzer, "stable_monopole", ShiftMode::Vibration) == -350.0);
  CHECK(*published_claim(PotentialFamily::Morse, "GUT_monopole", ShiftMode::Rotation) == -8e-4);
  CHECK_FALSE(published_claim(PotentialFamily::Coulomb, "GUT_monopole", ShiftMode::Vibration).has_value());
}

TEST_CASE("order of magnitude comparison") {
  CHECK(same_order_of_magnitude(1.2e-5, 1e-5));
  CHECK_FALSE(same_order_of_magnitude(1e-4, 1e-5));
  CHECK_FALSE(same_order_of_magnitude(-1e-5, 1e-5));
  CHECK_FALSE(same_order_of_magnitude(0.0, 1e-5));
  CHECK(same_order_of_magnitude(-400.0, -350.0));
  CHECK_FALSE(same_order_of_magnitude(-300.0, -350.0));
}

TEST_CASE("shift reports are internally consistent") {
  const auto reports = published_shift_reports();
  REQUIRE(reports.size() == 8);
  for (const auto& r : reports) {
    CHECK(r.gap_flat == doctest::Approx(r.upper_flat - r.lower_flat).epsilon(1e-14));
    CHECK(r.gap_defect == doctest::Approx(r.upper_defect - r.lower_defect).epsilon(1e-14));
    CHECK(r.relative_change_percent ==
          doctest::Approx(100.0 * (r.gap_defect - r.gap_flat) / r.gap_flat).epsilon(1e-12));
    REQUIRE(r.paper_claim_percent);
    CHECK(r.agrees_order_of_magnitude == same_order_of_magnitude(r.relative_change_percent, *r.paper_claim_percent));
  }
}

TEST_CASE("oscillator GUT string shift is 1e-4 percent") {
  const auto r = preset_shift(default_shift_spec(PotentialFamily::HarmonicOscillator3D), "GUT_string", ShiftMode::Vibration);
  // Gap 1/alpha - 0 against 1 in flat space.
  CHECK(r.relative_change_percent == doctest::Approx(100.0 * (1.0 / 0.999999 - 1.0)).epsilon(1e-9));
  CHECK(r.relative_change_percent > 0.0);
}

TEST_CASE("defects widen string gaps and shrink monopole binding") {
  const auto c = preset_shift(default_shift_spec(PotentialFamily::Coulomb), "GUT_string", ShiftMode::Vibration);
  CHECK(c.relative_change_percent > 0.0);
  const auto k = preset_shift(default_shift_spec(PotentialFamily::Kratzer), "stable_monopole", ShiftMode::Vibration);
  // The ground state has l = 0 and does not feel the solid-angle deficit.
  CHECK(k.lower_defect == k.lower_flat);
  CHECK(k.upper_defect > k.upper_flat);
}

TEST_CASE("preset must match the system") {
  CHECK_THROWS_AS(preset_shift(default_shift_spec(PotentialFamily::Coulomb), "GUT_monopole", ShiftMode::Vibration),
                  DomainError);
  CHECK_THROWS_AS(preset_shift(default_shift_spec(PotentialFamily::Kratzer), "GUT_string", ShiftMode::Vibration),
                  DomainError);
}

TEST_CASE("level parsing") {
  const auto l = parse_levels("0,0,0,0:1,0,2,3");
  CHECK(l.lower == QuantumNumbers{0, 0, 0, 0});
  CHECK(l.upper == QuantumNumbers{1, 0, 2, 3});
  CHECK(parse_levels("0,0,-1,0:0,0,1,0").lower.magnetic == -1);
  CHECK_THROWS_AS(parse_levels("0,0,0,0"), DomainError);
  CHECK_THROWS_AS(parse_levels("0,0,0:0,0,0,0"), DomainError);
  CHECK_THROWS_AS(parse_levels("0,0,0,0,0:0,0,0,0"), DomainError);
  CHECK_THROWS_AS(parse_levels("0,x,0,0:0,0,0,0"), DomainError);
  CHECK_THROWS_AS(parse_levels("0,1.5,0,0:0,0,0,0"), DomainError);
}

TEST_CASE("format and unit parsing") {
  CHECK(parse_format("csv") == OutputFormat::Csv);
  CHECK(parse_units("physical") == UnitSystem::Physical);
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
  CHECK_THROWS_AS(parse_units("si"), DomainError);
}

TEST_CASE("CSV quoting and number formatting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("line\nbreak") == "\"line\nbreak\"");
  CHECK(number(0.1) == "0.1");
  CHECK(std::stod(number(1.0 / 3.0)) == 1.0 / 3.0);
}

namespace {

SpectrumContext coulomb_context(UnitSystem units = UnitSystem::Natural) {
  const auto spec = PotentialSpec::coulomb(1.0);
  const auto geom = BackgroundGeometry::cosmic_string(0.5);
  return {PotentialFamily::Coulomb, geom, nondimensionalize(spec, geom), units};
}

}  // namespace

TEST_CASE("spectrum JSON always carries the full key set") {
  const auto ctx = coulomb_context();
  const auto entries = analytic::spectrum(PotentialSpec::coulomb(1.0), ctx.geom, 2);
  const auto doc = nlohmann::json::parse(format_spectrum(entries, ctx, OutputFormat::Json));
  CHECK(doc["system"] == "coulomb-string");
  CHECK(doc["units"] == units_label(ctx));
  REQUIRE(doc["entries"].size() == entries.size());
  for (const auto& e : doc["entries"]) {
    for (const char* key : {"system", "alpha", "b", "qn", "E_analytic", "E_oracle", "residual", "units", "degeneracy",
                            "degeneracy_labels", "flagged", "error"})
      CHECK(e.contains(key));
    CHECK(e["E_oracle"].is_null());
    CHECK(e["error"].is_null());
  }
}

TEST_CASE("spectrum CSV has a fixed header and CRLF rows") {
  const auto ctx = coulomb_context();
  const auto entries = analytic::spectrum(PotentialSpec::coulomb(1.0), ctx.geom, 2);
  const auto csv = format_spectrum(entries, ctx, OutputFormat::Csv);
  CHECK(csv.rfind(std::string(kSpectrumCsvHeader) + "\r\n", 0) == 0);
  std::size_t rows = 0;
  for (std::size_t p = csv.find("\r\n"); p != std::string::npos; p = csv.find("\r\n", p + 2)) ++rows;
  CHECK(rows == entries.size() + 1);
  CHECK(csv == format_spectrum(entries, ctx, OutputFormat::Csv));
}

TEST_CASE("physical units rescale energies") {
  PotentialSpec spec = PotentialSpec::coulomb(2.0);
  const auto geom = BackgroundGeometry::cosmic_string(0.5);
  const SpectrumContext natural{PotentialFamily::Coulomb, geom, nondimensionalize(spec, geom), UnitSystem::Natural};
  SpectrumContext physical = natural;
  physical.units = UnitSystem::Physical;
  const auto entries = analytic::spectrum(spec, geom, 1);
  const auto a = entry_json(entries[0], natural);
  const auto b = entry_json(entries[0], physical);
  CHECK(b["E_analytic"].get<double>() ==
        doctest::Approx(a["E_analytic"].get<double>() * natural.scale.energy_unit).epsilon(1e-14));
  CHECK(b["units"] == "physical");
}

TEST_CASE("shift output formats") {
  const auto reports = published_shift_reports();
  const auto doc = nlohmann::json::parse(format_shifts(reports, OutputFormat::Json));
  CHECK(doc["reports"].size() == 8);
  const auto csv = format_shifts(reports, OutputFormat::Csv);
  CHECK(csv.rfind(std::string(kShiftCsvHeader) + "\r\n", 0) == 0);
  const auto rec = discrepancy_record(reports[0]);
  CHECK(rec["kind"] == "shift_estimate");
  CHECK(rec["paper_claim_percent"] == 1e-5);
}

TEST_CASE("wavefunction tables") {
  WavefunctionTable t{{"r", "u"}, {{0.0, 1.0}, {0.5, -2.0}}};
  CHECK(format_table(t, OutputFormat::Csv) == "r,u\r\n0,1\r\n0.5,-2\r\n");
  const auto j = nlohmann::json::parse(format_table(t, OutputFormat::Json));
  CHECK(j["rows"][1][1] == -2.0);
}
