#include "defectqm/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "defectqm/acceptance.hpp"
#include "defectqm/analytic.hpp"
#include "defectqm/errors.hpp"
#include "defectqm/oracle.hpp"
#include "defectqm/report.hpp"

namespace defectqm::cli {

namespace {

struct Flags {
  std::string system;
  std::optional<double> alpha, b;
  std::optional<double> w, k, depth, length_a, beta, r0, gamma2;
  double mass = 1.0, hbar = 1.0;
  int qn_max = 2;
  bool validate = false, strict = false, verbose = false;
  std::string format = "json", units = "natural";
  std::string out_path, log_path;
  std::string preset, levels, mode;
  int grid_points = 20000, threads = 1;
  double tolerance = 1e-6;
  std::string qn;
  int points = 201, z_points = 101;
  std::optional<double> extent, z_extent;
  std::vector<std::string> only;
  std::string inject_fault;
};

// Usage problems found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void usage_unless(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

PotentialFamily family_of(const Flags& f) {
  usage_unless(!f.system.empty(), "--system is required");
  const auto fam = family_from_system(f.system);
  usage_unless(fam.has_value(), fmt::format("unknown system '{}'", f.system));
  return *fam;
}

MorseTreatment morse_treatment(const Flags& f) {
  if (f.mode.empty() || f.mode == "rotation") return MorseTreatment::RotationalVibrational;
  usage_unless(f.mode == "vibration", fmt::format("--mode must be vibration or rotation, got '{}'", f.mode));
  return MorseTreatment::Vibrational;
}

PotentialSpec build_spec(const Flags& f, PotentialFamily fam) {
  auto unused = [](const std::optional<double>& v, const char* flag, std::string_view sys) {
    usage_unless(!v, fmt::format("{} does not apply to {}", flag, sys));
  };
  const std::string_view sys = system_name(fam);
  PotentialSpec s;
  switch (fam) {
    case PotentialFamily::HarmonicOscillator3D:
      for (auto [v, n] : {std::pair{&f.k, "--k"}, {&f.depth, "--D"}, {&f.length_a, "--A"}, {&f.beta, "--beta"},
                          {&f.r0, "--r0"}, {&f.gamma2, "--gamma2"}})
        unused(*v, n, sys);
      s = PotentialSpec::harmonic(f.w.value_or(1.0));
      break;
    case PotentialFamily::Coulomb:
      for (auto [v, n] : {std::pair{&f.w, "--w"}, {&f.depth, "--D"}, {&f.length_a, "--A"}, {&f.beta, "--beta"},
                          {&f.r0, "--r0"}, {&f.gamma2, "--gamma2"}})
        unused(*v, n, sys);
      s = PotentialSpec::coulomb(f.k.value_or(1.0));
      break;
    case PotentialFamily::Kratzer:
      for (auto [v, n] : {std::pair{&f.w, "--w"}, {&f.k, "--k"}, {&f.beta, "--beta"}, {&f.r0, "--r0"}})
        unused(*v, n, sys);
      if (f.gamma2) {
        usage_unless(!f.depth && !f.length_a, "give either --gamma2 or --D/--A");
        s = PotentialSpec::kratzer_gamma2(*f.gamma2);
      } else if (f.depth || f.length_a) {
        s = PotentialSpec::kratzer(f.depth.value_or(1.0), f.length_a.value_or(1.0));
      } else {
        s = PotentialSpec::kratzer_gamma2(100.0);
      }
      break;
    case PotentialFamily::Morse:
      for (auto [v, n] : {std::pair{&f.w, "--w"}, {&f.k, "--k"}, {&f.length_a, "--A"}}) unused(*v, n, sys);
      if (f.gamma2) {
        usage_unless(!f.depth && !f.r0, "give either --gamma2 or --D/--r0");
        s = PotentialSpec::morse_gamma2(*f.gamma2, f.beta.value_or(1.0), morse_treatment(f));
      } else if (f.depth || f.r0) {
        s = PotentialSpec::morse_potential(f.depth.value_or(1.0), f.beta.value_or(1.0), f.r0.value_or(1.0),
                                           morse_treatment(f));
      } else {
        s = PotentialSpec::morse_gamma2(2500.0, f.beta.value_or(1.0), morse_treatment(f));
      }
      break;
  }
  if (fam != PotentialFamily::Morse) usage_unless(f.mode.empty(), "--mode applies to morse-monopole only");
  s.mass = f.mass;
  s.hbar = f.hbar;
  s.validate();
  return s;
}

BackgroundGeometry build_geometry(const Flags& f, PotentialFamily fam) {
  const bool string_sys = fam == PotentialFamily::HarmonicOscillator3D || fam == PotentialFamily::Coulomb;
  if (string_sys) {
    usage_unless(!f.b, "--b applies to monopole systems; use --alpha");
    return BackgroundGeometry::cosmic_string(f.alpha.value_or(1.0));
  }
  usage_unless(!f.alpha, "--alpha applies to string systems; use --b");
  return BackgroundGeometry::global_monopole(f.b.value_or(1.0));
}

QuantumNumbers parse_qn(const std::string& text) {
  // Reuse the level parser with a dummy partner.
  return report::parse_levels(text + ":0,0,0,0").lower;
}

void emit(const Flags& f, std::ostream& out, const std::string& text) {
  if (f.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(f.out_path, std::ios::binary);
  if (!file) throw UsageError(fmt::format("cannot open {} for writing", f.out_path));
  file << text;
}

int cmd_spectrum(const Flags& f, std::ostream& out, std::ostream& err) {
  const PotentialFamily fam = family_of(f);
  usage_unless(f.preset.empty() && f.levels.empty(), "--preset/--levels belong to the shift command");
  usage_unless(f.qn_max >= 0, "--qn-max must be >= 0");
  const PotentialSpec spec = build_spec(f, fam);
  const BackgroundGeometry geom = build_geometry(f, fam);
  auto entries = analytic::spectrum(spec, geom, f.qn_max);

  bool solver_failed = false, breached = false;
  if (f.validate) {
    oracle::SolverConfig cfg;
    cfg.grid_points = f.grid_points;
    cfg.threads = f.threads;
    cfg.validation_tolerance = f.tolerance;
    entries = oracle::validate_spectrum(std::move(entries), spec, geom, cfg);
    for (const auto& e : entries) {
      solver_failed = solver_failed || e.error.has_value();
      breached = breached || e.flagged;
    }
  }
  report::SpectrumContext ctx{fam, geom, nondimensionalize(spec, geom), report::parse_units(f.units)};
  emit(f, out, report::format_spectrum(entries, ctx, report::parse_format(f.format)));
  if (f.verbose) err << fmt::format("spectrum: {} entries for {}\n", entries.size(), f.system);
  if (solver_failed) {
    err << "solver failed on at least one entry (see error column)\n";
    return kSolverFailure;
  }
  if (f.strict && breached) {
    err << fmt::format("validation residual above {} on at least one entry\n", f.tolerance);
    return kVerificationFailed;
  }
  return kOk;
}

void append_log(const Flags& f, const std::vector<report::ShiftReport>& reports) {
  if (f.log_path.empty()) return;
  std::ofstream log(f.log_path, std::ios::app);
  if (!log) throw UsageError(fmt::format("cannot open {} for appending", f.log_path));
  for (const auto& r : reports)
    if (r.paper_claim_percent && !r.agrees_order_of_magnitude) log << report::discrepancy_record(r).dump() << "\n";
}

int cmd_shift(const Flags& f, std::ostream& out, std::ostream& err) {
  std::vector<report::ShiftReport> reports;
  const report::ShiftMode mode = f.mode == "rotation" ? report::ShiftMode::Rotation : report::ShiftMode::Vibration;
  usage_unless(f.mode.empty() || f.mode == "rotation" || f.mode == "vibration",
               fmt::format("--mode must be vibration or rotation, got '{}'", f.mode));
  if (f.system.empty()) {
    usage_unless(f.preset.empty() && f.levels.empty() && !f.alpha && !f.b,
                 "--system is required with --preset, --levels, --alpha or --b");
    reports = report::published_shift_reports();
  } else {
    const PotentialFamily fam = family_of(f);
    Flags g = f;
    if (fam == PotentialFamily::Morse) g.mode = mode == report::ShiftMode::Rotation ? "rotation" : "vibration";
    const bool explicit_physics = f.w || f.k || f.depth || f.length_a || f.beta || f.r0 || f.gamma2;
    const PotentialSpec spec = explicit_physics ? build_spec(g, fam) : report::default_shift_spec(fam, mode);
    std::optional<report::ShiftLevels> levels;
    if (!f.levels.empty()) levels = report::parse_levels(f.levels);
    if (!f.preset.empty()) {
      usage_unless(!f.alpha && !f.b, "--preset fixes the defect parameter; drop --alpha/--b");
      reports.push_back(report::preset_shift(spec, f.preset, mode, levels));
    } else {
      const BackgroundGeometry geom = build_geometry(f, fam);
      usage_unless(deficit_parameter(fam, geom) < 1.0, "give --preset or a defect parameter below 1");
      reports.push_back(report::compute_shift(spec, geom, levels.value_or(report::default_shift_levels(fam))));
    }
  }
  emit(f, out, report::format_shifts(reports, report::parse_format(f.format)));
  append_log(f, reports);
  if (f.verbose) err << fmt::format("shift: {} reports\n", reports.size());
  return kOk;
}

int cmd_wavefunction(const Flags& f, std::ostream& out, std::ostream& err) {
  const PotentialFamily fam = family_of(f);
  usage_unless(!f.qn.empty(), "--qn radial,axial,magnetic,orbital is required");
  usage_unless(f.points >= 2 && f.z_points >= 2, "--points and --z-points must be >= 2");
  const PotentialSpec spec = build_spec(f, fam);
  const BackgroundGeometry geom = build_geometry(f, fam);
  QuantumNumbers qn;
  try {
    qn = parse_qn(f.qn);
    validate_quantum_numbers(fam, qn);
  } catch (const DomainError& e) {
    throw NotAnEigenfunctionError(e.what());
  }

  report::WavefunctionTable table;
  if (fam == PotentialFamily::HarmonicOscillator3D) {
    const analytic::HoStringWavefunction psi(qn, geom.alpha());
    const double rho_max = f.extent.value_or(std::sqrt(2.0 * (2.0 * qn.radial + psi.nu() + 1.0)) + 6.0);
    const double z_max = f.z_extent.value_or(std::sqrt(2.0 * qn.axial + 1.0) + 6.0);
    table.columns = {"rho", "z", "density"};
    for (int i = 0; i < f.points; ++i) {
      const double rho = rho_max * i / (f.points - 1);
      for (int j = 0; j < f.z_points; ++j) {
        const double z = -z_max + 2.0 * z_max * j / (f.z_points - 1);
        table.rows.push_back({rho, z, psi.density(rho, z)});
      }
    }
  } else {
    const analytic::ReducedRadialWavefunction u(spec, geom, qn);
    const double r_max = f.extent.value_or(u.extent());
    table.columns = {"r", "u", "density"};
    for (int i = 0; i < f.points; ++i) {
      const double r = r_max * i / (f.points - 1);
      const double v = u(r);
      table.rows.push_back({r, v, v * v});
    }
  }
  emit(f, out, report::format_table(table, report::parse_format(f.format)));
  if (f.verbose) err << fmt::format("wavefunction: {} samples\n", table.rows.size());
  return kOk;
}

int cmd_verify(const Flags& f, std::ostream& out, std::ostream& err) {
  acceptance::Options opts;
  for (const auto& item : f.only) {
    std::stringstream ss(item);
    std::string key;
    while (std::getline(ss, key, ','))
      if (!key.empty()) opts.only.push_back(key);
  }
  if (!f.inject_fault.empty())
    usage_unless(family_from_system(f.inject_fault).has_value(),
                 fmt::format("--inject-fault expects a system name, got '{}'", f.inject_fault));
  opts.inject_fault = f.inject_fault;
  opts.threads = f.threads;
  std::ofstream log;
  if (!f.log_path.empty()) {
    log.open(f.log_path, std::ios::app);
    if (!log) throw UsageError(fmt::format("cannot open {} for appending", f.log_path));
    opts.discrepancy_log = &log;
  }
  std::vector<acceptance::CriterionResult> results;
  try {
    results = acceptance::run(opts);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  std::string text;
  std::vector<std::string> failed;
  for (const auto& r : results) {
    text += acceptance::format_line(r) + "\n";
    if (!r.passed) failed.push_back(r.key);
  }
  text += failed.empty() ? fmt::format("all {} criteria passed\n", results.size())
                         : fmt::format("FAILED: {}\n", fmt::join(failed, ", "));
  emit(f, out, text);
  if (f.verbose)
    for (const auto& r : results) err << fmt::format("{}: {:.2f} s\n", r.key, r.seconds);
  return failed.empty() ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum spectra of particles in cosmic-string and global-monopole backgrounds", "defectqm"};
  app.set_config("--config", "", "Read flags from a key = value file (command-line flags win)");
  app.require_subcommand(1, 1);
  Flags f;

  app.add_option("--system", f.system, "ho-string | coulomb-string | kratzer-monopole | morse-monopole");
  app.add_option("--alpha", f.alpha, "Cosmic-string parameter in (0, 1]");
  app.add_option("--b", f.b, "Global-monopole parameter in (0, 1]");
  app.add_option("--w", f.w, "Oscillator frequency");
  app.add_option("--k", f.k, "Coulomb strength");
  app.add_option("--D", f.depth, "Kratzer / Morse well depth");
  app.add_option("--A", f.length_a, "Kratzer length");
  app.add_option("--beta", f.beta, "Morse stiffness");
  app.add_option("--r0", f.r0, "Morse equilibrium radius");
  app.add_option("--gamma2", f.gamma2, "2 mu D L^2 / hbar^2 with hbar = mu = L = 1");
  app.add_option("--mass", f.mass, "Particle mass")->capture_default_str();
  app.add_option("--hbar", f.hbar, "Reduced Planck constant")->capture_default_str();
  app.add_option("--qn-max", f.qn_max, "Shell size of the spectrum")->capture_default_str();
  app.add_flag("--validate", f.validate, "Cross-check every level with the finite-difference oracle");
  app.add_flag("--strict", f.strict, "Exit 2 when a validated residual exceeds --tolerance");
  app.add_option("--tolerance", f.tolerance, "Validation tolerance (nondimensional)")->capture_default_str();
  app.add_option("--grid-points", f.grid_points, "Oracle grid points")->capture_default_str();
  app.add_option("--threads", f.threads, "Oracle worker threads")->capture_default_str();
  app.add_option("--format", f.format, "json | csv | pretty")->capture_default_str();
  app.add_option("--units", f.units, "natural | physical")->capture_default_str();
  app.add_option("--out", f.out_path, "Write data here instead of stdout");
  app.add_option("--log", f.log_path, "Append discrepancy records (JSON lines) here");
  app.add_option("--preset", f.preset, "GUT_string | GUT_monopole | stable_monopole");
  app.add_option("--levels", f.levels, "Gap levels as r,z,m,l:r,z,m,l");
  app.add_option("--mode", f.mode, "Morse treatment: vibration | rotation");
  app.add_option("--qn", f.qn, "State as radial,axial,magnetic,orbital");
  app.add_option("--points", f.points, "Radial samples")->capture_default_str();
  app.add_option("--z-points", f.z_points, "Axial samples (oscillator)")->capture_default_str();
  app.add_option("--extent", f.extent, "Largest radius sampled");
  app.add_option("--z-extent", f.z_extent, "Largest |z| sampled (oscillator)");
  app.add_option("--only", f.only, "Acceptance criteria to run (keys or numbers, comma separated)");
  app.add_option("--inject-fault", f.inject_fault, "Perturb a system's closed form by +0.01 (mutation check)");
  app.add_flag("--verbose", f.verbose, "Run metadata on stderr");

  auto* spectrum = app.add_subcommand("spectrum", "Energy levels, optionally validated by the oracle");
  auto* shift = app.add_subcommand("shift", "Defect-induced gap change beside the published estimates");
  auto* wavefunction = app.add_subcommand("wavefunction", "Sampled normalized eigenfunction");
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  for (auto* sub : {spectrum, shift, wavefunction, verify}) sub->fallthrough();

  std::vector<std::string> storage{"defectqm"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    report::parse_format(f.format);
    report::parse_units(f.units);
    int code = kOk;
    if (*spectrum) code = cmd_spectrum(f, out, err);
    else if (*shift) code = cmd_shift(f, out, err);
    else if (*wavefunction) code = cmd_wavefunction(f, out, err);
    else code = cmd_verify(f, out, err);
    if (f.verbose)
      err << fmt::format("elapsed {:.3f} s\n", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nrun 'defectqm --help' for usage\n";
    return kUsage;
  } catch (const NotAnEigenfunctionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  }
}

}  // namespace defectqm::cli
