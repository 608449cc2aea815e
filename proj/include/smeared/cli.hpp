#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end: argument parsing, dispatch and report assembly.
 *
 * Commands
 *   levels  --n-max <int>                                  Bohr + fine-structure baseline
 *   shift   --state <s> <deformation> [--coefficient <c>]  first-order minimal-length shift
 *   compare --state <s> <deformation> [--coefficient <c>]  shift next to the reference corrections
 *   bound   --state <s> --tolerance <val><unit> [--transition <s2>] [--coefficient <c>]
 *   oracle  --check p4|levels|slope [--n <int>] [--l <int>]
 *
 * <deformation> is --dx0 <meters> | --dx0 compton [--dx0-multiplier <x>] | --beta <eV^-2>.
 * Global: --units eV|MHz|GHz, --format table|json|csv, --constants <path>.
 *
 * Exit codes: 0 success (whatever the verdict), 1 computation or configuration
 * error, 2 usage error. Diagnostics go to the error stream only; with
 * --format json a failed run still prints a parseable {"status": "error"} object.
 */

#include "smeared/deformed_algebra.hpp"
#include "smeared/errors.hpp"
#include "smeared/exclusion_bounds.hpp"
#include "smeared/hydrogen_analytic.hpp"
#include "smeared/numeric_oracle.hpp"
#include "smeared/report.hpp"
#include "smeared/units_constants.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace smeared::cli {

enum class Command { levels, shift, bound, compare, oracle };
enum class OracleCheck { p4, levels, slope };

inline std::string_view to_string(Command c) {
  switch (c) {
  case Command::levels: return "levels";
  case Command::shift: return "shift";
  case Command::bound: return "bound";
  case Command::compare: return "compare";
  case Command::oracle: return "oracle";
  }
  return "";
}

struct DeformationSpec {
  enum class Kind { dx0, beta, compton };
  Kind kind = Kind::compton;
  double value = 0.0;       ///< meters for dx0, eV^-2 for beta
  double multiplier = 1.0;  ///< applied to dx0 (both numeric and compton)
};

struct RunConfig {
  Command command = Command::levels;
  std::optional<HydrogenState> state;
  std::optional<HydrogenState> transition;
  std::optional<DeformationSpec> deformation;
  std::optional<Energy> tolerance;
  int n_max = 3;
  OracleCheck check = OracleCheck::p4;
  int oracle_n = 1;
  int oracle_l = 0;
  Unit units = Unit::eV;
  Format format = Format::table;
  std::optional<std::filesystem::path> constants_path;
  double coefficient = kDefaultShiftCoefficient;
  std::optional<std::string> help;  ///< set when --help was requested
};

struct RunOutcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

namespace detail {

inline double parse_real(const std::string& text, const std::string& flag) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  double v = 0.0;
  if (!(in >> v) || !(in >> std::ws).eof() || !std::isfinite(v)) {
    throw UsageError(flag + " expects a number, got '" + text + "'");
  }
  return v;
}

inline HydrogenState parse_state_arg(const std::string& text, const std::string& flag) {
  try {
    return parse_state(text);
  } catch (const ValidationError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

} // namespace detail

/// Validated configuration from @p args (program name excluded). Throws UsageError.
inline RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Minimal-length (smeared particle) corrections to hydrogen levels", "smeared"};
  app.require_subcommand(1);

  std::string units = "eV";
  std::string format = "table";
  std::string constants;
  app.add_option("--units", units, "energy unit of the output: eV, MHz, GHz");
  app.add_option("--format", format, "table, json or csv");
  app.add_option("--constants", constants, "JSON constants file overriding the bundled CODATA 2018 data");

  std::string state, transition, tolerance, dx0, check;
  double beta = 0.0, multiplier = 1.0, coefficient = kDefaultShiftCoefficient;
  int n_max = 3, oracle_n = 1, oracle_l = 0;

  auto add_deformation = [&](CLI::App* sub) {
    sub->add_option("--dx0", dx0, "minimal length in meters, or 'compton'");
    sub->add_option("--beta", beta, "deformation parameter beta in eV^-2");
    sub->add_option("--dx0-multiplier", multiplier, "factor applied to --dx0 (e.g. 6.283185307 for h/mc)");
    sub->add_option("--coefficient", coefficient, "perturbation coefficient c in H' = c beta p^4 / m (default 1/3)");
  };

  auto* levels = app.add_subcommand("levels", "Bohr levels and fine structure up to n-max");
  levels->add_option("--n-max", n_max, "largest principal quantum number")->check(CLI::Range(1, 20));

  auto* shift = app.add_subcommand("shift", "first-order minimal-length shift of one level");
  shift->add_option("--state", state, "state such as 1s, 2p, 2p3/2")->required();
  add_deformation(shift);

  auto* compare = app.add_subcommand("compare", "minimal-length shift against reference corrections");
  compare->add_option("--state", state, "state such as 1s")->required();
  add_deformation(compare);

  auto* bound = app.add_subcommand("bound", "largest minimal length compatible with a tolerance");
  bound->add_option("--state", state, "state such as 1s")->required();
  bound->add_option("--tolerance", tolerance, "agreement tolerance, e.g. 1MHz")->required();
  bound->add_option("--transition", transition, "bound the shift difference with this second state");
  bound->add_option("--coefficient", coefficient, "perturbation coefficient (default 1/3)");

  auto* oracle = app.add_subcommand("oracle", "numerical cross-checks of the closed forms");
  oracle->add_option("--check", check, "p4, levels or slope")->required();
  oracle->add_option("--n", oracle_n, "principal quantum number (p4)");
  oracle->add_option("--l", oracle_l, "orbital quantum number (p4, levels)");

  for (auto* sub : {levels, shift, compare, bound, oracle}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    RunConfig help;
    help.help = app.help();
    return help;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg;
  if (levels->parsed()) cfg.command = Command::levels;
  else if (shift->parsed()) cfg.command = Command::shift;
  else if (compare->parsed()) cfg.command = Command::compare;
  else if (bound->parsed()) cfg.command = Command::bound;
  else cfg.command = Command::oracle;

  const auto unit = parse_unit(units);
  if (!unit) throw UsageError("--units must be eV, MHz or GHz");
  cfg.units = *unit;
  const auto fmt = parse_format(format);
  if (!fmt) throw UsageError("--format must be table, json or csv");
  cfg.format = *fmt;
  if (!constants.empty()) cfg.constants_path = constants;
  cfg.n_max = n_max;

  if (cfg.command != Command::levels && cfg.command != Command::oracle) {
    cfg.state = detail::parse_state_arg(state, "--state");
    if (!std::isfinite(coefficient) || coefficient < 0.0) throw UsageError("--coefficient must be non-negative");
    cfg.coefficient = coefficient;
  }

  if (cfg.command == Command::shift || cfg.command == Command::compare) {
    auto* sub = cfg.command == Command::shift ? shift : compare;
    const bool has_dx0 = sub->count("--dx0") > 0;
    const bool has_beta = sub->count("--beta") > 0;
    const bool has_mult = sub->count("--dx0-multiplier") > 0;
    if (has_dx0 && has_beta) throw UsageError("give either --dx0 or --beta, not both");
    if (!has_dx0 && !has_beta) throw UsageError("a deformation is required: --dx0 <m>, --dx0 compton or --beta <eV^-2>");
    if (has_beta && has_mult) throw UsageError("--dx0-multiplier only applies to --dx0");
    if (!std::isfinite(multiplier) || multiplier <= 0.0) throw UsageError("--dx0-multiplier must be positive");
    DeformationSpec spec;
    spec.multiplier = multiplier;
    if (has_beta) {
      if (!std::isfinite(beta) || beta < 0.0) throw UsageError("--beta must be non-negative");
      spec.kind = DeformationSpec::Kind::beta;
      spec.value = beta;
    } else if (dx0 == "compton") {
      spec.kind = DeformationSpec::Kind::compton;
    } else {
      spec.kind = DeformationSpec::Kind::dx0;
      spec.value = detail::parse_real(dx0, "--dx0");
      if (spec.value < 0.0) throw UsageError("--dx0 must be non-negative");
    }
    cfg.deformation = spec;
  }

  if (cfg.command == Command::bound) {
    cfg.tolerance = parse_energy(tolerance);
    if (!cfg.tolerance) throw UsageError("--tolerance expects <value><unit>, e.g. 1MHz or 4e-9eV");
    if (!(cfg.tolerance->magnitude > 0.0)) throw UsageError("--tolerance must be positive");
    if (!transition.empty()) cfg.transition = detail::parse_state_arg(transition, "--transition").with_default_j();
  }

  if (cfg.command == Command::oracle) {
    if (check == "p4") cfg.check = OracleCheck::p4;
    else if (check == "levels") cfg.check = OracleCheck::levels;
    else if (check == "slope") cfg.check = OracleCheck::slope;
    else throw UsageError("--check must be p4, levels or slope");
    cfg.oracle_n = oracle_n;
    cfg.oracle_l = oracle_l;
    if (cfg.check == OracleCheck::p4) {
      if (oracle_n < 1 || oracle_n > kMaxOracleN || oracle_l < 0 || oracle_l >= oracle_n) {
        throw UsageError("oracle p4 needs 1 <= n <= 5 and 0 <= l < n");
      }
    }
    if (cfg.check == OracleCheck::levels && (oracle_l < 0 || oracle_l > 4)) {
      throw UsageError("oracle levels needs 0 <= l <= 4");
    }
  }
  return cfg;
}

inline Deformation resolve_deformation(const DeformationSpec& spec, const Constants& c) {
  switch (spec.kind) {
  case DeformationSpec::Kind::beta: return Deformation::from_beta(spec.value);
  case DeformationSpec::Kind::compton: return deformation_from_dx0(compton_wavelength(c) * spec.multiplier, c);
  case DeformationSpec::Kind::dx0: return deformation_from_dx0(spec.value * spec.multiplier, c);
  }
  return Deformation{};
}

// ---------------------------------------------------------------------------
// Report assembly

namespace detail {

inline const char* kCoefficientNote =
    "minimal-length shift uses H' = c beta p^4 / m with c = 1/3 from p_phys = p (1 + beta p^2 / 3); "
    "c is a representation convention (override with --coefficient)";

inline double in_units(const Energy& e, Unit u, const Constants& c) { return convert(e, u, c).magnitude; }

inline void add_deformation_fields(Report& r, const Deformation& d, const Constants& c) {
  r.add("beta", d.beta());
  r.add("dx0_m", dx0_in_meters(d, c));
  r.add("dx0_over_compton", dx0_in_meters(d, c) / compton_wavelength(c));
}

inline void add_state_fields(Report& r, const HydrogenState& s) {
  r.add("state", s.label());
  r.add("j_defaulted", s.j_defaulted());
}

inline Report levels_report(const RunConfig& cfg, const Constants& c) {
  Report r{.command = "levels"};
  r.add("n_max", static_cast<long long>(cfg.n_max));
  r.add("energy_unit", std::string(to_string(cfg.units)));
  Table t{{"state", "n", "l", "j", "bohr", "fine_structure", "total"}, {}};
  for (int n = 1; n <= cfg.n_max; ++n) {
    for (int l = 0; l < n; ++l) {
      for (int two_j : {2 * l - 1, 2 * l + 1}) {
        if (two_j < 1) continue;
        const auto s = HydrogenState::make(n, l, two_j);
        const Energy bohr = bohr_energy(s, c);
        const Energy fs = fine_structure(s, c);
        t.rows.push_back({s.label(), static_cast<long long>(n), static_cast<long long>(l),
                          std::to_string(two_j) + "/2",
                          in_units(bohr, cfg.units, c), in_units(fs, cfg.units, c),
                          in_units(Energy::ev(bohr.magnitude + fs.magnitude), cfg.units, c)});
      }
    }
  }
  r.table = std::move(t);
  return r;
}

inline Report shift_report(const RunConfig& cfg, const Constants& c) {
  const Deformation d = resolve_deformation(*cfg.deformation, c);
  const ShiftBreakdown b = level_breakdown(*cfg.state, d, c, cfg.coefficient);
  Report r{.command = "shift"};
  add_state_fields(r, b.state);
  r.add("energy_unit", std::string(to_string(cfg.units)));
  add_deformation_fields(r, d, c);
  r.add("coefficient", cfg.coefficient);
  r.add("exp_p4_ev4", exp_p4(b.state, c));
  r.add("smearing_shift", in_units(b.smearing, cfg.units, c));
  r.add("smearing_over_m_alpha4", b.smearing.magnitude / alpha4_scale(c));
  r.add("relativistic_kinetic", in_units(b.relativistic_kinetic, cfg.units, c));
  r.add("smearing_over_relativistic_kinetic", b.smearing.magnitude / std::abs(b.relativistic_kinetic.magnitude));
  r.add("fine_structure", in_units(b.fine_structure, cfg.units, c));
  r.add("bohr", in_units(b.bohr, cfg.units, c));
  r.notes.push_back(kCoefficientNote);
  return r;
}

inline Report compare_report(const RunConfig& cfg, const Constants& c) {
  const Deformation d = resolve_deformation(*cfg.deformation, c);
  const HydrogenState s = cfg.state->with_default_j();
  Report r{.command = "compare"};
  add_state_fields(r, s);
  add_deformation_fields(r, d, c);
  r.add("coefficient", cfg.coefficient);
  Table t{{"label", "value_ev", "value_mhz"}, {}};
  for (const auto& e : comparison_table(s, d, c, cfg.coefficient)) {
    t.rows.push_back({e.label, e.value_ev, e.value_mhz});
  }
  r.table = std::move(t);
  r.notes.push_back(kCoefficientNote);
  return r;
}

inline Report bound_report_of(const RunConfig& cfg, const Constants& c) {
  const HydrogenState s = cfg.state->with_default_j();
  const BoundReport b = bound_report(s, *cfg.tolerance, c, cfg.coefficient, cfg.transition);
  Report r{.command = "bound"};
  add_state_fields(r, s);
  r.add("transition", b.transition ? Value{b.transition->label()} : Value{});
  r.add("energy_unit", std::string(to_string(cfg.units)));
  r.add("tolerance", in_units(b.tolerance, cfg.units, c));
  r.add("coefficient", b.coefficient);
  r.add("beta_max", b.beta_max);
  r.add("dx0_max_m", b.dx0_max_m);
  r.add("compton_wavelength_m", compton_wavelength(c));
  r.add("compton_ratio", b.compton_ratio);
  r.add("shift_at_compton", in_units(b.shift_at_compton, cfg.units, c));
  r.add("exclusion_factor", b.exclusion_factor);
  r.add("verdict", std::string(to_string(b.verdict)));
  r.notes.push_back(kCoefficientNote);
  return r;
}

inline Report oracle_report(const RunConfig& cfg, const Constants& c) {
  Report r{.command = "oracle"};
  switch (cfg.check) {
  case OracleCheck::p4: {
    const auto s = HydrogenState::make(cfg.oracle_n, cfg.oracle_l);
    const double analytic = exp_p4(s, c);
    const OracleResult num = expectation_p4_numeric(s, default_quadrature_grid(s, c), c);
    r.add("check", std::string("p4"));
    r.add("state", s.label());
    r.add("analytic_ev4", analytic);
    r.add("numeric_ev4", num.value);
    r.add("relative_difference", std::abs(num.value - analytic) / analytic);
    r.add("estimated_error", num.estimated_error);
    r.add("grid_points", static_cast<long long>(std::get<RadialGrid>(num.resolution).points()));
    r.add("converged", num.converged);
    break;
  }
  case OracleCheck::levels: {
    constexpr int k = 3;
    const auto results = radial_energies(cfg.oracle_l, k, c);
    r.add("check", std::string("levels"));
    r.add("l", static_cast<long long>(cfg.oracle_l));
    r.add("energy_unit", std::string(to_string(cfg.units)));
    r.add("convergence_ratio", fd_convergence_ratio(cfg.oracle_l, default_radial_grid(c, cfg.oracle_l, k), c));
    Table t{{"n", "bohr", "finite_difference", "relative_difference", "estimated_error", "grid_points", "converged"},
            {}};
    for (int i = 0; i < k; ++i) {
      const int n = cfg.oracle_l + 1 + i;
      const auto& res = results[static_cast<std::size_t>(i)];
      const Energy exact = bohr_energy(HydrogenState::make(n, cfg.oracle_l), c);
      t.rows.push_back({static_cast<long long>(n), in_units(exact, cfg.units, c),
                        in_units(Energy::ev(res.value), cfg.units, c),
                        std::abs(res.value - exact.magnitude) / std::abs(exact.magnitude), res.estimated_error,
                        static_cast<long long>(std::get<RadialGrid>(res.resolution).points()), res.converged});
    }
    r.table = std::move(t);
    break;
  }
  case OracleCheck::slope: {
    const double scale = c.electron_mass * c.alpha;
    const SlopeCheck s = oscillator_slope_check(scale, c.electron_mass);
    r.add("check", std::string("slope"));
    r.add("mass_ev", c.electron_mass);
    r.add("oscillator_scale_ev", scale);
    r.add("basis_size", static_cast<long long>(s.basis_size));
    r.add("numeric_slope", s.numeric_slope);
    r.add("expected_slope", s.expected_slope);
    r.add("relative_difference", s.relative_difference);
    r.add("converged", s.converged);
    Table t{{"beta", "ground_energy_ev"}, {}};
    for (const auto& p : s.points) t.rows.push_back({p.beta, p.ground_energy});
    r.table = std::move(t);
    r.notes.push_back("validates first-order perturbation theory for this library's p^4 convention, "
                      "not any other representation of the deformed algebra");
    break;
  }
  }
  return r;
}

} // namespace detail

/// The report for a parsed configuration; throws smeared::Error on failure.
inline Report build_report(const RunConfig& cfg, const Constants& c) {
  switch (cfg.command) {
  case Command::levels: return detail::levels_report(cfg, c);
  case Command::shift: return detail::shift_report(cfg, c);
  case Command::compare: return detail::compare_report(cfg, c);
  case Command::bound: return detail::bound_report_of(cfg, c);
  case Command::oracle: return detail::oracle_report(cfg, c);
  }
  throw UsageError("unknown command");
}

inline RunOutcome run(const RunConfig& cfg) {
  RunOutcome outcome;
  if (cfg.help) {
    outcome.out = *cfg.help;
    return outcome;
  }
  try {
    std::vector<std::string> warnings;
    const Constants c = load_constants(cfg.constants_path, &warnings);
    for (const auto& w : warnings) outcome.err += "warning: " + w + "\n";
    outcome.out = render(build_report(cfg, c), cfg.format);
  } catch (const Error& e) {
    outcome.exit_code = 1;
    outcome.err += std::string("error: ") + e.what() + "\n";
    outcome.out = cfg.format == Format::json
                      ? "{\n  \"command\": \"" + std::string(to_string(cfg.command)) + "\",\n  \"status\": \"error\"\n}\n"
                      : std::string();
  }
  return outcome;
}

/// parse_args + run, mapping usage errors to exit code 2.
inline RunOutcome run_args(const std::vector<std::string>& args) {
  try {
    return run(parse_args(args));
  } catch (const UsageError& e) {
    return {2, std::string(), std::string("error: ") + e.what() + " (see 'smeared --help')\n"};
  }
}

} // namespace smeared::cli
