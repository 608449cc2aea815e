// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include "smeared/cli.hpp"
#include "smeared/smeared.hpp"
#include "golden_cases.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace smeared;

namespace {

const Constants& C = kCodata2018;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

nlohmann::json cli_json(std::vector<std::string> args, Outcome& o) {
  args.insert(args.end(), {"--format", "json"});
  const auto res = cli::run_args(args);
  o.require(res.exit_code == 0, "exit code " + std::to_string(res.exit_code) + " " + res.err);
  return nlohmann::json::parse(res.out);
}

double m_alpha4() { return C.electron_mass * std::pow(C.alpha, 4); }

Outcome smearing_magnitude() {
  Outcome o;
  const auto j = cli_json({"shift", "--state", "1s", "--dx0", "compton"}, o);
  const double v = j["smearing_shift"].get<double>();
  const double closed = 5.0 / 3.0 * m_alpha4();
  o.require(rel(v, closed) <= 1e-6, "shift " + num(v) + " vs (5/3) m alpha^4 " + num(closed));
  o.require(v >= 1e-3 && v <= 1e-2, "shift " + num(v) + " outside [1e-3, 1e-2] eV");
  o.detail = o.pass ? "shift = " + num(v) + " eV" : o.detail;
  return o;
}

Outcome magnitude_ladder() {
  Outcome o;
  const auto j = cli_json({"compare", "--state", "1s", "--dx0", "compton"}, o);
  const auto& rows = j["rows"];
  const std::vector<std::string> expected{"smearing", "relativistic_kinetic", "lamb_reference", "hyperfine_reference"};
  o.require(rows.size() == expected.size(), "expected 4 rows");
  if (!o.pass) return o;
  std::vector<double> mag;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    o.require(rows[i]["label"] == expected[i], "row " + std::to_string(i) + " is " + rows[i]["label"].get<std::string>());
    mag.push_back(std::abs(rows[i]["value_ev"].get<double>()));
  }
  for (std::size_t i = 1; i < mag.size(); ++i) o.require(mag[i - 1] > mag[i], "ladder not strictly decreasing");
  const double over_lamb = mag[0] / mag[2];
  const double over_hfs = mag[0] / mag[3];
  o.require(over_lamb >= 30 && over_lamb <= 1000, "smearing/Lamb = " + num(over_lamb));
  o.require(over_hfs >= 100 && over_hfs <= 3000, "smearing/hyperfine = " + num(over_hfs));
  if (o.pass) o.detail = "smearing/Lamb = " + num(over_lamb) + ", smearing/hyperfine = " + num(over_hfs);
  return o;
}

Outcome exclusion_verdict() {
  Outcome o;
  const auto lamb = cli_json({"bound", "--state", "1s", "--tolerance", "1MHz"}, o);
  const auto hfs = cli_json({"bound", "--state", "1s", "--tolerance", "0.1MHz"}, o);
  const double factor = lamb["exclusion_factor"].get<double>();
  o.require(lamb["verdict"] == "excluded", "1 MHz verdict not excluded");
  o.require(factor >= 1e5 && factor <= 1e7, "exclusion factor " + num(factor));
  o.require(hfs["verdict"] == "excluded", "0.1 MHz verdict not excluded");
  if (o.pass) o.detail = "exclusion factor " + num(factor) + " (1 MHz), " + num(hfs["exclusion_factor"].get<double>()) + " (0.1 MHz)";
  return o;
}

Outcome bound_value() {
  Outcome o;
  const auto j = cli_json({"bound", "--state", "1s", "--tolerance", "1MHz"}, o);
  const double dx0 = j["dx0_max_m"].get<double>();
  const double ratio = j["compton_ratio"].get<double>();
  // independent chain: beta_max = tolerance / ((5/3) m^3 alpha^4)
  const double beta_max = C.planck_h * 1e6 / (5.0 / 3.0 * std::pow(C.electron_mass, 3) * std::pow(C.alpha, 4));
  const double dx0_chain = std::sqrt(beta_max) * C.hbar_c;
  o.require(dx0 >= 2.5e-16 && dx0 <= 1.0e-15, "dx0_max " + num(dx0));
  o.require(ratio >= 7e-4 && ratio <= 3e-3, "compton ratio " + num(ratio));
  o.require(rel(dx0, dx0_chain) <= 1e-8, "dx0_max disagrees with the direct chain " + num(dx0_chain));
  if (o.pass) o.detail = "dx0_max = " + num(dx0) + " m, ratio = " + num(ratio);
  return o;
}

Outcome p4_oracle() {
  Outcome o;
  double worst = 0.0;
  int states = 0;
  for (int n = 1; n <= 5; ++n) {
    for (int l = 0; l < n; ++l) {
      const auto s = HydrogenState::make(n, l);
      const auto r = expectation_p4_numeric(s, default_quadrature_grid(s, C), C);
      const double d = rel(r.value, exp_p4(s, C));
      worst = std::max(worst, d);
      o.require(r.converged && d <= 1e-6, s.label() + " differs by " + num(d));
      ++states;
    }
  }
  o.require(states == 15, "expected 15 states");
  if (o.pass) o.detail = "15 states, worst relative difference " + num(worst);
  return o;
}

Outcome level_oracle() {
  Outcome o;
  double worst = 0.0;
  std::string ratios;
  for (int l : {0, 1, 2}) {
    const auto res = radial_energies(l, 3, C);
    for (int k = 0; k < 3; ++k) {
      const int n = l + 1 + k;
      const double exact = bohr_energy(HydrogenState::make(n, l), C).magnitude;
      const double d = rel(res[static_cast<std::size_t>(k)].value, exact);
      worst = std::max(worst, d);
      o.require(res[static_cast<std::size_t>(k)].converged, "l=" + std::to_string(l) + " n=" + std::to_string(n) + " not converged");
      o.require(d <= 1e-8, "l=" + std::to_string(l) + " n=" + std::to_string(n) + " differs by " + num(d));
    }
    const double ratio = fd_convergence_ratio(l, default_radial_grid(C, l, 1), C);
    o.require(ratio >= 3.5 && ratio <= 4.5, "l=" + std::to_string(l) + " convergence ratio " + num(ratio));
    ratios += (ratios.empty() ? "" : ", ") + num(ratio);
  }
  if (o.pass) o.detail = "worst relative difference " + num(worst) + ", halving ratios " + ratios;
  return o;
}

Outcome slope_proof() {
  Outcome o;
  const auto s = oscillator_slope_check(C.electron_mass * C.alpha, C.electron_mass);
  o.require(s.relative_difference <= 1e-4, "slope off by " + num(s.relative_difference));
  if (o.pass) o.detail = "dE/dbeta relative difference " + num(s.relative_difference);
  return o;
}

Outcome consistency() {
  Outcome o;
  const double ev = convert(Energy::mhz(1.0), Unit::eV, C).magnitude;
  const double back = convert(Energy::ev(ev), Unit::MHz, C).magnitude;
  o.require(rel(ev, 4.135667696e-9) <= 1e-14, "1 MHz = " + num(ev) + " eV");
  o.require(rel(back, 1.0) <= 1e-14, "round trip gave " + num(back));
  const double r = rel(compton_wavelength(C), C.alpha * bohr_radius(C));
  o.require(r <= 1e-12, "Compton vs alpha * Bohr differ by " + num(r));
  if (o.pass) o.detail = "1 MHz = " + num(ev) + " eV, Compton/(alpha a0) - 1 = " + num(r);
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto cases = test::golden_cases();
  o.require(!cases.empty(), "no golden cases");
  for (const auto& c : cases) {
    const auto first = cli::run_args(c.args);
    const auto second = cli::run_args(c.args);
    o.require(first.exit_code == 0, c.name + " exit " + std::to_string(first.exit_code));
    o.require(first.out == second.out, c.name + " differs between runs");
    o.require(first.out == test::read_file(test::golden_dir() / (c.name + ".out")), c.name + " differs from golden");
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " commands byte-identical to golden files";
  return o;
}

struct Criterion {
  const char* id;
  const char* name;
  double time_limit_s;  // 0: no limit
  std::function<Outcome()> body;
};

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "smearing magnitude", 1.0, smearing_magnitude},
      {"AC2", "magnitude ladder", 1.0, magnitude_ladder},
      {"AC3", "exclusion verdict", 1.0, exclusion_verdict},
      {"AC4", "bound value", 1.0, bound_value},
      {"AC5", "<p^4> oracle equivalence", 30.0, p4_oracle},
      {"AC6", "level oracle equivalence", 60.0, level_oracle},
      {"AC7", "first-order slope", 10.0, slope_proof},
      {"AC8", "unit and constant consistency", 0.0, consistency},
      {"AC9", "determinism", 0.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && seconds >= c.time_limit_s) {
      o.pass = false;
      o.detail += "; took " + num(seconds) + " s (limit " + num(c.time_limit_s) + " s)";
    }
    std::printf("[%s] %s %-32s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds, o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
