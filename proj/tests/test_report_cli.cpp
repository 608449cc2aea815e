#include "smeared/cli.hpp"
#include "golden_cases.hpp"
#include "test_common.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>

using namespace smeared;
using namespace smeared::cli;
using smeared::test::rel_diff;

namespace {

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto outcome = run_args(args);
  EXPECT_EQ(outcome.exit_code, 0) << outcome.err;
  return nlohmann::json::parse(outcome.out);
}

} // namespace

TEST(ParseArgs, BoundWithDefaultedJ) {
  const auto cfg = parse_args({"bound", "--state", "1s", "--tolerance", "1MHz"});
  EXPECT_EQ(cfg.command, Command::bound);
  EXPECT_EQ(cfg.state, HydrogenState::make(1, 0));
  EXPECT_EQ(cfg.state->with_default_j().two_j(), 1);
  EXPECT_EQ(cfg.tolerance, Energy::mhz(1.0));
}

TEST(ParseArgs, ShiftWithComptonAndExplicitJ) {
  const auto cfg = parse_args({"shift", "--state", "2p3/2", "--dx0", "compton"});
  EXPECT_EQ(cfg.command, Command::shift);
  EXPECT_EQ(cfg.state->two_j(), 3);
  ASSERT_TRUE(cfg.deformation);
  EXPECT_EQ(cfg.deformation->kind, DeformationSpec::Kind::compton);
  EXPECT_EQ(resolve_deformation(*cfg.deformation, kCodata2018), sastry_deformation(kCodata2018));
}

TEST(ParseArgs, GlobalFlagsAfterSubcommand) {
  const auto cfg = parse_args({"levels", "--n-max", "4", "--units", "GHz", "--format", "csv"});
  EXPECT_EQ(cfg.n_max, 4);
  EXPECT_EQ(cfg.units, Unit::GHz);
  EXPECT_EQ(cfg.format, Format::csv);
}

TEST(ParseArgs, UsageErrors) {
  const std::vector<std::vector<std::string>> bad{
      {"shift", "--state", "1s", "--dx0", "1e-16", "--beta", "1e-18"},
      {"shift", "--state", "1s"},
      {"shift", "--state", "1x", "--dx0", "compton"},
      {"shift", "--state", "1s", "--dx0", "-1e-16"},
      {"shift", "--state", "1s", "--dx0", "wide"},
      {"shift", "--state", "1s", "--beta", "1e-18", "--dx0-multiplier", "2"},
      {"shift", "--state", "1s", "--dx0", "compton", "--frobnicate"},
      {"bound", "--state", "1s", "--tolerance", "1"},
      {"bound", "--state", "1s"},
      {"oracle", "--check", "p7"},
      {"oracle", "--check", "p4", "--n", "6"},
      {"levels", "--units", "K"},
      {"levels", "--format", "xml"},
      {},
  };
  for (const auto& args : bad) {
    EXPECT_THROW(parse_args(args), UsageError);
    const auto outcome = run_args(args);
    EXPECT_EQ(outcome.exit_code, 2);
    EXPECT_TRUE(outcome.out.empty());
    EXPECT_EQ(std::count(outcome.err.begin(), outcome.err.end(), '\n'), 1) << outcome.err;
  }
}

TEST(ParseArgs, HelpIsNotAnError) {
  const auto outcome = run_args({"--help"});
  EXPECT_EQ(outcome.exit_code, 0);
  EXPECT_NE(outcome.out.find("bound"), std::string::npos);
}

TEST(Run, BoundJsonVerdict) {
  const auto j = run_json({"bound", "--state", "1s", "--tolerance", "1MHz"});
  EXPECT_EQ(j["verdict"], "excluded");
  EXPECT_NEAR(j["dx0_max_m"].get<double>(), 5.05e-16, 0.01e-16);
  EXPECT_TRUE(j["j_defaulted"].get<bool>());
}

TEST(Run, CompareIsFourRowLadder) {
  const auto j = run_json({"compare", "--state", "1s", "--dx0", "compton"});
  ASSERT_EQ(j["rows"].size(), 4u);
  EXPECT_EQ(j["rows"][0]["label"], "smearing");
}

TEST(Run, OracleP4Check) {
  const auto j = run_json({"oracle", "--check", "p4"});
  EXPECT_LT(j["relative_difference"].get<double>(), 1e-6);
  EXPECT_TRUE(j["converged"].get<bool>());
}

TEST(Run, CoefficientRescalesOnlySmearing) {
  const auto base = run_json({"shift", "--state", "1s", "--dx0", "compton"});
  const auto tripled = run_json({"shift", "--state", "1s", "--dx0", "compton", "--coefficient", "1"});
  EXPECT_LE(rel_diff(tripled["smearing_shift"].get<double>(), 3.0 * base["smearing_shift"].get<double>()), 1e-8);
  for (const char* key : {"relativistic_kinetic", "fine_structure", "bohr", "beta", "exp_p4_ev4"}) {
    EXPECT_EQ(tripled[key], base[key]) << key;
  }
}

TEST(Run, UnitsApplyToEnergies) {
  const auto ev = run_json({"shift", "--state", "1s", "--dx0", "compton"});
  const auto mhz = run_json({"shift", "--state", "1s", "--dx0", "compton", "--units", "MHz"});
  EXPECT_EQ(mhz["energy_unit"], "MHz");
  EXPECT_LE(rel_diff(mhz["smearing_shift"].get<double>() * 4.135667696e-9, ev["smearing_shift"].get<double>()),
            1e-8);
}

TEST(Run, ComputationErrorKeepsJsonParseable) {
  const auto path = std::filesystem::temp_directory_path() / "smeared_bad_constants.json";
  std::ofstream(path) << "{ \"alpha\": }";
  const auto outcome = run_args({"levels", "--constants", path.string(), "--format", "json"});
  EXPECT_EQ(outcome.exit_code, 1);
  const auto j = nlohmann::json::parse(outcome.out);
  EXPECT_EQ(j["status"], "error");
  EXPECT_NE(outcome.err.find("line"), std::string::npos);
}

TEST(Run, UnknownConstantsKeyWarnsOnStderr) {
  const auto path = std::filesystem::temp_directory_path() / "smeared_extra_key.json";
  std::ofstream(path) << R"({"tau_mass_ev": 1.7e9})";
  const auto outcome = run_args({"levels", "--constants", path.string()});
  EXPECT_EQ(outcome.exit_code, 0);
  EXPECT_NE(outcome.err.find("tau_mass_ev"), std::string::npos);
  EXPECT_EQ(outcome.out.find("tau_mass_ev"), std::string::npos);
}

TEST(Render, DeterministicAndWellFormed) {
  Report r{.command = "demo"};
  r.add("x", 1.0 / 3.0).add("neg_zero", -0.0).add("name", std::string("a\"b,c")).add("none", Value{});
  r.table = Table{{"label", "value"}, {{std::string("p"), 2.5e-3}, {std::string("q"), -1.0}}};
  r.notes.push_back("n");
  for (Format f : {Format::table, Format::json, Format::csv}) {
    const auto a = render(r, f);
    EXPECT_EQ(a, render(r, f));
    ASSERT_FALSE(a.empty());
    EXPECT_EQ(a.back(), '\n');
    EXPECT_NE(a[a.size() - 2], '\n');
  }
  const auto j = nlohmann::json::parse(render(r, Format::json));
  EXPECT_EQ(j["x"].get<double>(), 3.33333333e-01);
  EXPECT_EQ(render(r, Format::json).find("-0.0"), std::string::npos);
  EXPECT_EQ(j["rows"][1]["value"].get<double>(), -1.0);
  const auto csv = render(r, Format::csv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,value");
}

TEST(Render, ComparisonCsvSchema) {
  const auto outcome = run_args({"compare", "--state", "1s", "--dx0", "compton", "--format", "csv"});
  EXPECT_EQ(outcome.out.substr(0, outcome.out.find('\n')), "label,value_ev,value_mhz");
  EXPECT_EQ(std::count(outcome.out.begin(), outcome.out.end(), '\n'), 5);
}

TEST(Golden, EveryDocumentedCommandIsByteStable) {
  const bool update = std::getenv("SMEARED_UPDATE_GOLDEN") != nullptr;
  const auto cases = smeared::test::golden_cases();
  ASSERT_FALSE(cases.empty());
  for (const auto& c : cases) {
    const auto outcome = run_args(c.args);
    ASSERT_EQ(outcome.exit_code, 0) << c.name << ": " << outcome.err;
    const auto path = smeared::test::golden_dir() / (c.name + ".out");
    if (update) {
      std::ofstream(path, std::ios::binary) << outcome.out;
      continue;
    }
    EXPECT_EQ(outcome.out, smeared::test::read_file(path)) << c.name;
    EXPECT_EQ(outcome.out, run_args(c.args).out) << c.name;
  }
}
