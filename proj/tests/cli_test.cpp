#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fixture(const std::string& name) {
  return std::string(VMGAME_TEST_DATA) + "/" + name;
}

// Runs the installed CLI with `args`, capturing exit code and both streams.
RunResult run(const std::string& args) {
  static int counter = 0;
  const std::filesystem::path dir = std::filesystem::temp_directory_path();
  const std::string tag = std::to_string(++counter);
  const std::filesystem::path out_path = dir / ("vmgame_out_" + tag + ".txt");
  const std::filesystem::path err_path = dir / ("vmgame_err_" + tag + ".txt");

  const std::string command = std::string(VMGAME_CLI_PATH) + " " + args +
                              " > " + out_path.string() + " 2> " +
                              err_path.string();
  const int status = std::system(command.c_str());
  RunResult result;
  REQUIRE(status != -1);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

json parse_report(const RunResult& result) {
  REQUIRE_FALSE(result.out.empty());
  return json::parse(result.out);
}

}  // namespace

TEST_CASE("cli usage errors") {
  CHECK(run("").code == 2);                 // a subcommand is required
  CHECK(run("--help").code == 0);
  CHECK(run("classify").code == 2);         // --scenario is required
  CHECK(run("frobnicate --scenario x").code == 2);
}

TEST_CASE("cli scenario loading errors") {
  CHECK(run("classify --scenario /nonexistent/nowhere.json").code == 3);
  const RunResult bad =
      run("classify --scenario " + fixture("malformed.json"));
  CHECK(bad.code == 2);
  CHECK(bad.err.find("error:") != std::string::npos);
}

TEST_CASE("cli classify") {
  SUBCASE("honest bounds come back robust") {
    const RunResult r =
        run("classify --scenario " + fixture("honest_bounds.json"));
    REQUIRE(r.code == 0);
    const json report = parse_report(r);
    CHECK(report["schema_version"] == 1);
    CHECK(report["command"] == "classify");
    CHECK(report["unit"] == "m");
    CHECK(report["range"] == 10.0);
    CHECK(report["label"] == "Robust");
    CHECK(report["converged"] == true);
    CHECK(std::abs(report["estimate_over_R"][0].get<double>()) < 1e-9);
    CHECK(report["residual_over_R2"].get<double>() < 1e-15);
  }
  SUBCASE("the positions form works the same") {
    const RunResult r =
        run("classify --scenario " + fixture("positions_triangle.json"));
    REQUIRE(r.code == 0);
    CHECK(parse_report(r)["label"] == "Robust");
  }
  SUBCASE("a consistent exterior claim is plausible but unverifiable") {
    const RunResult r =
        run("classify --scenario " + fixture("consistent_claim.json"));
    REQUIRE(r.code == 0);
    const json report = parse_report(r);
    CHECK(report["plausible"] == true);
    CHECK(report["label"] == "Unknown");
    CHECK(report["deception_over_R"].get<double>() ==
          doctest::Approx(0.2099913321065435));
    CHECK(report["deception"].get<double>() ==
          doctest::Approx(2.099913321065435));
  }
  SUBCASE("a scenario with neither bounds nor claim is rejected") {
    CHECK(run("classify --scenario " + fixture("lp3.json")).code == 2);
  }
}

TEST_CASE("cli region") {
  SUBCASE("empty region at the orthocenter") {
    const RunResult r =
        run("region --scenario " + fixture("region_orthocenter.json"));
    REQUIRE(r.code == 0);
    std::istringstream csv(r.out);
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "x,y,plausible");
    int rows = 0;
    while (std::getline(csv, line)) {
      ++rows;
      CHECK(line.substr(line.size() - 2) == ",0");
    }
    CHECK(rows == 23 * 20);  // lens bbox 1.1339R x 1R at step 0.05R
  }
  SUBCASE("a step larger than the box is rejected") {
    CHECK(run("region --scenario " + fixture("region_bad_step.json")).code ==
          2);
  }
  SUBCASE("a scenario without a region block is rejected") {
    CHECK(run("region --scenario " + fixture("lp3.json")).code == 2);
  }
}

TEST_CASE("cli maxmin") {
  SUBCASE("unit equilateral placement") {
    const RunResult r =
        run("maxmin --scenario " + fixture("maxmin_unit.json"));
    REQUIRE(r.code == 0);
    const json report = parse_report(r);
    CHECK(report["converged"] == true);
    CHECK(report["value_over_R"].get<double>() ==
          doctest::Approx(0.26794919).epsilon(2e-2));
    CHECK(report["value"].get<double>() ==
          doctest::Approx(10 * report["value_over_R"].get<double>()));
    CHECK(report["seed"] == 42);
  }
  SUBCASE("the seed flag overrides the scenario") {
    const RunResult r = run("maxmin --seed 7 --scenario " +
                            fixture("maxmin_unit.json"));
    REQUIRE(r.code == 0);
    CHECK(parse_report(r)["seed"] == 7);
  }
  SUBCASE("an unreachable placement reports non-convergence") {
    const RunResult r =
        run("maxmin --scenario " + fixture("far_triangle.json"));
    CHECK(r.code == 4);
    const json report = parse_report(r);
    CHECK(report["converged"] == false);
    CHECK(report["value_over_R"] == 0.0);
  }
}

TEST_CASE("cli lp and complexity") {
  SUBCASE("spanning three-point grid solves to value zero") {
    const RunResult r = run("lp --scenario " + fixture("lp3.json"));
    REQUIRE(r.code == 0);
    const json report = parse_report(r);
    CHECK(report["value_over_R"].get<double>() ==
          doctest::Approx(0.0).epsilon(1e-9));
    CHECK(report["counts"]["points"] == 9);
    CHECK(report["counts"]["adversary_actions"] == 72);
    CHECK(report["counts"]["verifier_actions"] == 24);
    CHECK(report["counts"]["positive_entries"] == 0);
    REQUIRE(report["support"].is_array());
    REQUIRE_FALSE(report["support"].empty());
    double total = 0;
    for (const json& entry : report["support"])
      total += entry["probability"].get<double>();
    CHECK(total == doctest::Approx(1.0));
  }
  SUBCASE("over-budget grids stop at the complexity gate") {
    const RunResult r = run("lp --scenario " + fixture("lp10.json"));
    CHECK(r.code == 5);
    const json report = parse_report(r);
    CHECK(report["within_budget"] == false);
    CHECK(report["counts"]["matrix_entries"] == 1600830000);
  }
  SUBCASE("complexity always reports and exits cleanly") {
    const RunResult r = run("complexity --scenario " + fixture("lp10.json"));
    REQUIRE(r.code == 0);
    const json report = parse_report(r);
    CHECK(report["counts"]["points"] == 100);
    CHECK(report["counts"]["adversary_actions"] == 9900);
    CHECK(report["counts"]["verifier_triples_bound"] == 161700);
    CHECK(report["counts"]["matrix_entries"] == 1600830000);
    CHECK(report["within_budget"] == false);
    CHECK(report["budget"] == 1e8);
  }
  SUBCASE("lp without a grid block is rejected") {
    CHECK(run("lp --scenario " + fixture("honest_bounds.json")).code == 2);
  }
}

TEST_CASE("cli mixed") {
  SUBCASE("a coarse run reports a converged strategy") {
    const RunResult r = run("mixed --scenario " + fixture("mixed_fast.json"));
    REQUIRE(r.code == 0);
    const json report = parse_report(r);
    CHECK(report["converged"] == true);
    CHECK(report["symmetry_check"] == true);
    CHECK(report["integration_step_rad"] == 0.02);
    CHECK(report["expected_utility_over_R"].get<double>() >= 0.0);
    CHECK(report["strategy"].contains("rho_u_over_R"));
    CHECK(report["strategy"].contains("rho_p_over_R"));
    CHECK(report["strategy"].contains("delta_theta_rad"));
  }
  SUBCASE("the positions form is rejected") {
    CHECK(run("mixed --scenario " + fixture("positions_triangle.json"))
              .code == 2);
  }
}

TEST_CASE("cli output conventions") {
  SUBCASE("--out writes the report to a file, stdout stays clean") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "vmgame_cli_out_test.json";
    const RunResult r = run("classify --out " + path.string() +
                            " --scenario " + fixture("honest_bounds.json"));
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const std::string text = slurp(path);
    CHECK(json::parse(text)["label"] == "Robust");
    std::filesystem::remove(path);
  }
  SUBCASE("reports are two-space-indented json plus a newline") {
    const RunResult r =
        run("classify --scenario " + fixture("honest_bounds.json"));
    REQUIRE(r.code == 0);
    CHECK(r.out == json::parse(r.out).dump(2) + "\n");
  }
  SUBCASE("an unwritable output path maps to the io exit code") {
    CHECK(run("classify --out /nonexistent/dir/report.json --scenario " +
              fixture("honest_bounds.json"))
              .code == 3);
  }
}
