#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "vmgame/adversary_region.hpp"
#include "vmgame/discrete_game.hpp"
#include "vmgame/errors.hpp"
#include "vmgame/geometry.hpp"
#include "vmgame/mixed_game.hpp"
#include "vmgame/pure_game.hpp"
#include "vmgame/scenario.hpp"
#include "vmgame/vm_engine.hpp"

namespace {

using nlohmann::json;
using namespace vmgame;

struct CommonArgs {
  std::string scenario_path;
  std::string out_path;  // empty: stdout
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--scenario", args.scenario_path, "scenario JSON file")
      ->required();
  cmd->add_option("--out", args.out_path, "output file (default: stdout)");
  cmd->add_option("--seed", args.seed, "override the scenario's seed");
}

Scenario load(const CommonArgs& args) {
  Scenario scenario = load_scenario(args.scenario_path);
  if (args.seed) scenario.optimizer.seed = *args.seed;
  return scenario;
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw io_error("cannot open output file: " + out_path);
  out << text;
  out.flush();
  if (!out) throw io_error("cannot write output file: " + out_path);
}

void emit_report(const json& report, const std::string& out_path) {
  emit_text(report.dump(2) + "\n", out_path);
}

json base_report(const char* command, const Scenario& scenario) {
  return {{"schema_version", 1},
          {"command", command},
          {"unit", scenario.unit},
          {"range", scenario.range_value}};
}

json xy(const Point& p) { return json::array({p.x(), p.y()}); }

int cmd_classify(const Scenario& scenario, const CommonArgs& args) {
  if (scenario.bounds.has_value() == scenario.claim.has_value())
    throw validation_error(
        "classify needs exactly one of \"bounds\" or \"claim\"");
  json report = base_report("classify", scenario);

  DistanceBounds bounds;
  if (scenario.claim) {
    // The adversary forges the tightest bounds it can: each true distance
    // enlarged just enough to match the fake position.
    const Claim& claim = *scenario.claim;
    bounds.resize(static_cast<Eigen::Index>(scenario.config.size()));
    for (Eigen::Index i = 0; i < bounds.size(); ++i) {
      const Point& v = scenario.config.verifiers[static_cast<std::size_t>(i)];
      bounds[i] = std::max(distance(claim.fake_position, v),
                           distance(claim.true_position, v));
    }
    const double deception = payoff(scenario.config, claim,
                                    UtilityCriterion::MaximumDeception);
    report["plausible"] = is_plausible(scenario.config, claim);
    report["deception_over_R"] = deception;
    report["deception"] = deception * scenario.range_value;
  } else {
    bounds = *scenario.bounds;
  }

  const auto [outcome, estimate] =
      classify(scenario.config, bounds, scenario.delta);
  report["label"] = to_string(outcome);
  report["estimate_over_R"] = xy(estimate.position);
  report["estimate"] = xy(estimate.position * scenario.range_value);
  report["residual_over_R2"] = estimate.residual;
  report["converged"] = estimate.converged;
  report["iterations"] = estimate.iterations;
  emit_report(report, args.out_path);
  return 0;
}

int cmd_region(const Scenario& scenario, const CommonArgs& args) {
  if (!scenario.region)
    throw validation_error("region needs a \"region\" block in the scenario");
  const Scenario::RegionRequest& request = *scenario.region;
  const Eigen::AlignedBox2d bbox =
      request.bbox ? *request.bbox : range_lens_bbox(scenario.config);
  const RegionRaster raster =
      rasterize_region(scenario.config, request.u, bbox, request.step);
  std::ostringstream csv;
  write_region_csv(csv, raster);
  emit_text(csv.str(), args.out_path);
  return 0;
}

int cmd_maxmin(const Scenario& scenario, const CommonArgs& args) {
  const MaxminSolution sol =
      max_deception(scenario.config, scenario.optimizer);
  json report = base_report("maxmin", scenario);
  report["value_over_R"] = sol.value;
  report["value"] = sol.value * scenario.range_value;
  report["u"] = {{"rho_over_R", sol.u_polar.rho},
                 {"theta_rad", sol.u_polar.theta}};
  report["p"] = {{"rho_over_R", sol.p_polar.rho},
                 {"theta_rad", sol.p_polar.theta}};
  report["delta_theta_rad"] = wrap_to_pi(sol.p_polar.theta -
                                         sol.u_polar.theta);
  report["claim"] = {{"true_over_R", xy(sol.claim.true_position)},
                     {"fake_over_R", xy(sol.claim.fake_position)}};
  report["converged"] = sol.converged;
  report["seed"] = scenario.optimizer.seed;
  emit_report(report, args.out_path);
  return sol.converged ? 0 : 4;
}

json counts_json(const ComplexityCounts& counts) {
  return {{"points", counts.point_count},
          {"adversary_actions", counts.adversary_actions},
          {"verifier_triples_bound", counts.verifier_triples_bound},
          {"matrix_entries", counts.matrix_entries}};
}

int cmd_lp(const Scenario& scenario, const CommonArgs& args) {
  if (!scenario.grid)
    throw validation_error("lp needs a \"grid\" block in the scenario");
  const GridSpec& grid = *scenario.grid;
  json report = base_report("lp", scenario);
  report["grid"] = {{"side_over_R", grid.side},
                    {"points_per_edge", grid.points_per_edge}};

  const ComplexityCounts counts = complexity_report(grid);
  if (!within_budget(counts, scenario.matrix_budget)) {
    report["counts"] = counts_json(counts);
    report["budget"] = scenario.matrix_budget;
    report["within_budget"] = false;
    emit_report(report, args.out_path);
    return 5;
  }

  const PayoffMatrix matrix =
      build_matrix(grid, 1.0, scenario.criterion, scenario.raster_step);
  const MinmaxResult result = solve_minmax(matrix);
  report["counts"] = {
      {"points", static_cast<std::int64_t>(matrix.actions.points.size())},
      {"adversary_actions", matrix.entries.rows()},
      {"verifier_actions", matrix.entries.cols()},
      {"positive_entries", (matrix.entries.array() > 0.0).count()}};
  report["value_over_R"] = result.value;
  report["value"] = result.value * scenario.range_value;
  json support = json::array();
  for (Eigen::Index i = 0; i < result.verifier_mixed.size(); ++i) {
    if (result.verifier_mixed[i] <= 1e-9) continue;
    const auto& triple =
        matrix.actions.verifier_triples[static_cast<std::size_t>(i)];
    support.push_back({{"index", i},
                       {"probability", result.verifier_mixed[i]},
                       {"triple", {triple[0], triple[1], triple[2]}}});
  }
  report["support"] = support;
  emit_report(report, args.out_path);
  return 0;
}

int cmd_mixed(const Scenario& scenario, const CommonArgs& args) {
  if (!scenario.equilateral_edge)
    throw validation_error(
        "mixed needs the equilateral verifier form in the scenario");
  VerifierMixedStrategy verifier;
  verifier.edge = *scenario.equilateral_edge;
  verifier.range = 1.0;
  const EquilibriumReport result = best_adversary_parameters(
      verifier, scenario.optimizer, scenario.alpha_step);
  const bool symmetry =
      symmetry_reduction_check(result.strategy, verifier,
                               scenario.alpha_step);

  json report = base_report("mixed", scenario);
  report["expected_utility_over_R"] = result.expected_utility;
  report["expected_utility"] = result.expected_utility *
                               scenario.range_value;
  report["strategy"] = {{"rho_u_over_R", result.strategy.rho_u},
                        {"rho_p_over_R", result.strategy.rho_p},
                        {"delta_theta_rad", result.strategy.delta_theta}};
  report["integration_step_rad"] = result.integration_step;
  report["converged"] = result.converged;
  report["symmetry_check"] = symmetry;
  report["seed"] = scenario.optimizer.seed;
  emit_report(report, args.out_path);
  return result.converged ? 0 : 4;
}

int cmd_complexity(const Scenario& scenario, const CommonArgs& args) {
  if (!scenario.grid)
    throw validation_error(
        "complexity needs a \"grid\" block in the scenario");
  json report = base_report("complexity", scenario);
  report["grid"] = {{"side_over_R", scenario.grid->side},
                    {"points_per_edge", scenario.grid->points_per_edge}};
  const ComplexityCounts counts = complexity_report(*scenario.grid);
  report["counts"] = counts_json(counts);
  report["budget"] = scenario.matrix_budget;
  report["within_budget"] = within_budget(counts, scenario.matrix_budget);
  emit_report(report, args.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "verifiable-multilateration localization checks and the "
      "verifier-vs-adversary deception game"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "label a bound vector or a claim");
  CLI::App* region_cmd =
      app.add_subcommand("region", "rasterize the plausible fake-position "
                                   "region to CSV");
  CLI::App* maxmin_cmd =
      app.add_subcommand("maxmin", "best pure deception against a fixed "
                                   "placement");
  CLI::App* lp_cmd =
      app.add_subcommand("lp", "exact value of the grid-restricted game");
  CLI::App* mixed_cmd =
      app.add_subcommand("mixed", "best deception against a spinning "
                                  "placement");
  CLI::App* complexity_cmd =
      app.add_subcommand("complexity", "grid action-space sizes vs budget");
  for (CLI::App* cmd : {classify_cmd, region_cmd, maxmin_cmd, lp_cmd,
                        mixed_cmd, complexity_cmd})
    add_common(cmd, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Scenario scenario = load(args);
    if (classify_cmd->parsed()) return cmd_classify(scenario, args);
    if (region_cmd->parsed()) return cmd_region(scenario, args);
    if (maxmin_cmd->parsed()) return cmd_maxmin(scenario, args);
    if (lp_cmd->parsed()) return cmd_lp(scenario, args);
    if (mixed_cmd->parsed()) return cmd_mixed(scenario, args);
    if (complexity_cmd->parsed()) return cmd_complexity(scenario, args);
    return 2;  // unreachable: require_subcommand(1)
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
