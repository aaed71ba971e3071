#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>

#include "vmgame/adversary_region.hpp"
#include "vmgame/discrete_game.hpp"
#include "vmgame/geometry.hpp"
#include "vmgame/pure_game.hpp"
#include "vmgame/vm_engine.hpp"

namespace vmgame {

// One analysis setup, loaded from a JSON file. Every length in the file is a
// "VALUE UNIT" string (units: m, cm, mm, km, or R = multiples of the range);
// the range itself must be absolute. Internally everything is normalized so
// the range equals 1, which is also the scale all reports use.
struct Scenario {
  explicit Scenario(VerifierConfig config_) : config(std::move(config_)) {}

  VerifierConfig config;   // normalized: config.range == 1
  double range_value = 1;  // the range as written, in `unit`
  std::string unit = "m";

  double delta = 1e-6;         // classification tolerance
  UtilityCriterion criterion = UtilityCriterion::MaximumDeception;
  OptimizerSettings optimizer;
  double alpha_step = 1e-3;    // radians
  double raster_step = 0.005;  // area/shape payoff raster
  double matrix_budget = kDefaultMatrixBudget;

  std::optional<GridSpec> grid;
  std::optional<DistanceBounds> bounds;  // classify: raw bound vector
  std::optional<Claim> claim;            // classify: a (true, fake) pair

  struct RegionRequest {
    Point u{0, 0};
    double step = 0.005;
    std::optional<Eigen::AlignedBox2d> bbox;  // default: the range lens bbox
  };
  std::optional<RegionRequest> region;

  // Edge of the placement when the file used the equilateral form; the mixed
  // analysis requires it (its verifier strategy spins that placement).
  std::optional<double> equilateral_edge;
};

// "VALUE UNIT" -> meters. range_m converts the R unit and must be NaN where
// R is not yet defined (when parsing the range itself).
double parse_length(const std::string& text, double range_m);

// Parses a scenario from JSON text. Unknown keys anywhere are rejected.
Scenario parse_scenario(const std::string& json_text);

// Reads and parses a scenario file: unreadable file -> io_error, anything
// wrong with the content -> validation_error.
Scenario load_scenario(const std::string& path);

}  // namespace vmgame
