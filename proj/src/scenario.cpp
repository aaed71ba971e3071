#include "vmgame/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "vmgame/errors.hpp"

namespace vmgame {
namespace {

using nlohmann::json;

void require_keys(const json& object, const std::set<std::string>& allowed,
                  const std::string& where) {
  if (!object.is_object())
    throw validation_error(where + " must be a JSON object");
  for (const auto& [key, value] : object.items())
    if (!allowed.count(key))
      throw validation_error("unknown key \"" + key + "\" in " + where);
}

double number(const json& value, const std::string& where) {
  if (!value.is_number())
    throw validation_error(where + " must be a number");
  return value.get<double>();
}

// Length fields are "VALUE UNIT" strings; `range_m` scales the R unit.
double length_m(const json& value, double range_m, const std::string& where) {
  if (!value.is_string())
    throw validation_error(where + " must be a \"VALUE UNIT\" string");
  return parse_length(value.get<std::string>(), range_m);
}

Point point_m(const json& value, double range_m, const std::string& where) {
  if (!value.is_array() || value.size() != 2)
    throw validation_error(where + " must be an [x, y] pair");
  return {length_m(value[0], range_m, where),
          length_m(value[1], range_m, where)};
}

VerifierConfig parse_verifiers(const json& spec, double range_m,
                               std::optional<double>& equilateral_edge) {
  require_keys(spec, {"equilateral", "positions"}, "verifiers");
  if (spec.contains("equilateral") == spec.contains("positions"))
    throw validation_error(
        "verifiers need exactly one of \"equilateral\" or \"positions\"");

  if (spec.contains("equilateral")) {
    const json& eq = spec["equilateral"];
    require_keys(eq, {"edge", "center", "alpha_rad"}, "verifiers.equilateral");
    if (!eq.contains("edge"))
      throw validation_error("verifiers.equilateral needs an edge");
    const double edge = length_m(eq["edge"], range_m, "edge") / range_m;
    Point center(0, 0);
    if (eq.contains("center"))
      center = point_m(eq["center"], range_m, "center") / range_m;
    double alpha = 0;
    if (eq.contains("alpha_rad")) alpha = number(eq["alpha_rad"], "alpha_rad");
    equilateral_edge = edge;
    return equilateral_verifiers(center, edge, alpha, 1.0);
  }

  const json& list = spec["positions"];
  if (!list.is_array() || list.size() < 3)
    throw validation_error("verifiers.positions needs at least 3 points");
  std::vector<Point> positions;
  for (const json& p : list)
    positions.push_back(point_m(p, range_m, "verifiers.positions") / range_m);
  return VerifierConfig(std::move(positions), 1.0);
}

UtilityCriterion parse_criterion(const json& value) {
  if (!value.is_string())
    throw validation_error("criterion must be a string");
  const std::string name = value.get<std::string>();
  if (name == "maximum_deception") return UtilityCriterion::MaximumDeception;
  if (name == "deception_area") return UtilityCriterion::DeceptionArea;
  if (name == "deception_shape") return UtilityCriterion::DeceptionShape;
  throw validation_error("unknown criterion \"" + name + "\"");
}

OptimizerSettings parse_optimizer(const json& value) {
  require_keys(value, {"restarts", "max_iters", "step_tolerance", "seed"},
               "optimizer");
  OptimizerSettings settings;
  if (value.contains("restarts"))
    settings.restarts = static_cast<int>(number(value["restarts"],
                                                "optimizer.restarts"));
  if (value.contains("max_iters"))
    settings.max_iters = static_cast<int>(number(value["max_iters"],
                                                 "optimizer.max_iters"));
  if (value.contains("step_tolerance"))
    settings.step_tolerance = number(value["step_tolerance"],
                                     "optimizer.step_tolerance");
  if (value.contains("seed"))
    settings.seed = static_cast<std::uint64_t>(
        number(value["seed"], "optimizer.seed"));
  if (settings.restarts < 1 || settings.max_iters < 1 ||
      !(settings.step_tolerance > 0))
    throw validation_error("optimizer settings must be positive");
  return settings;
}

Scenario parse_document(const json& doc) {
  require_keys(doc,
               {"range", "verifiers", "delta", "criterion", "optimizer",
                "alpha_step_rad", "raster_step", "matrix_budget", "grid",
                "bounds", "claim", "region"},
               "scenario");
  if (!doc.contains("range") || !doc.contains("verifiers"))
    throw validation_error("scenario needs \"range\" and \"verifiers\"");

  // The range anchors the R unit, so it must be absolute itself.
  if (!doc["range"].is_string())
    throw validation_error("range must be a \"VALUE UNIT\" string");
  const std::string range_text = doc["range"].get<std::string>();
  const double range_m =
      parse_length(range_text, std::numeric_limits<double>::quiet_NaN());
  if (!(range_m > 0) || !std::isfinite(range_m))
    throw validation_error("range must be positive and absolute");

  std::optional<double> equilateral_edge;
  Scenario scenario(
      parse_verifiers(doc["verifiers"], range_m, equilateral_edge));
  scenario.equilateral_edge = equilateral_edge;
  {
    std::istringstream in(range_text);
    in >> scenario.range_value >> scenario.unit;
  }

  if (doc.contains("delta"))
    scenario.delta = length_m(doc["delta"], range_m, "delta") / range_m;
  if (!(scenario.delta >= 0))
    throw validation_error("delta must be >= 0");
  if (doc.contains("criterion"))
    scenario.criterion = parse_criterion(doc["criterion"]);
  if (doc.contains("optimizer"))
    scenario.optimizer = parse_optimizer(doc["optimizer"]);
  if (doc.contains("alpha_step_rad")) {
    scenario.alpha_step = number(doc["alpha_step_rad"], "alpha_step_rad");
    if (!(scenario.alpha_step > 0))
      throw validation_error("alpha_step_rad must be positive");
  }
  if (doc.contains("raster_step")) {
    scenario.raster_step =
        length_m(doc["raster_step"], range_m, "raster_step") / range_m;
    if (!(scenario.raster_step > 0))
      throw validation_error("raster_step must be positive");
  }
  if (doc.contains("matrix_budget")) {
    scenario.matrix_budget = number(doc["matrix_budget"], "matrix_budget");
    if (!(scenario.matrix_budget > 0))
      throw validation_error("matrix_budget must be positive");
  }
  if (doc.contains("grid")) {
    require_keys(doc["grid"], {"side", "points_per_edge"}, "grid");
    if (!doc["grid"].contains("side") ||
        !doc["grid"].contains("points_per_edge"))
      throw validation_error("grid needs side and points_per_edge");
    const double side =
        length_m(doc["grid"]["side"], range_m, "grid.side") / range_m;
    const double ppe = number(doc["grid"]["points_per_edge"],
                              "grid.points_per_edge");
    if (ppe != std::floor(ppe))
      throw validation_error("grid.points_per_edge must be an integer");
    scenario.grid = GridSpec(side, static_cast<int>(ppe));
  }
  if (doc.contains("bounds")) {
    const json& list = doc["bounds"];
    if (!list.is_array() || list.empty())
      throw validation_error("bounds must be a non-empty array");
    DistanceBounds bounds(static_cast<Eigen::Index>(list.size()));
    for (Eigen::Index i = 0; i < bounds.size(); ++i)
      bounds[i] = length_m(list[static_cast<std::size_t>(i)], range_m,
                           "bounds") /
                  range_m;
    scenario.bounds = std::move(bounds);
  }
  if (doc.contains("claim")) {
    require_keys(doc["claim"], {"true", "fake"}, "claim");
    if (!doc["claim"].contains("true") || !doc["claim"].contains("fake"))
      throw validation_error("claim needs \"true\" and \"fake\" points");
    scenario.claim =
        Claim{point_m(doc["claim"]["true"], range_m, "claim.true") / range_m,
              point_m(doc["claim"]["fake"], range_m, "claim.fake") / range_m};
  }
  if (doc.contains("region")) {
    const json& reg = doc["region"];
    require_keys(reg, {"u", "step", "bbox"}, "region");
    if (!reg.contains("u") || !reg.contains("step"))
      throw validation_error("region needs \"u\" and \"step\"");
    Scenario::RegionRequest request;
    request.u = point_m(reg["u"], range_m, "region.u") / range_m;
    request.step = length_m(reg["step"], range_m, "region.step") / range_m;
    if (!(request.step > 0))
      throw validation_error("region.step must be positive");
    if (reg.contains("bbox")) {
      const json& box = reg["bbox"];
      if (!box.is_array() || box.size() != 2)
        throw validation_error("region.bbox must be [[x,y],[x,y]]");
      const Point lo = point_m(box[0], range_m, "region.bbox") / range_m;
      const Point hi = point_m(box[1], range_m, "region.bbox") / range_m;
      if (!(lo.x() < hi.x() && lo.y() < hi.y()))
        throw validation_error("region.bbox must have positive extent");
      Eigen::AlignedBox2d bbox;
      bbox.extend(lo);
      bbox.extend(hi);
      request.bbox = bbox;
    }
    scenario.region = request;
  }
  return scenario;
}

}  // namespace

double parse_length(const std::string& text, double range_m) {
  std::istringstream in(text);
  double value = 0;
  std::string unit, extra;
  if (!(in >> value >> unit) || (in >> extra))
    throw validation_error("length must look like \"VALUE UNIT\": " + text);
  if (!std::isfinite(value))
    throw validation_error("length value must be finite: " + text);
  if (unit == "m") return value;
  if (unit == "cm") return value * 0.01;
  if (unit == "mm") return value * 0.001;
  if (unit == "km") return value * 1000.0;
  if (unit == "R") {
    if (std::isnan(range_m))
      throw validation_error("the R unit is not allowed here: " + text);
    return value * range_m;
  }
  throw validation_error("unknown length unit \"" + unit + "\"");
}

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("scenario is not valid JSON: ") +
                           e.what());
  }
  return parse_document(doc);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open scenario file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw io_error("cannot read scenario file: " + path);
  return parse_scenario(buffer.str());
}

}  // namespace vmgame
