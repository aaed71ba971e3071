#include "vmgame/adversary_region.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <vector>

#include "vmgame/errors.hpp"

namespace vmgame {
namespace {

constexpr double kDefaultRasterDivisor = 100;  // default step = range / 100

void for_each_triangle(const VerifierConfig& config, auto&& fn) {
  const std::size_t n = config.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point &a = config.verifiers[i], &b = config.verifiers[j],
                    &c = config.verifiers[k];
        if (Triangle::degenerate(a, b, c)) continue;
        fn(Triangle(a, b, c));
      }
}

}  // namespace

const char* to_string(UtilityCriterion criterion) {
  switch (criterion) {
    case UtilityCriterion::MaximumDeception: return "maximum_deception";
    case UtilityCriterion::DeceptionArea: return "deception_area";
    case UtilityCriterion::DeceptionShape: return "deception_shape";
  }
  return "?";
}

bool is_plausible(const VerifierConfig& config, const Claim& claim) {
  const double range = config.range;
  for (const Point& v : config.verifiers) {
    const double du = distance(claim.true_position, v);
    const double dp = distance(claim.fake_position, v);
    if (!(dp < range)) return false;
    if (!(dp > du)) return false;
    if (!(du < range)) return false;
  }
  bool inside = false;
  for_each_triangle(config, [&](const Triangle& t) {
    if (!inside &&
        point_in_triangle(claim.fake_position, t, kBoundaryTol * range))
      inside = true;
  });
  return !inside;
}

Eigen::AlignedBox2d range_lens_bbox(const VerifierConfig& config) {
  double lo_x = -std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = std::numeric_limits<double>::infinity(), hi_y = hi_x;
  for (const Point& v : config.verifiers) {
    lo_x = std::max(lo_x, v.x() - config.range);
    hi_x = std::min(hi_x, v.x() + config.range);
    lo_y = std::max(lo_y, v.y() - config.range);
    hi_y = std::min(hi_y, v.y() + config.range);
  }
  Eigen::AlignedBox2d box;
  if (lo_x <= hi_x && lo_y <= hi_y) {
    box.extend(Point(lo_x, lo_y));
    box.extend(Point(hi_x, hi_y));
  }
  return box;  // default-constructed box is empty
}

RegionRaster rasterize_region(const VerifierConfig& config,
                              const Point& true_position,
                              const Eigen::AlignedBox2d& bbox,
                              double grid_step) {
  if (!(grid_step > 0) || !std::isfinite(grid_step))
    throw validation_error("grid step must be positive and finite");
  if (bbox.isEmpty()) throw validation_error("raster box is empty");
  const Point extent = bbox.sizes();
  if (grid_step > extent.x() || grid_step > extent.y())
    throw validation_error("grid step exceeds the raster box extent");

  RegionRaster raster;
  raster.grid_step = grid_step;
  raster.origin = bbox.min();
  const auto nx = static_cast<Eigen::Index>(std::ceil(extent.x() / grid_step));
  const auto ny = static_cast<Eigen::Index>(std::ceil(extent.y() / grid_step));
  raster.cells.resize(ny, nx);
  Claim claim{true_position, Point(0, 0)};
  for (Eigen::Index iy = 0; iy < ny; ++iy)
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
      claim.fake_position = raster.cell_center(ix, iy);
      raster.cells(iy, ix) = is_plausible(config, claim);
    }
  return raster;
}

int count_components(const RegionRaster& raster) {
  const Eigen::Index nx = raster.nx(), ny = raster.ny();
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> seen(ny, nx);
  seen.setConstant(false);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> stack;
  int components = 0;
  for (Eigen::Index sy = 0; sy < ny; ++sy)
    for (Eigen::Index sx = 0; sx < nx; ++sx) {
      if (!raster.cells(sy, sx) || seen(sy, sx)) continue;
      ++components;
      seen(sy, sx) = true;
      stack.push_back({sx, sy});
      while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        const Eigen::Index nbr[4][2] = {
            {x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
        for (const auto& p : nbr) {
          if (p[0] < 0 || p[0] >= nx || p[1] < 0 || p[1] >= ny) continue;
          if (!raster.cells(p[1], p[0]) || seen(p[1], p[0])) continue;
          seen(p[1], p[0]) = true;
          stack.push_back({p[0], p[1]});
        }
      }
    }
  return components;
}

double payoff(const VerifierConfig& config, const Claim& claim,
              UtilityCriterion criterion, double raster_step) {
  if (criterion == UtilityCriterion::MaximumDeception) {
    return is_plausible(config, claim)
               ? distance(claim.true_position, claim.fake_position)
               : 0.0;
  }
  if (raster_step == 0) raster_step = config.range / kDefaultRasterDivisor;
  if (!(raster_step > 0) || !std::isfinite(raster_step))
    throw validation_error("raster step must be positive and finite");
  const Eigen::AlignedBox2d box = range_lens_bbox(config);
  if (box.isEmpty()) return 0.0;
  const RegionRaster raster =
      rasterize_region(config, claim.true_position, box, raster_step);
  if (criterion == UtilityCriterion::DeceptionArea)
    return static_cast<double>(raster.true_count()) * raster_step *
           raster_step;
  return count_components(raster);
}

void write_region_csv(std::ostream& out, const RegionRaster& raster) {
  out << "x,y,plausible\n" << std::setprecision(12);
  for (Eigen::Index iy = 0; iy < raster.ny(); ++iy)
    for (Eigen::Index ix = 0; ix < raster.nx(); ++ix) {
      const Point c = raster.cell_center(ix, iy);
      out << c.x() << ',' << c.y() << ',' << (raster.cells(iy, ix) ? 1 : 0)
          << '\n';
    }
}

}  // namespace vmgame
