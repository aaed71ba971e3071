#pragma once

#include <Eigen/Dense>

#include <iosfwd>

#include "vmgame/geometry.hpp"

namespace vmgame {

// An adversary's move: its actual location and the location it claims.
struct Claim {
  Point true_position{0, 0};
  Point fake_position{0, 0};
};

// How the verifier side scores a successful deception.
enum class UtilityCriterion {
  MaximumDeception,  // distance between true and fake position
  DeceptionArea,     // area of all plausible fake positions
  DeceptionShape,    // connected-component count of that region
};
const char* to_string(UtilityCriterion criterion);

// A fake position P is plausible for a true position U when, for every
// verifier V_i (all strict):
//   dist(P, V_i) < range        the forged bound stays in range,
//   dist(P, V_i) > dist(U, V_i) bounds can only be enlarged, and
//   dist(U, V_i) < range        U itself must be in range to answer,
// and P lies outside every (non-degenerate) verification triangle; the
// triangle test is closed with tolerance kBoundaryTol * range, so fake
// positions on a triangle boundary are implausible.
bool is_plausible(const VerifierConfig& config, const Claim& claim);

// Axis-aligned bounding box of the intersection of the verifiers' range
// disks: x in [max_i x_i - R, min_i x_i + R], same for y. May be empty.
Eigen::AlignedBox2d range_lens_bbox(const VerifierConfig& config);

// Boolean mask of plausible fake positions on a cell grid. cells(iy, ix) is
// the sample at the center of cell (ix, iy); x grows with ix, y with iy.
struct RegionRaster {
  double grid_step = 0;
  Point origin{0, 0};  // lower-left corner of cell (0, 0)
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> cells;  // (ny, nx)

  Eigen::Index nx() const { return cells.cols(); }
  Eigen::Index ny() const { return cells.rows(); }
  Point cell_center(Eigen::Index ix, Eigen::Index iy) const {
    return origin + Point((ix + 0.5) * grid_step, (iy + 0.5) * grid_step);
  }
  Eigen::Index true_count() const { return cells.count(); }
};

// Samples is_plausible at cell centers covering `bbox` (cell counts rounded
// up, so the grid may overhang the box edges). Throws validation_error when
// the box is empty or the step exceeds the box extent.
RegionRaster rasterize_region(const VerifierConfig& config,
                              const Point& true_position,
                              const Eigen::AlignedBox2d& bbox,
                              double grid_step);

// Number of 4-connected components of true cells.
int count_components(const RegionRaster& raster);

// Adversary utility for one claim under the chosen criterion. Area and shape
// rasterize the plausible region over range_lens_bbox(config); raster_step 0
// selects the default range / 100.
double payoff(const VerifierConfig& config, const Claim& claim,
              UtilityCriterion criterion, double raster_step = 0);

// CSV dump, header "x,y,plausible", one row per cell, y ascending then x.
void write_region_csv(std::ostream& out, const RegionRaster& raster);

}  // namespace vmgame
