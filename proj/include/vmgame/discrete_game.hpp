#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vmgame/adversary_region.hpp"
#include "vmgame/geometry.hpp"

namespace vmgame {

// Square lattice spanning [0, side]^2 with points_per_edge points per axis,
// endpoints included. Point index = iy * points_per_edge + ix (x fastest).
struct GridSpec {
  double side = 1;
  int points_per_edge = 3;

  GridSpec(double side, int points_per_edge);
  double step() const { return side / (points_per_edge - 1); }
  std::int64_t point_count() const {
    return static_cast<std::int64_t>(points_per_edge) * points_per_edge;
  }
  Point point(std::int64_t index) const;
};

// Pure strategies of the finite game restricted to the grid:
//  - the verifier picks 3 distinct grid points, pairwise within range and
//    not collinear (indices i < j < k);
//  - the adversary picks an ordered (true, fake) pair of distinct points.
struct ActionSets {
  std::vector<Point> points;
  std::vector<std::array<std::int64_t, 3>> verifier_triples;
  std::vector<std::array<std::int64_t, 2>> adversary_pairs;
};

ActionSets enumerate_actions(const GridSpec& grid, double range);

struct PayoffMatrix {
  Eigen::MatrixXd entries;  // rows = adversary pairs, cols = verifier triples
  ActionSets actions;
  double range = 0;
};

// Entry (a, v) = adversary payoff when the verifiers sit on triple v and the
// adversary plays pair a. Throws validation_error when either side has no
// action. raster_step 0 selects the payoff() default for the area and shape
// criteria; MaximumDeception ignores it.
PayoffMatrix build_matrix(
    const GridSpec& grid, double range,
    UtilityCriterion criterion = UtilityCriterion::MaximumDeception,
    double raster_step = 0);

struct MinmaxResult {
  double value = 0;
  Eigen::VectorXd verifier_mixed;  // distribution over columns
  int pivots = 0;
};

// Value and an optimal verifier mixed strategy of the zero-sum matrix game:
// min over column distributions p of max over rows of (M p). Exact LP solve
// (two-phase simplex, Bland's rule), deterministic.
MinmaxResult solve_minmax(const Eigen::MatrixXd& matrix);
MinmaxResult solve_minmax(const PayoffMatrix& matrix);

// Adversary side of the same game: max over row distributions q of min over
// columns of (q^T M). Equals solve_minmax().value by LP duality.
double maxmin_value(const Eigen::MatrixXd& matrix);

// Action-space sizes implied by a grid, computed without enumerating:
// adversary pairs m(m-1) and the C(m,3) upper bound on verifier triples.
struct ComplexityCounts {
  std::int64_t point_count = 0;
  std::int64_t adversary_actions = 0;
  std::int64_t verifier_triples_bound = 0;
  std::int64_t matrix_entries = 0;
};

ComplexityCounts complexity_report(const GridSpec& grid);

inline constexpr double kDefaultMatrixBudget = 1e8;  // matrix entries

bool within_budget(const ComplexityCounts& counts,
                   double budget = kDefaultMatrixBudget);

// Dense CSV: one matrix row per line (row = adversary action id, column =
// verifier action id), full round-trip precision.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& matrix);
Eigen::MatrixXd read_matrix_csv(std::istream& in);

}  // namespace vmgame
