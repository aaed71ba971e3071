#include "vmgame/discrete_game.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "vmgame/errors.hpp"
#include "vmgame/simplex.hpp"

namespace vmgame {

GridSpec::GridSpec(double side, int points_per_edge)
    : side(side), points_per_edge(points_per_edge) {
  if (!(side > 0) || !std::isfinite(side))
    throw validation_error("grid side must be positive and finite");
  if (points_per_edge < 2)
    throw validation_error("grid needs at least 2 points per edge");
}

Point GridSpec::point(std::int64_t index) const {
  const std::int64_t ix = index % points_per_edge;
  const std::int64_t iy = index / points_per_edge;
  return Point(static_cast<double>(ix) * step(),
               static_cast<double>(iy) * step());
}

ActionSets enumerate_actions(const GridSpec& grid, double range) {
  if (!(range > 0) || !std::isfinite(range))
    throw validation_error("range must be positive and finite");
  ActionSets sets;
  const std::int64_t m = grid.point_count();
  sets.points.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) sets.points.push_back(grid.point(i));

  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = i + 1; j < m; ++j) {
      if (distance(sets.points[static_cast<std::size_t>(i)],
                   sets.points[static_cast<std::size_t>(j)]) > range)
        continue;
      for (std::int64_t k = j + 1; k < m; ++k) {
        const Point &a = sets.points[static_cast<std::size_t>(i)],
                    &b = sets.points[static_cast<std::size_t>(j)],
                    &c = sets.points[static_cast<std::size_t>(k)];
        if (distance(a, c) > range || distance(b, c) > range) continue;
        if (Triangle::degenerate(a, b, c)) continue;
        sets.verifier_triples.push_back({i, j, k});
      }
    }

  for (std::int64_t u = 0; u < m; ++u)
    for (std::int64_t p = 0; p < m; ++p)
      if (u != p) sets.adversary_pairs.push_back({u, p});
  return sets;
}

PayoffMatrix build_matrix(const GridSpec& grid, double range,
                          UtilityCriterion criterion, double raster_step) {
  PayoffMatrix matrix;
  matrix.actions = enumerate_actions(grid, range);
  matrix.range = range;
  const auto& acts = matrix.actions;
  if (acts.verifier_triples.empty())
    throw validation_error("no verifier action fits the grid and range");
  if (acts.adversary_pairs.empty())
    throw validation_error("no adversary action on this grid");

  matrix.entries.resize(
      static_cast<Eigen::Index>(acts.adversary_pairs.size()),
      static_cast<Eigen::Index>(acts.verifier_triples.size()));
  for (Eigen::Index col = 0; col < matrix.entries.cols(); ++col) {
    const auto& t = acts.verifier_triples[static_cast<std::size_t>(col)];
    const VerifierConfig config(
        {acts.points[static_cast<std::size_t>(t[0])],
         acts.points[static_cast<std::size_t>(t[1])],
         acts.points[static_cast<std::size_t>(t[2])]},
        range);
    for (Eigen::Index row = 0; row < matrix.entries.rows(); ++row) {
      const auto& pair = acts.adversary_pairs[static_cast<std::size_t>(row)];
      const Claim claim{acts.points[static_cast<std::size_t>(pair[0])],
                        acts.points[static_cast<std::size_t>(pair[1])]};
      matrix.entries(row, col) = payoff(config, claim, criterion, raster_step);
    }
  }
  return matrix;
}

MinmaxResult solve_minmax(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() < 1 || matrix.cols() < 1)
    throw validation_error("minmax needs a non-empty matrix");
  if (!matrix.allFinite())
    throw validation_error("minmax matrix must be finite");
  const Eigen::Index na = matrix.rows(), nv = matrix.cols();

  // Shift so every entry is >= 0: then x >= 0 is valid for the value
  // variable u in min u s.t. M p <= u 1, sum p = 1.
  const double lowest = matrix.minCoeff();
  const double shift = lowest < 0 ? 1.0 - lowest : 0.0;

  Eigen::VectorXd c = Eigen::VectorXd::Zero(nv + 1);
  c[nv] = 1;
  Eigen::MatrixXd a_ub(na, nv + 1);
  a_ub.leftCols(nv) = matrix.array() + shift;
  a_ub.col(nv).setConstant(-1);
  const Eigen::VectorXd b_ub = Eigen::VectorXd::Zero(na);
  Eigen::MatrixXd a_eq = Eigen::MatrixXd::Ones(1, nv + 1);
  a_eq(0, nv) = 0;
  const Eigen::VectorXd b_eq = Eigen::VectorXd::Ones(1);

  const LpResult<double> lp = solve_lp<double>(c, a_ub, b_ub, a_eq, b_eq);
  if (!lp.feasible || !lp.bounded)
    throw convergence_error("minmax lp did not solve");  // cannot happen for
                                                         // finite matrices
  MinmaxResult result;
  result.value = lp.objective - shift;
  result.verifier_mixed = lp.x.head(nv);
  result.pivots = lp.pivots;
  return result;
}

MinmaxResult solve_minmax(const PayoffMatrix& matrix) {
  return solve_minmax(matrix.entries);
}

double maxmin_value(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() < 1 || matrix.cols() < 1)
    throw validation_error("maxmin needs a non-empty matrix");
  if (!matrix.allFinite())
    throw validation_error("maxmin matrix must be finite");
  const Eigen::Index na = matrix.rows(), nv = matrix.cols();
  const double lowest = matrix.minCoeff();
  const double shift = lowest < 0 ? 1.0 - lowest : 0.0;

  // max w s.t. M^T q >= w 1, sum q = 1  ==  min -w s.t. -M^T q + w <= 0.
  Eigen::VectorXd c = Eigen::VectorXd::Zero(na + 1);
  c[na] = -1;
  Eigen::MatrixXd a_ub(nv, na + 1);
  a_ub.leftCols(na) = -(matrix.array() + shift).matrix().transpose();
  a_ub.col(na).setConstant(1);
  const Eigen::VectorXd b_ub = Eigen::VectorXd::Zero(nv);
  Eigen::MatrixXd a_eq = Eigen::MatrixXd::Ones(1, na + 1);
  a_eq(0, na) = 0;
  const Eigen::VectorXd b_eq = Eigen::VectorXd::Ones(1);

  const LpResult<double> lp = solve_lp<double>(c, a_ub, b_ub, a_eq, b_eq);
  if (!lp.feasible || !lp.bounded)
    throw convergence_error("maxmin lp did not solve");
  return -lp.objective - shift;
}

ComplexityCounts complexity_report(const GridSpec& grid) {
  ComplexityCounts counts;
  counts.point_count = grid.point_count();
  const std::int64_t m = counts.point_count;
  counts.adversary_actions = m * (m - 1);
  counts.verifier_triples_bound = m * (m - 1) * (m - 2) / 6;
  counts.matrix_entries = counts.adversary_actions *
                          counts.verifier_triples_bound;
  return counts;
}

bool within_budget(const ComplexityCounts& counts, double budget) {
  return static_cast<double>(counts.matrix_entries) <= budget;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& matrix) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j) out << ',';
      out << matrix(i, j);
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw validation_error("matrix csv holds a non-numeric cell");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw validation_error("matrix csv rows have unequal width");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw validation_error("matrix csv is empty");
  Eigen::MatrixXd matrix(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  return matrix;
}

}  // namespace vmgame
