#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "vmgame/errors.hpp"

namespace vmgame {

template <typename Scalar>
struct LpResult {
  bool feasible = false;
  bool bounded = true;
  Scalar objective = Scalar(0);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;  // empty unless feasible
  int pivots = 0;
};

namespace lp_detail {

inline constexpr double kPivotTol = 1e-11;  // smallest usable pivot element

// Gauss-Jordan pivot on (row, col); `basis[row]` becomes `col`.
template <typename Scalar>
void pivot(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& tableau,
           std::vector<int>& basis, int row, int col) {
  tableau.row(row) /= tableau(row, col);
  for (Eigen::Index i = 0; i < tableau.rows(); ++i) {
    if (i == row) continue;
    const Scalar f = tableau(i, col);
    if (f != Scalar(0)) tableau.row(i) -= f * tableau.row(row);
  }
  basis[static_cast<std::size_t>(row)] = col;
}

// One simplex phase, minimizing cost^T over the current tableau with Bland's
// rule (entering: lowest-index column with reduced cost < -eps; leaving:
// minimum ratio, ties to the lowest basis index). Columns >= enterable_cols
// may never enter. Returns false when the phase detects an unbounded ray.
template <typename Scalar>
bool run_phase(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& tableau,
               std::vector<int>& basis,
               const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& cost,
               int enterable_cols, Scalar eps, int pivot_cap, int& pivots) {
  const int m = static_cast<int>(tableau.rows());
  const int rhs = static_cast<int>(tableau.cols()) - 1;
  for (;;) {
    int entering = -1;
    for (int j = 0; j < enterable_cols && entering < 0; ++j) {
      Scalar r = cost[j];
      for (int i = 0; i < m; ++i)
        r -= cost[basis[static_cast<std::size_t>(i)]] * tableau(i, j);
      if (r < -eps) entering = j;
    }
    if (entering < 0) return true;

    int leaving = -1;
    Scalar best = Scalar(0);
    for (int i = 0; i < m; ++i) {
      if (!(tableau(i, entering) > Scalar(kPivotTol))) continue;
      const Scalar ratio = tableau(i, rhs) / tableau(i, entering);
      const Scalar tie = Scalar(1e-12) * (Scalar(1) + std::abs(best));
      if (leaving < 0 || ratio < best - tie) {
        leaving = i;
        best = ratio;
      } else if (ratio <= best + tie &&
                 basis[static_cast<std::size_t>(i)] <
                     basis[static_cast<std::size_t>(leaving)]) {
        leaving = i;
      }
    }
    if (leaving < 0) return false;

    if (++pivots > pivot_cap)
      throw convergence_error("simplex exceeded its pivot budget");
    pivot(tableau, basis, leaving, entering);
  }
}

}  // namespace lp_detail

// Two-phase primal simplex for
//     minimize c^T x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
// Either constraint block may have zero rows. Bland's rule everywhere, so
// the method terminates without anti-cycling perturbations; the pivot cap is
// a safety net that throws convergence_error.
template <typename Scalar>
LpResult<Scalar> solve_lp(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& c,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A_ub,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b_ub,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A_eq,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b_eq,
    Scalar eps = Scalar(1e-9)) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  const int n = static_cast<int>(c.size());
  const int m_ub = static_cast<int>(A_ub.rows());
  const int m_eq = static_cast<int>(A_eq.rows());
  if (n < 1) throw validation_error("lp needs at least one variable");
  if ((m_ub > 0 && A_ub.cols() != n) || (m_eq > 0 && A_eq.cols() != n))
    throw validation_error("lp constraint width must match the cost size");
  if (b_ub.size() != m_ub || b_eq.size() != m_eq)
    throw validation_error("lp right-hand sides must match constraint rows");
  if (!c.allFinite() || !b_ub.allFinite() || !b_eq.allFinite() ||
      (m_ub > 0 && !A_ub.allFinite()) || (m_eq > 0 && !A_eq.allFinite()))
    throw validation_error("lp data must be finite");

  const int m = m_ub + m_eq;
  // A slack starts basic in every <= row whose rhs is non-negative; flipped
  // <= rows and all = rows get an artificial instead.
  std::vector<int> art_of_row(static_cast<std::size_t>(m), -1);
  int n_art = 0;
  for (int i = 0; i < m_ub; ++i)
    if (b_ub[i] < Scalar(0)) art_of_row[static_cast<std::size_t>(i)] = n_art++;
  for (int i = m_ub; i < m; ++i)
    art_of_row[static_cast<std::size_t>(i)] = n_art++;

  const int base_cols = n + m_ub;
  const int rhs = base_cols + n_art;
  Mat tableau = Mat::Zero(m, rhs + 1);
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const bool flip = (i < m_ub ? b_ub[i] : b_eq[i - m_ub]) < Scalar(0);
    const Scalar sign = flip ? Scalar(-1) : Scalar(1);
    if (i < m_ub) {
      tableau.row(i).head(n) = sign * A_ub.row(i);
      tableau(i, n + i) = sign;
      tableau(i, rhs) = sign * b_ub[i];
    } else {
      tableau.row(i).head(n) = sign * A_eq.row(i - m_ub);
      tableau(i, rhs) = sign * b_eq[i - m_ub];
    }
    const int art = art_of_row[static_cast<std::size_t>(i)];
    if (art >= 0) {
      tableau(i, base_cols + art) = Scalar(1);
      basis[static_cast<std::size_t>(i)] = base_cols + art;
    } else {
      basis[static_cast<std::size_t>(i)] = n + i;
    }
  }

  LpResult<Scalar> result;
  const int pivot_cap = 2000 + 20 * (m + rhs);

  if (n_art > 0) {
    Vec cost1 = Vec::Zero(rhs);
    cost1.tail(n_art).setOnes();
    // Artificials may only leave, never re-enter, hence enterable=base_cols.
    lp_detail::run_phase(tableau, basis, cost1, base_cols, eps, pivot_cap,
                         result.pivots);
    Scalar infeas = Scalar(0);
    for (int i = 0; i < m; ++i)
      if (basis[static_cast<std::size_t>(i)] >= base_cols)
        infeas += tableau(i, rhs);
    if (infeas > eps) return result;  // feasible == false

    // Pivot leftover zero-level artificials out; a row offering no pivot is
    // redundant (0 = 0) and is dropped.
    std::vector<int> keep;
    for (int i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] < base_cols) {
        keep.push_back(i);
        continue;
      }
      int col = -1;
      for (int j = 0; j < base_cols && col < 0; ++j)
        if (std::abs(tableau(i, j)) > Scalar(lp_detail::kPivotTol)) col = j;
      if (col >= 0) {
        lp_detail::pivot(tableau, basis, i, col);
        keep.push_back(i);
      }
    }
    if (static_cast<int>(keep.size()) < m) {
      Mat compact(static_cast<Eigen::Index>(keep.size()), tableau.cols());
      std::vector<int> cbasis;
      for (std::size_t r = 0; r < keep.size(); ++r) {
        compact.row(static_cast<Eigen::Index>(r)) =
            tableau.row(keep[r]);
        cbasis.push_back(basis[static_cast<std::size_t>(keep[r])]);
      }
      tableau = std::move(compact);
      basis = std::move(cbasis);
    }
  }

  // Phase 2 over structural + slack columns only; the artificial columns are
  // dead (never enterable, never basic again).
  Vec cost2 = Vec::Zero(rhs);
  cost2.head(n) = c;
  result.feasible = true;
  result.bounded = lp_detail::run_phase(tableau, basis, cost2, base_cols, eps,
                                        pivot_cap, result.pivots);
  if (!result.bounded) return result;

  result.x = Vec::Zero(n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] < n)
      result.x[basis[i]] = tableau(static_cast<Eigen::Index>(i),
                                   tableau.cols() - 1);
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace vmgame
