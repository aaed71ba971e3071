#include "vmgame/pure_game.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>

#include "vmgame/errors.hpp"
#include "vmgame/rng.hpp"

namespace vmgame {
namespace {

constexpr int kStartAttempts = 20000;  // rejection samples per restart
constexpr int kMaxHalvings = 30;       // feasibility bisection depth
// Sufficient-increase factor: a move must gain at least this times step^2
// (per range) to count, so microscopic creep along a curved constraint
// boundary cannot stall the step-halving convergence test.
constexpr double kForcing = 0.01;

void check_triangle_config(const VerifierConfig& config) {
  if (config.size() != 3)
    throw validation_error("exactly 3 verifiers required");
  if (Triangle::degenerate(config.verifiers[0], config.verifiers[1],
                           config.verifiers[2]))
    throw validation_error("verifiers must not be collinear");
}

void check_pairwise_in_range(const VerifierConfig& config) {
  // Relative slack absorbs rounding when an edge equals the range exactly.
  const double limit = config.range * (1 + 1e-12);
  const Point &a = config.verifiers[0], &b = config.verifiers[1],
              &c = config.verifiers[2];
  if (distance(a, b) > limit || distance(a, c) > limit ||
      distance(b, c) > limit)
    throw validation_error("verifiers must be pairwise within range");
}

bool feasible(const VerifierConfig& config, const Eigen::Vector4d& z) {
  return is_plausible(config,
                      {Point(z[0], z[1]), Point(z[2], z[3])});
}

double objective(const Eigen::Vector4d& z) {
  return (Point(z[0], z[1]) - Point(z[2], z[3])).norm();
}

struct RestartOutcome {
  bool found_start = false;
  bool converged = false;
  double value = 0;
  Eigen::Vector4d z = Eigen::Vector4d::Zero();
};

// Feasible-set pattern ascent: try axis moves and the joint gradient of the
// objective; an infeasible candidate is pulled back toward the current
// (feasible) iterate by halving until it re-enters the region. First
// sufficient improvement wins; the step halves when no candidate improves
// enough.
RestartOutcome run_restart(const VerifierConfig& config,
                           const Eigen::AlignedBox2d& bbox,
                           const OptimizerSettings& settings,
                           std::uint64_t restart_index) {
  RestartOutcome out;
  Rng rng(settings.seed + restart_index);
  for (int attempt = 0; attempt < kStartAttempts && !out.found_start;
       ++attempt) {
    out.z << rng.uniform(bbox.min().x(), bbox.max().x()),
        rng.uniform(bbox.min().y(), bbox.max().y()),
        rng.uniform(bbox.min().x(), bbox.max().x()),
        rng.uniform(bbox.min().y(), bbox.max().y());
    out.found_start = feasible(config, out.z);
  }
  if (!out.found_start) return out;

  const double tol = settings.step_tolerance * config.range;
  double step = 0.1 * config.range;
  out.value = objective(out.z);
  for (int it = 0; it < settings.max_iters && step > tol; ++it) {
    std::array<Eigen::Vector4d, 9> dirs;
    int n_dirs = 0;
    for (int k = 0; k < 4; ++k) {
      dirs[n_dirs] = Eigen::Vector4d::Zero();
      dirs[n_dirs][k] = 1;
      ++n_dirs;
      dirs[n_dirs] = Eigen::Vector4d::Zero();
      dirs[n_dirs][k] = -1;
      ++n_dirs;
    }
    const Point u(out.z[0], out.z[1]), p(out.z[2], out.z[3]);
    const double d = (u - p).norm();
    if (d > 0) {
      dirs[n_dirs] << (u - p) / d, (p - u) / d;
      dirs[n_dirs].normalize();
      ++n_dirs;
    }

    bool improved = false;
    for (int k = 0; k < n_dirs && !improved; ++k) {
      double t = 1;
      for (int h = 0; h <= kMaxHalvings; ++h, t /= 2) {
        const Eigen::Vector4d cand = out.z + (t * step) * dirs[k];
        if (!feasible(config, cand)) continue;
        const double v = objective(cand);
        if (v > out.value + kForcing * step * step / config.range) {
          out.z = cand;
          out.value = v;
          improved = true;
        }
        break;  // first feasible point along the direction decides
      }
    }
    if (!improved) step /= 2;
  }
  out.converged = step <= tol;
  return out;
}

// Fold an equilateral solution into theta_u in [0, pi/3] using the
// placement's own isometries (rotation by 2pi/3 about the center; reflection
// across the theta = pi/3 axis, which swaps verifiers 0 and 1).
void fold_symmetry(const VerifierConfig& config, const Point& pole,
                   double axis_theta, MaxminSolution& sol) {
  constexpr double third = 2 * std::numbers::pi / 3;
  PolarPoint u = sol.u_polar, p = sol.p_polar;
  const double turns = std::floor(u.theta / third);
  u.theta -= turns * third;
  p.theta = wrap_to_2pi(p.theta - turns * third);
  if (u.theta > third / 2) {
    u.theta = third - u.theta;
    p.theta = wrap_to_2pi(third - p.theta);
  }
  const Claim folded{from_polar(u, pole, axis_theta),
                     from_polar(p, pole, axis_theta)};
  if (!is_plausible(config, folded)) return;  // keep the raw solution
  sol.u_polar = u;
  sol.p_polar = p;
  sol.claim = folded;
  sol.value = distance(folded.true_position, folded.fake_position);
}

}  // namespace

Claim positive_deception_claim(const VerifierConfig& config) {
  check_triangle_config(config);
  check_pairwise_in_range(config);
  const double range = config.range;

  // Feet of the altitudes; walking away from vertex i beyond the opposite
  // edge keeps every verifier distance growing, so (foot, beyond-foot) makes
  // all plausibility inequalities strict while staying in range for t below
  // the per-vertex cap.
  struct Candidate {
    Point u, dir;  // unit direction away from the vertex
    double cap;
  };
  std::array<Candidate, 3> candidates;
  int n_cand = 0;
  for (int i = 0; i < 3; ++i) {
    const Point &vi = config.verifiers[static_cast<std::size_t>(i)],
                &vj = config.verifiers[static_cast<std::size_t>((i + 1) % 3)],
                &vk = config.verifiers[static_cast<std::size_t>((i + 2) % 3)];
    const Point e = vk - vj;
    const Point foot = vj + e * (e.dot(vi - vj) / e.squaredNorm());
    const double h = distance(vi, foot);
    if (h <= 0) continue;
    double cap = range - h;
    cap = std::min(cap, std::sqrt(std::max(
                            0.0, range * range - (vi - vj).squaredNorm() +
                                     h * h)));
    cap = std::min(cap, std::sqrt(std::max(
                            0.0, range * range - (vi - vk).squaredNorm() +
                                     h * h)));
    if (cap <= 0) continue;
    candidates[static_cast<std::size_t>(n_cand++)] = {foot, (foot - vi) / h,
                                                      cap};
  }
  for (int i = 1; i < n_cand; ++i)  // largest cap first
    if (candidates[static_cast<std::size_t>(i)].cap >
        candidates[0].cap)
      std::swap(candidates[0], candidates[static_cast<std::size_t>(i)]);

  for (int c = 0; c < n_cand; ++c) {
    const Candidate& cand = candidates[static_cast<std::size_t>(c)];
    for (double frac : {0.5, 0.25, 0.125}) {
      const Claim claim{cand.u, cand.u + (cand.cap * frac) * cand.dir};
      if (is_plausible(config, claim)) return claim;
    }
  }
  throw convergence_error("no strictly plausible claim found");
}

MaxminSolution max_deception(const VerifierConfig& config,
                             const OptimizerSettings& settings) {
  check_triangle_config(config);
  if (settings.restarts < 1 || settings.max_iters < 1 ||
      !(settings.step_tolerance > 0))
    throw validation_error("optimizer settings must be positive");

  const Eigen::AlignedBox2d bbox = range_lens_bbox(config);
  const Point pole = orthocenter(config);
  const double axis_theta =
      std::atan2(config.verifiers[0].y() - pole.y(),
                 config.verifiers[0].x() - pole.x());

  MaxminSolution sol;
  sol.claim = {pole, pole};
  if (bbox.isEmpty()) return sol;  // no claim can be in range at all

  bool have_best = false;
  RestartOutcome best;
  for (int r = 0; r < settings.restarts; ++r) {
    const RestartOutcome out =
        run_restart(config, bbox, settings, static_cast<std::uint64_t>(r));
    if (!out.found_start) continue;
    if (!have_best || out.value > best.value) {
      best = out;
      have_best = true;
    }
  }
  if (!have_best) return sol;  // converged=false: nothing plausible found

  sol.value = best.value;
  sol.converged = best.converged;
  sol.claim = {Point(best.z[0], best.z[1]), Point(best.z[2], best.z[3])};
  sol.u_polar = to_polar(sol.claim.true_position, pole, axis_theta);
  sol.p_polar = to_polar(sol.claim.fake_position, pole, axis_theta);
  if (is_equilateral(config)) fold_symmetry(config, pole, axis_theta, sol);
  return sol;
}

VerifierConfig verifier_best_response(const Claim& claim, double range) {
  if (!(range > 0) || !std::isfinite(range))
    throw validation_error("range must be positive and finite");
  return equilateral_verifiers(claim.true_position, range, 0.0, range);
}

bool no_pure_equilibrium_check(const VerifierConfig& config,
                               const OptimizerSettings& settings) {
  const MaxminSolution sol = max_deception(config, settings);
  if (!sol.converged)
    throw convergence_error("max_deception did not converge");
  const VerifierConfig response =
      verifier_best_response(sol.claim, config.range);
  return sol.value > 0 &&
         payoff(response, sol.claim, UtilityCriterion::MaximumDeception) == 0;
}

}  // namespace vmgame
