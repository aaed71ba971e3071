#pragma once

#include <cstdint>

#include "vmgame/adversary_region.hpp"
#include "vmgame/geometry.hpp"

namespace vmgame {

struct OptimizerSettings {
  int restarts = 64;
  int max_iters = 500;
  double step_tolerance = 1e-6;  // in units of the range
  std::uint64_t seed = 42;
};

// Best claim found for a fixed 3-verifier placement. Polar coordinates use
// the triangle's orthocenter as pole and the direction toward verifier 0 as
// zero angle; for an equilateral placement the solution is additionally
// folded into the symmetry sector theta_u in [0, pi/3] (rotations by 2pi/3
// and the reflection fixing that sector are isometries of the placement, so
// the payoff is unchanged).
struct MaxminSolution {
  PolarPoint u_polar;  // true position
  PolarPoint p_polar;  // fake position
  double value = 0;    // dist(true, fake); 0 when nothing plausible exists
  Claim claim;         // same solution in Cartesian coordinates
  bool converged = false;
};

// A concrete claim with strictly positive payoff under MaximumDeception,
// built for any valid 3-verifier placement (pairwise within range,
// non-collinear): the true position sits on the foot of a triangle altitude
// and the fake position a controlled distance beyond it, outside the
// triangle with every plausibility constraint strict. Throws
// validation_error when the placement is invalid, convergence_error in the
// (unreached in practice) case that every fallback candidate fails.
Claim positive_deception_claim(const VerifierConfig& config);

// Adversary's best deception against a fixed placement: multi-start pattern
// ascent on (true, fake) in R^4, maximizing dist subject to plausibility.
// Deterministic for a fixed seed. converged is false when no plausible
// starting claim was found (empty region) or the best restart exhausted its
// iteration budget before the step shrank below tolerance.
MaxminSolution max_deception(const VerifierConfig& config,
                             const OptimizerSettings& settings = {});

// The verifier's counter-move once a claim is fixed: an equilateral
// placement of edge `range` centered on the claim's true position. The true
// position then coincides with the orthocenter, where the plausible region
// is empty, so the claim's payoff drops to zero.
VerifierConfig verifier_best_response(const Claim& claim, double range);

// True when the adversary improves on honesty against `config` (value > 0)
// yet the verifier's counter-placement nullifies that very claim — i.e. each
// side profits from moving after the other, so no pure-strategy saddle point
// exists. Throws convergence_error when max_deception fails to converge.
bool no_pure_equilibrium_check(const VerifierConfig& config,
                               const OptimizerSettings& settings = {});

}  // namespace vmgame
