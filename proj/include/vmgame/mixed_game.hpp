#pragma once

#include "vmgame/geometry.hpp"
#include "vmgame/pure_game.hpp"

namespace vmgame {

// Distribution over the verifier's one free parameter: the orientation of an
// equilateral placement spun about its center (the claim pole). By symmetry
// the orientation lives on [0, 2pi/3).
enum class AngleDensity { Uniform, PointMass };

struct VerifierMixedStrategy {
  double edge = 1;
  double range = 1;
  AngleDensity density = AngleDensity::Uniform;
  double alpha = 0;  // the orientation, PointMass only
};

// The adversary commits to a claim shape relative to the placement center:
// true position at radius rho_u, fake position at radius rho_p rotated by
// delta_theta. The absolute direction theta_u is payoff-irrelevant against a
// spinning verifier (see symmetry_reduction_check).
struct AdversaryMixedStrategy {
  double rho_u = 0;
  double rho_p = 0;
  double delta_theta = 0;
};

struct EquilibriumReport {
  double expected_utility = 0;
  AdversaryMixedStrategy strategy;
  double integration_step = 0;  // radians
  bool converged = false;
};

// Expected MaximumDeception payoff of the claim against the orientation
// distribution: midpoint quadrature with ceil((2pi/3) / alpha_step) nodes
// anchored at theta_u, so the result is exactly invariant (to rounding) in
// theta_u. PointMass evaluates the single orientation instead.
double expected_utility(const AdversaryMixedStrategy& adversary,
                        const VerifierMixedStrategy& verifier,
                        double alpha_step = 1e-3, double theta_u = 0);

// Confirms the third-circle reduction: integrating the orientation over
// [0, 2pi) with 3n nodes matches the n-node [0, 2pi/3) quadrature within
// 1e-6 * range (the placement repeats exactly with period 2pi/3).
bool symmetry_reduction_check(const AdversaryMixedStrategy& adversary,
                              const VerifierMixedStrategy& verifier,
                              double alpha_step = 1e-3);

// Maximizes expected_utility over (rho_u, rho_p, delta_theta): deterministic
// coarse lattice scan (radius midpoints x delta_theta fan) at a coarsened
// quadrature, best seeds plus seeded random starts refined by pattern search
// at full quadrature resolution. Deterministic for a fixed seed.
EquilibriumReport best_adversary_parameters(
    const VerifierMixedStrategy& verifier,
    const OptimizerSettings& settings = {}, double alpha_step = 1e-3);

}  // namespace vmgame
