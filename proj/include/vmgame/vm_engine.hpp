#pragma once

#include <Eigen/Dense>

#include <utility>

#include "vmgame/geometry.hpp"

namespace vmgame {

// One non-negative distance bound per verifier (upper bounds: an adversary can
// enlarge a bound by delaying replies but can never shrink one).
using DistanceBounds = Eigen::VectorXd;

enum class Outcome { Robust, Malicious, Unknown };
const char* to_string(Outcome outcome);

struct Estimate {
  Point position{0, 0};
  double residual = 0;  // sum of squared bound errors at `position`
  int iterations = 0;
  bool converged = true;
};

// Distance from a round-trip time: speed * tau / 2.
double derive_bound(double tau, double signal_speed);

// Sum over verifiers of (bound_i - dist(p, V_i))^2.
double residual_sum(const VerifierConfig& config, const DistanceBounds& bounds,
                    const Point& p);

// Least-squares position fit: grid-seeded damped Gauss-Newton, deterministic.
// `converged` is false when 200 iterations pass without the step dropping
// below 1e-12 * range.
Estimate estimate_position(const VerifierConfig& config,
                           const DistanceBounds& bounds);

// Two incremental tests on the fitted position: Malicious when any bound
// disagrees with the fit by more than delta; otherwise Robust when the fit
// lies inside at least one (non-degenerate) verification triangle; otherwise
// Unknown.
std::pair<Outcome, Estimate> classify(const VerifierConfig& config,
                                      const DistanceBounds& bounds,
                                      double delta);

}  // namespace vmgame
