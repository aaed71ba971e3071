#include "vmgame/mixed_game.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "vmgame/adversary_region.hpp"
#include "vmgame/errors.hpp"
#include "vmgame/rng.hpp"

namespace vmgame {
namespace {

constexpr double kThird = 2 * std::numbers::pi / 3;
constexpr double kCoarseAlphaStep = 5e-3;  // lattice-scan quadrature
constexpr int kLatticeKeep = 16;           // seeds promoted to refinement

void check_inputs(const AdversaryMixedStrategy& adversary,
                  const VerifierMixedStrategy& verifier, double alpha_step) {
  if (!(verifier.edge > 0) || !std::isfinite(verifier.edge))
    throw validation_error("edge must be positive and finite");
  if (!(verifier.range > 0) || !std::isfinite(verifier.range))
    throw validation_error("range must be positive and finite");
  if (!std::isfinite(verifier.alpha))
    throw validation_error("orientation must be finite");
  if (!(adversary.rho_u >= 0) || !(adversary.rho_p >= 0) ||
      !std::isfinite(adversary.rho_u) || !std::isfinite(adversary.rho_p) ||
      !std::isfinite(adversary.delta_theta))
    throw validation_error("radii must be finite and >= 0");
  if (!(alpha_step > 0) || !std::isfinite(alpha_step))
    throw validation_error("integration step must be positive and finite");
}

Claim make_claim(const AdversaryMixedStrategy& adversary, double theta_u) {
  return {from_polar(PolarPoint{adversary.rho_u, 0.0}, Point(0, 0), theta_u),
          from_polar(PolarPoint{adversary.rho_p, adversary.delta_theta},
                     Point(0, 0), theta_u)};
}

// Placements at the midpoint quadrature nodes of [theta_u, theta_u + span).
std::vector<VerifierConfig> node_placements(const VerifierMixedStrategy& ver,
                                            double alpha_step, double theta_u,
                                            double span) {
  const int n = static_cast<int>(std::ceil(span / alpha_step));
  std::vector<VerifierConfig> configs;
  configs.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double alpha = theta_u + (k + 0.5) * span / n;
    configs.push_back(
        equilateral_verifiers(Point(0, 0), ver.edge, alpha, ver.range));
  }
  return configs;
}

double average_payoff(const std::vector<VerifierConfig>& configs,
                      const Claim& claim) {
  const double d =
      distance(claim.true_position, claim.fake_position);
  if (d == 0 || configs.empty()) return 0;
  long count = 0;
  for (const VerifierConfig& config : configs)
    count += is_plausible(config, claim) ? 1 : 0;
  return d * static_cast<double>(count) / static_cast<double>(configs.size());
}

struct Refined {
  AdversaryMixedStrategy strategy;
  double value = 0;
  bool converged = false;
};

// Coordinate pattern search over (rho_u, rho_p, delta_theta) with first
// improvement and joint step halving; all evaluations share the precomputed
// node placements.
Refined refine(const std::vector<VerifierConfig>& configs,
               const VerifierMixedStrategy& ver,
               AdversaryMixedStrategy params, const OptimizerSettings& s) {
  constexpr double pi = std::numbers::pi;
  std::array<double, 3> steps = {0.04 * ver.range, 0.04 * ver.range, 0.1};
  const double tol_rho = s.step_tolerance * ver.range;
  const double tol_theta = s.step_tolerance;

  auto get = [](AdversaryMixedStrategy& p, int k) -> double& {
    return k == 0 ? p.rho_u : (k == 1 ? p.rho_p : p.delta_theta);
  };
  double value = average_payoff(configs, make_claim(params, 0.0));
  int it = 0;
  for (; it < s.max_iters &&
         (steps[0] > tol_rho || steps[2] > tol_theta);
       ++it) {
    bool improved = false;
    for (int k = 0; k < 3 && !improved; ++k) {
      for (double sign : {1.0, -1.0}) {
        AdversaryMixedStrategy cand = params;
        double& coord = get(cand, k);
        coord += sign * steps[static_cast<std::size_t>(k)];
        coord = k < 2 ? std::clamp(coord, 0.0, ver.range)
                      : std::clamp(coord, -pi, pi);
        if (coord == get(params, k)) continue;  // clamp ate the move
        const double v = average_payoff(configs, make_claim(cand, 0.0));
        if (v > value) {
          params = cand;
          value = v;
          improved = true;
          break;
        }
      }
    }
    if (!improved)
      for (double& step : steps) step /= 2;
  }
  return {params, value, steps[0] <= tol_rho && steps[2] <= tol_theta};
}

}  // namespace

double expected_utility(const AdversaryMixedStrategy& adversary,
                        const VerifierMixedStrategy& verifier,
                        double alpha_step, double theta_u) {
  check_inputs(adversary, verifier, alpha_step);
  if (!std::isfinite(theta_u))
    throw validation_error("theta_u must be finite");
  const Claim claim = make_claim(adversary, theta_u);
  if (verifier.density == AngleDensity::PointMass) {
    const VerifierConfig config = equilateral_verifiers(
        Point(0, 0), verifier.edge, verifier.alpha, verifier.range);
    return payoff(config, claim, UtilityCriterion::MaximumDeception);
  }
  return average_payoff(node_placements(verifier, alpha_step, theta_u, kThird),
                        claim);
}

bool symmetry_reduction_check(const AdversaryMixedStrategy& adversary,
                              const VerifierMixedStrategy& verifier,
                              double alpha_step) {
  check_inputs(adversary, verifier, alpha_step);
  if (verifier.density != AngleDensity::Uniform)
    throw validation_error("the reduction check needs the uniform density");
  const double third = expected_utility(adversary, verifier, alpha_step, 0.0);

  // Full-turn quadrature with exactly 3n nodes: each third samples congruent
  // placements, so the averages agree except for trigonometric rounding.
  const int n =
      static_cast<int>(std::ceil(kThird / alpha_step));
  const double full = average_payoff(
      node_placements(verifier, (2 * std::numbers::pi) / (3 * n), 0.0,
                      2 * std::numbers::pi),
      make_claim(adversary, 0.0));
  return std::abs(third - full) <= 1e-6 * verifier.range;
}

EquilibriumReport best_adversary_parameters(
    const VerifierMixedStrategy& verifier, const OptimizerSettings& settings,
    double alpha_step) {
  check_inputs(AdversaryMixedStrategy{}, verifier, alpha_step);
  if (settings.restarts < 1 || settings.max_iters < 1 ||
      !(settings.step_tolerance > 0))
    throw validation_error("optimizer settings must be positive");

  const bool point_mass = verifier.density == AngleDensity::PointMass;
  const std::vector<VerifierConfig> full =
      point_mass ? std::vector<VerifierConfig>{equilateral_verifiers(
                       Point(0, 0), verifier.edge, verifier.alpha,
                       verifier.range)}
                 : node_placements(verifier, alpha_step, 0.0, kThird);
  const std::vector<VerifierConfig> coarse =
      point_mass ? full
                 : node_placements(verifier,
                                   std::max(alpha_step, kCoarseAlphaStep), 0.0,
                                   kThird);

  // Deterministic lattice over radius midpoints and a delta_theta fan; the
  // payoff surface is discontinuous with a narrow global basin, so seeding
  // beats pure random restarts.
  std::vector<Refined> lattice;
  for (int iu = 0; iu < 25; ++iu)
    for (int ip = 0; ip < 25; ++ip)
      for (int id = -6; id <= 6; ++id) {
        AdversaryMixedStrategy params;
        params.rho_u = (0.02 + 0.04 * iu) * verifier.range;
        params.rho_p = (0.02 + 0.04 * ip) * verifier.range;
        params.delta_theta = 0.1 * id;
        const double v = average_payoff(coarse, make_claim(params, 0.0));
        lattice.push_back({params, v, false});
      }
  const std::size_t keep = std::min<std::size_t>(
      static_cast<std::size_t>(
          std::min(settings.restarts, kLatticeKeep)),
      lattice.size());
  std::partial_sort(lattice.begin(),
                    lattice.begin() + static_cast<std::ptrdiff_t>(keep),
                    lattice.end(), [](const Refined& a, const Refined& b) {
                      return a.value > b.value;
                    });

  std::vector<AdversaryMixedStrategy> seeds;
  for (std::size_t i = 0; i < keep; ++i)
    seeds.push_back(lattice[i].strategy);
  Rng rng(settings.seed);
  while (static_cast<int>(seeds.size()) < settings.restarts)
    seeds.push_back({rng.uniform(0, verifier.range),
                     rng.uniform(0, verifier.range),
                     rng.uniform(-std::numbers::pi, std::numbers::pi)});

  Refined best;
  bool have_best = false;
  for (const AdversaryMixedStrategy& seed : seeds) {
    const Refined r = refine(full, verifier, seed, settings);
    if (!have_best || r.value > best.value) {
      best = r;
      have_best = true;
    }
  }

  EquilibriumReport report;
  report.expected_utility = best.value;
  report.strategy = best.strategy;
  report.integration_step = alpha_step;
  report.converged = best.converged;
  return report;
}

}  // namespace vmgame
