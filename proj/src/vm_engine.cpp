#include "vmgame/vm_engine.hpp"

#include <cmath>

namespace vmgame {
namespace {

constexpr int kMaxIterations = 200;
constexpr double kStepTolFactor = 1e-12;  // of the range
constexpr int kSeedGridSide = 33;

void check_bounds(const VerifierConfig& config, const DistanceBounds& bounds) {
  if (bounds.size() != static_cast<Eigen::Index>(config.size()))
    throw validation_error("one distance bound per verifier required");
  for (Eigen::Index i = 0; i < bounds.size(); ++i)
    if (!(bounds[i] >= 0) || !std::isfinite(bounds[i]))
      throw validation_error("distance bounds must be finite and >= 0");
}

}  // namespace

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Robust: return "Robust";
    case Outcome::Malicious: return "Malicious";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

double derive_bound(double tau, double signal_speed) {
  if (!(tau >= 0)) throw validation_error("round-trip time must be >= 0");
  if (!(signal_speed > 0))
    throw validation_error("signal speed must be positive");
  return signal_speed * tau / 2.0;
}

double residual_sum(const VerifierConfig& config, const DistanceBounds& bounds,
                    const Point& p) {
  double sum = 0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    const double r = bounds[static_cast<Eigen::Index>(i)] -
                     distance(p, config.verifiers[i]);
    sum += r * r;
  }
  return sum;
}

Estimate estimate_position(const VerifierConfig& config,
                           const DistanceBounds& bounds) {
  check_bounds(config, bounds);
  const double range = config.range;

  // Seed: best cell of a coarse grid over the verifier bbox inflated by R.
  // The residual surface is non-convex; a grid seed keeps the fit
  // deterministic and off spurious local minima.
  Eigen::AlignedBox2d box;
  for (const Point& v : config.verifiers) box.extend(v);
  box.extend(box.min() - Point(range, range));
  box.extend(box.max() + Point(range, range));
  Point x = box.center();
  double best = residual_sum(config, bounds, x);
  for (int iy = 0; iy < kSeedGridSide; ++iy) {
    for (int ix = 0; ix < kSeedGridSide; ++ix) {
      const Point cand(
          box.min().x() + box.sizes().x() * (ix + 0.5) / kSeedGridSide,
          box.min().y() + box.sizes().y() * (iy + 0.5) / kSeedGridSide);
      const double e = residual_sum(config, bounds, cand);
      if (e < best) {
        best = e;
        x = cand;
      }
    }
  }

  // Algebraic seed: subtracting verifier 0's circle equation from each other
  // one linearizes the system, and the least-squares solution of that linear
  // system is exact for consistent bounds. Near-collinear placements give the
  // residual surface a second, mirror-image basin that a coarse grid can
  // confuse with the true one; this seed lands in the right basin directly.
  {
    const auto rows = static_cast<Eigen::Index>(config.size()) - 1;
    Eigen::MatrixXd a(rows, 2);
    Eigen::VectorXd rhs(rows);
    const Point& v0 = config.verifiers[0];
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Point& vi = config.verifiers[static_cast<std::size_t>(i) + 1];
      a.row(i) = 2 * (vi - v0).transpose();
      rhs[i] = bounds[0] * bounds[0] - bounds[i + 1] * bounds[i + 1] +
               vi.squaredNorm() - v0.squaredNorm();
    }
    const Point cand = a.colPivHouseholderQr().solve(rhs);
    if (cand.allFinite()) {
      const double e = residual_sum(config, bounds, cand);
      if (e < best) {
        best = e;
        x = cand;
      }
    }
  }

  // Damped Gauss-Newton with step halving.
  Estimate out;
  out.converged = false;
  const int n = static_cast<int>(config.size());
  int it = 0;
  for (; it < kMaxIterations; ++it) {
    Eigen::MatrixXd jac(n, 2);
    Eigen::VectorXd res(n);
    for (int i = 0; i < n; ++i) {
      Point d = x - config.verifiers[static_cast<std::size_t>(i)];
      double dist = d.norm();
      if (dist < 1e-30 * range) {  // residual gradient undefined at a verifier
        d = Point(1, 0);
        dist = 1;
      }
      res[i] = bounds[i] - dist;
      jac.row(i) = -d.transpose() / dist;
    }
    Eigen::Matrix2d jtj = jac.transpose() * jac;
    jtj.diagonal().array() += 1e-14 * jtj.trace() + 1e-300;
    const Eigen::Vector2d step = jtj.ldlt().solve(-jac.transpose() * res);

    double t = 1.0;
    const double e0 = residual_sum(config, bounds, x);
    Point next = x + t * step;
    while (residual_sum(config, bounds, next) > e0 && t > 0x1p-30) {
      t /= 2;
      next = x + t * step;
    }
    if (residual_sum(config, bounds, next) > e0) {
      out.converged = true;  // no descent direction left: local minimum
      break;
    }
    x = next;
    if (t * step.norm() < kStepTolFactor * range) {
      out.converged = true;
      ++it;
      break;
    }
  }
  out.position = x;
  out.residual = residual_sum(config, bounds, x);
  out.iterations = it;
  return out;
}

std::pair<Outcome, Estimate> classify(const VerifierConfig& config,
                                      const DistanceBounds& bounds,
                                      double delta) {
  if (!(delta >= 0)) throw validation_error("delta must be >= 0");
  check_bounds(config, bounds);
  const Estimate est = estimate_position(config, bounds);

  for (std::size_t i = 0; i < config.size(); ++i) {
    const double err = std::abs(bounds[static_cast<Eigen::Index>(i)] -
                                distance(est.position, config.verifiers[i]));
    if (err > delta) return {Outcome::Malicious, est};
  }

  // Robust only inside some verification triangle; collinear triplets are
  // skipped rather than rejected.
  const std::size_t n = config.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point &a = config.verifiers[i], &b = config.verifiers[j],
                    &c = config.verifiers[k];
        if (Triangle::degenerate(a, b, c)) continue;
        if (point_in_triangle(est.position, Triangle(a, b, c),
                              kBoundaryTol * config.range))
          return {Outcome::Robust, est};
      }
  return {Outcome::Unknown, est};
}

}  // namespace vmgame
