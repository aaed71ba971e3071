#include "vmgame/geometry.hpp"

#include <cmath>
#include <numbers>

namespace vmgame {

VerifierConfig::VerifierConfig(std::vector<Point> v, double r)
    : verifiers(std::move(v)), range(r) {
  if (verifiers.size() < 3)
    throw validation_error("verifier config needs at least 3 verifiers");
  if (!(range > 0)) throw validation_error("verifier range must be positive");
  for (const Point& p : verifiers)
    if (!p.allFinite())
      throw validation_error("verifier positions must be finite");
  for (std::size_t i = 0; i < verifiers.size(); ++i)
    for (std::size_t j = i + 1; j < verifiers.size(); ++j)
      if (verifiers[i] == verifiers[j])
        throw validation_error("verifier positions must be distinct");
}

VerifierConfig equilateral_verifiers(const Point& center, double edge,
                                     double alpha, double range) {
  if (!(edge > 0)) throw validation_error("edge must be positive");
  if (!(range > 0)) throw validation_error("range must be positive");
  if (!center.allFinite() || !std::isfinite(alpha))
    throw validation_error("center and alpha must be finite");
  const double circumradius = edge / std::sqrt(3.0);
  std::vector<Point> v;
  v.reserve(3);
  for (int k = 0; k < 3; ++k) {
    const double t = alpha + k * 2.0 * std::numbers::pi / 3.0;
    v.emplace_back(center.x() + circumradius * std::cos(t),
                   center.y() + circumradius * std::sin(t));
  }
  return VerifierConfig(std::move(v), range);
}

Point circumcenter(const Point& a, const Point& b, const Point& c) {
  if (Triangle::degenerate(a, b, c))
    throw validation_error("circumcenter of a degenerate triangle");
  // Perpendicular-bisector conditions: 2(b-a).x = |b|^2-|a|^2, same for c.
  Eigen::Matrix2d m;
  m.row(0) = 2.0 * (b - a).transpose();
  m.row(1) = 2.0 * (c - a).transpose();
  const Eigen::Vector2d rhs(b.squaredNorm() - a.squaredNorm(),
                            c.squaredNorm() - a.squaredNorm());
  return m.partialPivLu().solve(rhs);
}

Point orthocenter(const Point& a, const Point& b, const Point& c) {
  // Euler line: orthocenter = a + b + c - 2 * circumcenter.
  return a + b + c - 2.0 * circumcenter(a, b, c);
}

Point orthocenter(const VerifierConfig& config) {
  if (config.size() != 3)
    throw validation_error("orthocenter requires exactly 3 verifiers");
  return orthocenter(config.verifiers[0], config.verifiers[1],
                     config.verifiers[2]);
}

bool is_equilateral(const VerifierConfig& config, double rel_tol) {
  if (config.size() != 3) return false;
  const double e01 = distance(config.verifiers[0], config.verifiers[1]);
  const double e12 = distance(config.verifiers[1], config.verifiers[2]);
  const double e20 = distance(config.verifiers[2], config.verifiers[0]);
  const double emax = std::max({e01, e12, e20});
  const double emin = std::min({e01, e12, e20});
  return emax > 0 && (emax - emin) <= rel_tol * emax;
}

}  // namespace vmgame
