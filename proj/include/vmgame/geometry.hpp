#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

#include "vmgame/errors.hpp"

namespace vmgame {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;
using Point = Point2<double>;

// Closed-triangle boundary tolerance, in units of the caller's length scale
// (callers working at verifier range R pass kBoundaryTol * R).
inline constexpr double kBoundaryTol = 1e-9;

// Triangles with area < kDegenerateAreaFactor * (longest edge)^2 are rejected.
inline constexpr double kDegenerateAreaFactor = 1e-12;

template <typename DA, typename DB>
typename DA::Scalar distance(const Eigen::MatrixBase<DA>& p,
                             const Eigen::MatrixBase<DB>& q) {
  return (p - q).norm();
}

template <typename DA, typename DB>
typename DA::Scalar cross2(const Eigen::MatrixBase<DA>& a,
                           const Eigen::MatrixBase<DB>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

template <typename S>
S wrap_to_2pi(S theta) {
  const S tau = S(2) * std::numbers::pi_v<S>;
  S r = std::fmod(theta, tau);
  if (r < S(0)) r += tau;
  if (r >= tau) r = S(0);  // fmod can land exactly on tau after the add
  return r;
}

// Wrap into (-pi, pi].
template <typename S>
S wrap_to_pi(S theta) {
  S r = wrap_to_2pi(theta);
  if (r > std::numbers::pi_v<S>) r -= S(2) * std::numbers::pi_v<S>;
  return r;
}

// rho >= 0, theta in [0, 2pi). to_polar produces the normalized form.
template <typename S>
struct Polar {
  S rho{0};
  S theta{0};
};
using PolarPoint = Polar<double>;

template <typename S>
Polar<S> to_polar(const Point2<S>& p, const Point2<S>& pole,
                  S axis_theta = S(0)) {
  const Point2<S> d = p - pole;
  const S rho = d.norm();
  if (rho == S(0)) return {S(0), S(0)};
  return {rho, wrap_to_2pi(std::atan2(d.y(), d.x()) - axis_theta)};
}

template <typename S>
Point2<S> from_polar(const Polar<S>& p, const Point2<S>& pole,
                     S axis_theta = S(0)) {
  const S t = p.theta + axis_theta;
  return Point2<S>(pole.x() + p.rho * std::cos(t),
                   pole.y() + p.rho * std::sin(t));
}

template <typename S>
class Triangle2 {
 public:
  Triangle2(const Point2<S>& a, const Point2<S>& b, const Point2<S>& c)
      : a_(a), b_(b), c_(c) {
    if (!(a.allFinite() && b.allFinite() && c.allFinite()))
      throw validation_error("triangle vertices must be finite");
    if (degenerate(a, b, c)) throw validation_error("degenerate triangle");
  }

  static bool degenerate(const Point2<S>& a, const Point2<S>& b,
                         const Point2<S>& c) {
    const S l2 = std::max({(b - a).squaredNorm(), (c - b).squaredNorm(),
                           (a - c).squaredNorm()});
    if (l2 == S(0)) return true;
    const S area = std::abs(cross2(b - a, c - a)) / S(2);
    return area < S(kDegenerateAreaFactor) * l2;
  }

  const Point2<S>& a() const { return a_; }
  const Point2<S>& b() const { return b_; }
  const Point2<S>& c() const { return c_; }

  S area() const { return std::abs(cross2(b_ - a_, c_ - a_)) / S(2); }

  S longest_edge() const {
    return std::sqrt(std::max({(b_ - a_).squaredNorm(),
                               (c_ - b_).squaredNorm(),
                               (a_ - c_).squaredNorm()}));
  }

 private:
  Point2<S> a_, b_, c_;
};
using Triangle = Triangle2<double>;

// Closed-set test: boundary points within `boundary_tol` (a distance) count as
// inside. A negative tolerance selects the self-scaling default
// kBoundaryTol * longest_edge.
template <typename S>
bool point_in_triangle(const Point2<S>& p, const Triangle2<S>& t,
                       S boundary_tol = S(-1)) {
  if (boundary_tol < S(0)) boundary_tol = S(kBoundaryTol) * t.longest_edge();
  const S orient = cross2(t.b() - t.a(), t.c() - t.a()) >= S(0) ? S(1) : S(-1);
  const Point2<S>* v[4] = {&t.a(), &t.b(), &t.c(), &t.a()};
  for (int k = 0; k < 3; ++k) {
    const Point2<S> e = *v[k + 1] - *v[k];
    // signed distance of p from the edge line, positive toward the interior
    const S d = orient * cross2(e, Point2<S>(p - *v[k])) / e.norm();
    if (d < -boundary_tol) return false;
  }
  return true;
}

// N verifier positions sharing one range R. Positions are pairwise distinct.
struct VerifierConfig {
  std::vector<Point> verifiers;
  double range = 0;

  VerifierConfig(std::vector<Point> v, double r);
  std::size_t size() const { return verifiers.size(); }
};

// Three verifiers at circumradius edge/sqrt(3) around `center`, at angles
// alpha, alpha + 2pi/3, alpha + 4pi/3. Centroid = circumcenter = orthocenter.
VerifierConfig equilateral_verifiers(const Point& center, double edge,
                                     double alpha, double range);

Point circumcenter(const Point& a, const Point& b, const Point& c);
Point orthocenter(const Point& a, const Point& b, const Point& c);
Point orthocenter(const VerifierConfig& config);  // requires exactly 3 verifiers

bool is_equilateral(const VerifierConfig& config, double rel_tol = 1e-9);

}  // namespace vmgame
