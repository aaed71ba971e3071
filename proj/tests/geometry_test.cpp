#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vmgame/errors.hpp"
#include "vmgame/geometry.hpp"
#include "vmgame/rng.hpp"

using namespace vmgame;

namespace {
constexpr double pi = std::numbers::pi;

// Independent inside-test: barycentric signs with a plain epsilon.
bool barycentric_inside(const Point& p, const Point& a, const Point& b,
                        const Point& c, double eps) {
  const double den = cross2(Point(b - a), Point(c - a));
  const double wa = cross2(Point(b - p), Point(c - p)) / den;
  const double wb = cross2(Point(c - p), Point(a - p)) / den;
  const double wc = cross2(Point(a - p), Point(b - p)) / den;
  return wa >= -eps && wb >= -eps && wc >= -eps;
}
}  // namespace

TEST_CASE("distance and cross product basics") {
  CHECK(distance(Point(0, 0), Point(3, 4)) == doctest::Approx(5.0));
  CHECK(distance(Point(1, 1), Point(1, 1)) == 0.0);
  CHECK(cross2(Point(1, 0), Point(0, 1)) == doctest::Approx(1.0));
  CHECK(cross2(Point(0, 1), Point(1, 0)) == doctest::Approx(-1.0));
  CHECK(cross2(Point(2, 3), Point(4, 6)) == doctest::Approx(0.0));
}

TEST_CASE("angle wrapping ranges") {
  CHECK(wrap_to_2pi(0.0) == doctest::Approx(0.0));
  CHECK(wrap_to_2pi(-pi / 2) == doctest::Approx(3 * pi / 2));
  CHECK(wrap_to_2pi(5 * pi) == doctest::Approx(pi));
  CHECK(wrap_to_pi(pi) == doctest::Approx(pi));
  CHECK(wrap_to_pi(-pi) == doctest::Approx(pi));  // (-pi, pi] convention
  CHECK(wrap_to_pi(3 * pi / 2) == doctest::Approx(-pi / 2));
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double theta = rng.uniform(-50, 50);
    const double w2 = wrap_to_2pi(theta);
    const double wp = wrap_to_pi(theta);
    CHECK(w2 >= 0.0);
    CHECK(w2 < 2 * pi);
    CHECK(wp > -pi);
    CHECK(wp <= pi);
    CHECK(std::abs(std::remainder(w2 - theta, 2 * pi)) < 1e-9);
    CHECK(std::abs(std::remainder(wp - theta, 2 * pi)) < 1e-9);
  }
}

TEST_CASE("polar round-trips") {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Point p(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const Point pole(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const double axis = rng.uniform(-10, 10);
    const PolarPoint polar = to_polar(p, pole, axis);
    CHECK(polar.rho >= 0.0);
    CHECK(polar.theta >= 0.0);
    CHECK(polar.theta < 2 * pi);
    const Point back = from_polar(polar, pole, axis);
    CHECK(distance(back, p) < 1e-9);
  }
  const PolarPoint at_pole = to_polar(Point(2, 3), Point(2, 3), 1.0);
  CHECK(at_pole.rho == 0.0);
  CHECK(at_pole.theta == 0.0);
}

TEST_CASE("polar axis is relative") {
  // A point on the axis direction has theta 0 regardless of the axis.
  const Point pole(1, 1);
  for (double axis : {0.0, 0.7, 2.8, -1.2}) {
    const Point p = pole + 2.0 * Point(std::cos(axis), std::sin(axis));
    const PolarPoint polar = to_polar(p, pole, axis);
    CHECK(polar.rho == doctest::Approx(2.0));
    CHECK((polar.theta < 1e-12 || polar.theta > 2 * pi - 1e-12));
  }
}

TEST_CASE("triangle validation and measures") {
  const Triangle t(Point(0, 0), Point(4, 0), Point(0, 3));
  CHECK(t.area() == doctest::Approx(6.0));
  CHECK(t.longest_edge() == doctest::Approx(5.0));

  CHECK_THROWS_AS(Triangle(Point(0, 0), Point(1, 1), Point(2, 2)),
                  validation_error);
  CHECK_THROWS_AS(Triangle(Point(0, 0), Point(0, 0), Point(1, 1)),
                  validation_error);
  CHECK(Triangle::degenerate(Point(2, 2), Point(2, 2), Point(2, 2)));
  const double nan = std::nan("");
  CHECK_THROWS_AS(Triangle(Point(nan, 0), Point(1, 0), Point(0, 1)),
                  validation_error);

  // Area threshold is relative to the squared longest edge.
  CHECK(Triangle::degenerate(Point(0, 0), Point(1, 0), Point(0.5, 1e-13)));
  CHECK_FALSE(Triangle::degenerate(Point(0, 0), Point(1, 0),
                                   Point(0.5, 1e-10)));
}

TEST_CASE("point_in_triangle closed-boundary semantics") {
  const Triangle t(Point(0, 0), Point(1, 0), Point(0, 1));
  CHECK(point_in_triangle(Point(0.25, 0.25), t));
  CHECK_FALSE(point_in_triangle(Point(1, 1), t));
  // Vertices and edge midpoints count as inside (closed test).
  CHECK(point_in_triangle(Point(0, 0), t));
  CHECK(point_in_triangle(Point(0.5, 0), t));
  CHECK(point_in_triangle(Point(0.5, 0.5), t));
  // Just past the default tolerance band: outside.
  CHECK_FALSE(point_in_triangle(Point(0.5, -1e-6), t));
  // Within an explicit tolerance: inside.
  CHECK(point_in_triangle(Point(0.5, -1e-6), t, 1e-3));
}

TEST_CASE("point_in_triangle agrees with a barycentric oracle") {
  Rng rng(13);
  int inside_seen = 0;
  for (int i = 0; i < 10000; ++i) {
    const Point a(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Point b(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Point c(rng.uniform(-2, 2), rng.uniform(-2, 2));
    if (Triangle::degenerate(a, b, c)) continue;
    const Point p(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Triangle fwd(a, b, c), rev(c, b, a);
    const bool ours = point_in_triangle(p, fwd);
    CHECK(ours == point_in_triangle(p, rev));  // orientation-free
    // Skip the oracle when p sits within its own epsilon of an edge.
    if (barycentric_inside(p, a, b, c, 1e-7) !=
        barycentric_inside(p, a, b, c, -1e-7))
      continue;
    CHECK(ours == barycentric_inside(p, a, b, c, 0.0));
    inside_seen += ours ? 1 : 0;
  }
  CHECK(inside_seen > 100);  // the sample exercised both answers
}

TEST_CASE("verifier config validation") {
  CHECK_THROWS_AS(VerifierConfig({Point(0, 0), Point(1, 0)}, 1.0),
                  validation_error);
  CHECK_THROWS_AS(
      VerifierConfig({Point(0, 0), Point(1, 0), Point(0, 1)}, 0.0),
      validation_error);
  CHECK_THROWS_AS(
      VerifierConfig({Point(0, 0), Point(1, 0), Point(1, 0)}, 1.0),
      validation_error);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(
      VerifierConfig({Point(0, 0), Point(inf, 0), Point(0, 1)}, 1.0),
      validation_error);
  const VerifierConfig ok({Point(0, 0), Point(1, 0), Point(0, 1)}, 2.0);
  CHECK(ok.size() == 3);
  CHECK(ok.range == 2.0);
}

TEST_CASE("equilateral_verifiers geometry") {
  const Point center(2, -1);
  const double edge = 3.0, alpha = 0.6;
  const VerifierConfig config = equilateral_verifiers(center, edge, alpha, 5);
  REQUIRE(config.size() == 3);
  for (int i = 0; i < 3; ++i) {
    const Point& v = config.verifiers[static_cast<std::size_t>(i)];
    CHECK(distance(v, center) ==
          doctest::Approx(edge / std::sqrt(3.0)).epsilon(1e-12));
    const Point& w = config.verifiers[static_cast<std::size_t>((i + 1) % 3)];
    CHECK(distance(v, w) == doctest::Approx(edge).epsilon(1e-12));
  }
  const Point v0 = config.verifiers[0];
  CHECK(std::atan2(v0.y() - center.y(), v0.x() - center.x()) ==
        doctest::Approx(alpha));
  CHECK(is_equilateral(config));

  CHECK_THROWS_AS(equilateral_verifiers(center, 0.0, 0.0, 1.0),
                  validation_error);
  CHECK_THROWS_AS(equilateral_verifiers(center, 1.0, 0.0, -1.0),
                  validation_error);
}

TEST_CASE("circumcenter and orthocenter") {
  // Equilateral: both coincide with the center.
  const VerifierConfig eq = equilateral_verifiers(Point(1, 2), 2.0, 0.3, 9);
  CHECK(distance(orthocenter(eq), Point(1, 2)) < 1e-12);
  CHECK(distance(circumcenter(eq.verifiers[0], eq.verifiers[1],
                              eq.verifiers[2]),
                 Point(1, 2)) < 1e-12);

  // Right triangle: orthocenter at the right-angle vertex.
  CHECK(distance(orthocenter(Point(0, 0), Point(4, 0), Point(0, 3)),
                 Point(0, 0)) < 1e-12);

  Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    const Point a(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const Point b(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const Point c(rng.uniform(-3, 3), rng.uniform(-3, 3));
    if (Triangle::degenerate(a, b, c)) continue;
    const Point cc = circumcenter(a, b, c);
    CHECK(distance(cc, a) == doctest::Approx(distance(cc, b)).epsilon(1e-6));
    CHECK(distance(cc, a) == doctest::Approx(distance(cc, c)).epsilon(1e-6));
    const Point h = orthocenter(a, b, c);
    // Altitude property: the segment vertex->orthocenter is perpendicular
    // to the opposite edge.
    CHECK(std::abs(Point(h - a).dot(Point(b - c))) <
          1e-6 * (b - c).norm() * (1 + (h - a).norm()));
  }

  CHECK_THROWS_AS(circumcenter(Point(0, 0), Point(1, 1), Point(2, 2)),
                  validation_error);
  const VerifierConfig four(
      {Point(0, 0), Point(1, 0), Point(0, 1), Point(1, 1)}, 3.0);
  CHECK_THROWS_AS(orthocenter(four), validation_error);
}

TEST_CASE("is_equilateral rejects scalene configs") {
  const VerifierConfig scalene(
      {Point(0, 0), Point(1, 0), Point(0.2, 0.9)}, 2.0);
  CHECK_FALSE(is_equilateral(scalene));
}
