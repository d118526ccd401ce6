#include <doctest.h>

#include <cmath>
#include <numbers>

#include <w11/error.hpp>
#include <w11/manifold.hpp>

#include "support.hpp"

using w11::Manifold;
using w11::Point;

TEST_CASE("distances on the three model manifolds") {
  CHECK(Manifold::euclidean(2).dist(Point{0, 0}, Point{3, 4}) == doctest::Approx(5.0));
  CHECK(Manifold::circle().dist(Point{1, 0}, Point{0, 1}) == doctest::Approx(std::numbers::pi / 2));
  CHECK(Manifold::sphere(3).dist(Point{0, 0, 1}, Point{0, 0, -1}) == doctest::Approx(std::numbers::pi));
  CHECK(Manifold::sphere(3).dist(Point{1, 0, 0}, Point{1, 0, 0}) == 0.0);
}

TEST_CASE("ids parse and print back") {
  for (const char* id : {"euclidean:3", "circle", "sphere:2", "sphere:4"}) {
    CHECK(Manifold::parse(id).id() == id);
  }
  CHECK_THROWS_AS(Manifold::parse("torus"), w11::Error);
  CHECK_THROWS_AS(Manifold::parse("sphere:1"), w11::Error);
}

TEST_CASE("off-manifold points are rejected") {
  const Manifold s = Manifold::sphere(3);
  CHECK_THROWS_AS(s.require_on(Point{1, 1, 0}), w11::DomainError);
  CHECK_THROWS_AS(s.dist(Point{2, 0, 0}, Point{1, 0, 0}), w11::DomainError);
  CHECK(s.contains(Point{0, 1, 0}));
}

TEST_CASE("geodesic profile endpoints and midpoint") {
  const Manifold e = Manifold::euclidean(1);
  CHECK(e.geodesic_profile(Point{0}, Point{1}, 0.0)[0] == doctest::Approx(0.5));
  CHECK(e.geodesic_profile(Point{0}, Point{1}, 1.0)[0] == doctest::Approx(1.0));
  CHECK(e.geodesic_profile(Point{0}, Point{1}, -1.0)[0] == doctest::Approx(0.0));
  CHECK(e.geodesic_profile(Point{0}, Point{1}, 3.0)[0] == doctest::Approx(1.0));
  CHECK(e.one_sided_profile(Point{0}, Point{1}, 0.0)[0] == doctest::Approx(0.0));
  CHECK(e.one_sided_profile(Point{0}, Point{1}, 1.0)[0] == doctest::Approx(1.0));
}

TEST_CASE("antipodal pairs have no unique geodesic") {
  const Manifold s = Manifold::sphere(3);
  CHECK_THROWS_AS(s.geodesic_profile(Point{0, 0, 1}, Point{0, 0, -1}, 0.0), w11::DomainError);
  CHECK_THROWS_AS(Manifold::circle().interpolate(Point{1, 0}, Point{-1, 0}, 0.5), w11::DomainError);
}

TEST_CASE("projection onto the manifold") {
  CHECK(Manifold::euclidean(2).project(Point{3, -1}) == Point{3, -1});
  const Point p = Manifold::sphere(3).project(Point{0, 3, 4});
  CHECK(p[1] == doctest::Approx(0.6));
  CHECK(p[2] == doctest::Approx(0.8));
}

TEST_CASE("property: metric axioms on random sphere triples") {
  support::Gen gen(11);
  for (const Manifold& m : {Manifold::circle(), Manifold::sphere(3), Manifold::sphere(5)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Point a = gen.sphere_point(m.ambient_dim());
      const Point b = gen.sphere_point(m.ambient_dim());
      const Point c = gen.sphere_point(m.ambient_dim());
      CHECK(m.dist(a, b) == doctest::Approx(m.dist(b, a)));
      CHECK(m.dist(a, c) <= m.dist(a, b) + m.dist(b, c) + 1e-12);
      CHECK(m.dist(a, b) <= std::numbers::pi + 1e-12);
    }
  }
}

TEST_CASE("property: profiles stay on the manifold and move along the geodesic") {
  support::Gen gen(12);
  const Manifold m = Manifold::sphere(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Point a = gen.sphere_point(3);
    const Point b = gen.near(m, a, 2.5);
    const double ab = m.dist(a, b);
    double prev = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double t = -1.0 + 0.1 * i;
      const Point g = m.geodesic_profile(a, b, t);
      CHECK(m.contains(g));
      // On the minimal geodesic: d(a, g) + d(g, b) = d(a, b).
      CHECK(m.dist(a, g) + m.dist(g, b) == doctest::Approx(ab).epsilon(1e-9));
      CHECK(m.dist(a, g) == doctest::Approx(ab * w11::smoothstep((t + 1.0) / 2.0)).epsilon(1e-9));
      CHECK(m.dist(a, g) >= prev - 1e-12);
      prev = m.dist(a, g);
    }
  }
}

TEST_CASE("property: profile speed bounds by finite differences") {
  support::Gen gen(13);
  const Manifold m = Manifold::sphere(4);
  const double dt = 1e-4;
  for (int trial = 0; trial < 50; ++trial) {
    const Point a = gen.sphere_point(4);
    const Point b = gen.near(m, a, 3.0);
    const double ab = m.dist(a, b);
    double two = 0.0, one = 0.0;
    for (double t = -1.0; t < 1.0; t += 0.01) {
      two = std::max(two, m.dist(m.geodesic_profile(a, b, t), m.geodesic_profile(a, b, t + dt)) / dt);
    }
    for (double t = 0.0; t < 1.0; t += 0.01) {
      one = std::max(one, m.dist(m.one_sided_profile(a, b, t), m.one_sided_profile(a, b, t + dt)) / dt);
    }
    CHECK(two <= 0.75 * ab * (1.0 + 1e-3));
    CHECK(one <= 1.5 * ab * (1.0 + 1e-3));
  }
}
