#include <doctest.h>

#include <cmath>
#include <functional>

#include <w11/error.hpp>
#include <w11/trace.hpp>

#include "support.hpp"

using w11::GridMap;
using w11::Manifold;
using w11::Point;
using w11::SlabMap;

namespace {

/// Slab on [0, width]^d x (t0, t0 + n_t h) filled from f(x, t).
SlabMap slab(const Manifold& m, int d, double width, double t0, long n_t, double h,
             const std::function<Point(const std::vector<double>&)>& f, const Point& tail) {
  w11::GridGeometry g;
  g.h = h;
  g.origin.assign(d + 1, 0.0);
  g.origin[d] = t0;
  g.counts.assign(d + 1, std::lround(width / h));
  g.counts[d] = n_t;
  std::vector<double> values;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const Point p = f(g.cell_center(c));
    values.insert(values.end(), p.begin(), p.end());
  }
  return SlabMap{GridMap(m, g, std::move(values), tail)};
}

}  // namespace

TEST_CASE("constant slab has zero energy") {
  const Manifold m = Manifold::circle();
  const Point p{0, 1};
  const SlabMap U = slab(m, 2, 1.0, 0.0, 8, 0.125, [&](const auto&) { return p; }, p);
  CHECK(w11::gradient_energy(U) == 0.0);
  const GridMap bottom = w11::trace_slice(U, w11::TraceSide::Bottom);
  for (std::size_t c = 0; c < bottom.cell_count(); ++c) CHECK(m.dist(bottom.value(c), p) == 0.0);
  const std::vector<double> radii{0.25, 0.5};
  const auto r = w11::trace_inequality_check(U, bottom, radii);
  for (const auto& row : r.rows) {
    CHECK(row.lhs1 == 0.0);
    CHECK(row.lhs2 == 0.0);
    CHECK(row.ratio1 == 0.0);
    CHECK(row.ratio2 == 0.0);
  }
}

TEST_CASE("profile along t costs the path length times the base area") {
  const Manifold e = Manifold::euclidean(1);
  const Point a{0.0}, b{3.0};
  const auto f = [&](const std::vector<double>& y) { return e.geodesic_profile(a, b, y.back()); };
  const SlabMap U = slab(e, 1, 0.5, -1.25, 40, 1.0 / 16, f, a);
  CHECK(w11::gradient_energy(U) == doctest::Approx(3.0 * 0.5).epsilon(1e-12));

  // On the sphere the chord sum converges to the arc length.
  const Manifold s = Manifold::sphere(3);
  const Point p{0, 0, 1}, q{1, 0, 0};
  const auto g = [&](const std::vector<double>& y) { return s.geodesic_profile(p, q, y.back()); };
  const SlabMap V = slab(s, 1, 0.5, -1.25, 160, 1.0 / 64, g, p);
  CHECK(w11::gradient_energy(V) == doctest::Approx(s.dist(p, q) * 0.5).epsilon(1e-3));
}

TEST_CASE("energy of a smooth map is stable under refinement") {
  // Gradient vanishing on the slab boundary, where no differences are taken.
  const Manifold s = Manifold::sphere(3);
  const auto bump = [](double x) { return std::sin(3.14159265358979 * x) * std::sin(3.14159265358979 * x); };
  const auto f = [&](const std::vector<double>& y) {
    const double a = 1.2 * bump(y[0]) * bump(y[1]) * bump(y[2]);
    const double b = 0.7 * bump(y[2]) * y[0];
    return s.project(Point{std::sin(a) * std::cos(b), std::sin(a) * std::sin(b), std::cos(a)});
  };
  const Point tail{0, 0, 1};
  const double coarse = w11::gradient_energy(slab(s, 2, 1.0, 0.0, 16, 1.0 / 16, f, tail));
  const double fine = w11::gradient_energy(slab(s, 2, 1.0, 0.0, 32, 1.0 / 32, f, tail));
  CHECK(std::abs(fine - coarse) <= 0.05 * fine);
}

TEST_CASE("box-restricted energy adds up and rejects boxes outside the slab") {
  support::Gen gen(81);
  const Manifold m = Manifold::circle();
  const SlabMap U = slab(m, 1, 1.0, 0.0, 8, 0.125, [&](const auto&) { return gen.sphere_point(2); }, Point{1, 0});
  const std::vector<double> lo{0.0, 0.0}, hi{1.0, 1.0};
  CHECK(w11::gradient_energy(U, lo, hi) == doctest::Approx(w11::gradient_energy(U)));
  const std::vector<double> far{0.0, 2.0};
  CHECK_THROWS_AS(w11::gradient_energy(U, lo, far), w11::DomainError);
}

TEST_CASE("trace slices pick the boundary layers") {
  const Manifold e = Manifold::euclidean(1);
  const SlabMap U = slab(e, 1, 1.0, 0.0, 4, 0.25, [](const auto& y) { return Point{y[0] + 10.0 * y[1]}; }, Point{0});
  const GridMap bottom = w11::trace_slice(U, w11::TraceSide::Bottom);
  const GridMap top = w11::trace_slice(U, w11::TraceSide::Top);
  REQUIRE(bottom.cell_count() == 4);
  CHECK(bottom.value(1)[0] == doctest::Approx(0.375 + 1.25));
  CHECK(top.value(1)[0] == doctest::Approx(0.375 + 8.75));
}

TEST_CASE("trace check: radii below resolution are errors") {
  const Manifold m = Manifold::circle();
  const Point p{1, 0};
  const SlabMap U = slab(m, 1, 1.0, 0.0, 8, 0.125, [&](const auto&) { return p; }, p);
  const GridMap bottom = w11::trace_slice(U, w11::TraceSide::Bottom);
  const std::vector<double> tiny{0.2};
  CHECK_THROWS_AS(w11::trace_inequality_check(U, bottom, tiny), w11::ResolutionError);
  const std::vector<double> tall{2.0};
  CHECK_THROWS_AS(w11::trace_inequality_check(U, bottom, tall), w11::Error);
}

TEST_CASE("trace check on the linear profile: finite, bounded ratios") {
  const Manifold e = Manifold::euclidean(1);
  const auto f = [](const std::vector<double>& y) {
    return Point{std::max(0.0, 1.0 - std::abs(y[0] - 1.0)) * (1.0 - y[1])};
  };
  const SlabMap U = slab(e, 1, 2.0, 0.0, 32, 1.0 / 32, f, Point{0});
  const GridMap bottom = w11::trace_slice(U, w11::TraceSide::Bottom);
  const std::vector<double> radii{0.0625, 0.125, 0.25, 0.5};
  const auto r = w11::trace_inequality_check(U, bottom, radii);
  for (const auto& row : r.rows) {
    CHECK(row.energy > 0.0);
    CHECK(std::isfinite(row.ratio1));
    CHECK(row.ratio1 < 10.0);
    CHECK(row.ratio2 < 10.0);
  }
}
