#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include <w11/error.hpp>
#include <w11/nonlocal.hpp>

#include "support.hpp"

using w11::GridMap;
using w11::Manifold;
using w11::Norm;
using w11::Point;

namespace {

/// The window of u extended by `pad` tail cells on every side.
GridMap padded(const GridMap& u, long pad) {
  w11::GridGeometry g = u.geometry();
  for (int j = 0; j < g.dim(); ++j) {
    g.origin[j] -= static_cast<double>(pad) * g.h;
    g.counts[j] += 2 * pad;
  }
  std::vector<double> values;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto v = u.at(g.cell_center(c));
    values.insert(values.end(), v.begin(), v.end());
  }
  const auto tail = u.tail();
  return GridMap(u.manifold(), g, std::move(values), Point(tail.begin(), tail.end()));
}

/// \int_0^h \int_0^h 1{|x - y - off| <= R} dx dy by a 1-d midpoint rule in x
/// with the inner integral in closed form.
double overlap_1d(double off, double h, double R) {
  const int n = 4000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * h / n;
    const double lo = std::max(0.0, x - off - R);
    const double hi = std::min(h, x - off + R);
    sum += std::max(0.0, hi - lo);
  }
  return sum * h / n;
}

/// Cell-pair sum with per-axis overlap weights over a padded window.
double sup_oracle(const GridMap& u, double R) {
  const long pad = static_cast<long>(std::ceil(R / u.h())) + 1;
  const GridMap p = padded(u, pad);
  const auto& g = p.geometry();
  const Manifold& m = p.manifold();
  double sum = 0.0;
  for (std::size_t a = 0; a < g.cell_count(); ++a) {
    const auto ia = g.unravel(a);
    for (std::size_t b = 0; b < g.cell_count(); ++b) {
      const double dist = m.dist(p.value(a), p.value(b));
      if (dist == 0.0) continue;
      const auto ib = g.unravel(b);
      double w = 1.0;
      for (int j = 0; j < g.dim() && w > 0.0; ++j) w *= overlap_1d(g.h * static_cast<double>(ib[j] - ia[j]), g.h, R);
      sum += w * dist;
    }
  }
  return sum;
}

/// Brute-force midpoint pair sum with s^d sub-samples per cell, Euclidean
/// cutoff, over a padded window.
double euclid_oracle(const GridMap& u, double R, int s) {
  const long pad = static_cast<long>(std::ceil(R / u.h())) + 1;
  const GridMap p = padded(u, pad);
  const auto& g = p.geometry();
  const int d = g.dim();
  const double hs = g.h / s;
  std::vector<long> counts(d);
  long total = 1;
  for (int j = 0; j < d; ++j) {
    counts[j] = g.counts[j] * s;
    total *= counts[j];
  }
  std::vector<std::vector<double>> xs(static_cast<std::size_t>(total), std::vector<double>(d));
  for (long f = 0; f < total; ++f) {
    long rest = f;
    for (int j = d - 1; j >= 0; --j) {
      xs[f][j] = g.origin[j] + (static_cast<double>(rest % counts[j]) + 0.5) * hs;
      rest /= counts[j];
    }
  }
  const Manifold& m = p.manifold();
  double sum = 0.0;
  for (const auto& x : xs) {
    const auto ux = p.at(x);
    for (const auto& y : xs) {
      double r2 = 0.0;
      for (int j = 0; j < d; ++j) r2 += (x[j] - y[j]) * (x[j] - y[j]);
      if (r2 <= R * R) sum += m.dist_unchecked(ux, p.at(y));
    }
  }
  return sum * std::pow(hs, 2 * d);
}

}  // namespace

TEST_CASE("constant maps have zero energy and finite tail mass") {
  const GridMap u = GridMap::constant(Manifold::circle(), support::grid(2, 4, 0.25), Point{1, 0});
  CHECK(w11::theta(u, 1.0).value == 0.0);
  CHECK(w11::theta(u, 0.5, Norm::Sup).value == 0.0);
  CHECK(w11::integral_dist_to_point(u, Point{1, 0}).value == 0.0);
}

TEST_CASE("integral of dist to a point other than the tail is infinite") {
  const GridMap u = GridMap::constant(Manifold::circle(), support::grid(1, 4, 0.25), Point{1, 0});
  CHECK(w11::integral_dist_to_point(u, Point{0, 1}).is_infinite());
}

TEST_CASE("integral of dist to the tail by hand") {
  const GridMap u(Manifold::euclidean(1), support::grid(1, 4, 0.5), {0, 1, -2, 0}, Point{0});
  CHECK(w11::integral_dist_to_point(u, Point{0}).value == doctest::Approx(1.5));
}

TEST_CASE("cutoff volumes") {
  CHECK(w11::cutoff_volume(1, 2.0, Norm::Euclidean) == doctest::Approx(4.0));
  CHECK(w11::cutoff_volume(2, 1.0, Norm::Euclidean) == doctest::Approx(std::numbers::pi));
  CHECK(w11::cutoff_volume(2, 0.5, Norm::Sup) == doctest::Approx(1.0));
}

TEST_CASE("sup-norm pair integral matches the exact cell-pair oracle") {
  support::Gen gen(31);
  const Manifold m = Manifold::sphere(3);
  for (int d : {1, 2}) {
    const GridMap u = support::random_map(gen, m, support::grid(d, d == 1 ? 12 : 5, 0.25));
    for (double R : {0.1, 0.25, 0.6, 1.3}) {
      CAPTURE(d);
      CAPTURE(R);
      CHECK(w11::pair_integral(u, R, Norm::Sup) == doctest::Approx(sup_oracle(u, R)).epsilon(1e-6));
    }
  }
}

TEST_CASE("Euclidean pair integral converges to the brute-force oracle") {
  support::Gen gen(32);
  const Manifold m = Manifold::circle();
  for (int d : {1, 2}) {
    const GridMap u = support::random_map(gen, m, support::grid(d, d == 1 ? 10 : 4, 0.25));
    for (double R : {0.3, 0.7}) {
      CAPTURE(d);
      CAPTURE(R);
      const double oracle = euclid_oracle(u, R, d == 1 ? 32 : 8);
      CHECK(w11::pair_integral(u, R, Norm::Euclidean, 8) == doctest::Approx(oracle).epsilon(0.03));
    }
  }
}

TEST_CASE("translation by whole cells matches a direct sum") {
  support::Gen gen(33);
  const GridMap u = support::random_map(gen, Manifold::sphere(3), support::grid(2, 6, 0.25));
  const std::vector<double> shift{0.5, -0.25};
  const GridMap p = padded(u, 3);
  const auto& g = p.geometry();
  double sum = 0.0;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    auto x = g.cell_center(c);
    auto y = x;
    y[0] += shift[0];
    y[1] += shift[1];
    sum += p.manifold().dist(p.at(x), p.at(y));
  }
  CHECK(w11::translation_energy(u, shift).value == doctest::Approx(sum * g.cell_volume()).epsilon(1e-12));
}

TEST_CASE("averaged translation agrees with Theta under the sup norm") {
  support::Gen gen(34);
  const GridMap u = support::random_map(gen, Manifold::sphere(3), support::grid(1, 16, 0.125));
  for (double rho : {0.25, 0.5}) {
    const double avg = w11::averaged_translation(u, rho, 64, 4).value;
    CHECK(avg == doctest::Approx(w11::theta(u, rho, Norm::Sup).value).epsilon(0.02));
  }
}

TEST_CASE("property: Theta is at most twice the tail mass") {
  support::Gen gen(35);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = trial % 2 + 1;
    const GridMap u = support::random_map(gen, Manifold::sphere(3), support::grid(d, d == 1 ? 12 : 5, 0.25));
    const double mass = w11::integral_dist_to_point(u, u.tail()).value;
    for (double R : {0.5, 2.0, 8.0}) {
      CHECK(w11::theta(u, R, Norm::Sup).value <= 2.0 * mass * (1.0 + 1e-9));
      CHECK(w11::theta(u, R, Norm::Euclidean, 2).value <= 2.0 * mass * (1.0 + 0.05));
    }
  }
}

TEST_CASE("property: pair integral is nondecreasing in R") {
  support::Gen gen(36);
  const GridMap u = support::random_map(gen, Manifold::circle(), support::grid(2, 6, 0.25));
  double prev = 0.0;
  for (double R = 0.1; R < 3.0; R *= 1.4) {
    const double v = w11::pair_integral(u, R, Norm::Sup);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("asymptotic mean of a constant map") {
  const GridMap u = GridMap::constant(Manifold::sphere(3), support::grid(1, 8, 0.25), Point{0, 0, 1});
  const std::vector<double> schedule{10.0, 100.0};
  const auto r = w11::asymptotic_mean(u, schedule);
  CHECK(r.lhs.value == 0.0);
  CHECK(r.b_star == Point{0, 0, 1});
  for (const auto& step : r.steps) CHECK(step.rhs == 0.0);
}

TEST_CASE("asymptotic mean recovers the tail at large R") {
  support::Gen gen(37);
  const GridMap u = support::random_map(gen, Manifold::sphere(3), support::grid(1, 16, 0.125));
  const std::vector<double> schedule{50.0, 200.0, 800.0};
  const auto r = w11::asymptotic_mean(u, schedule);
  CHECK(Manifold::sphere(3).dist(r.b_star, u.tail()) == 0.0);
  for (const auto& step : r.steps) CHECK(step.objective <= step.averaged_bound * (1.0 + 1e-9) + 1e-12);
}

TEST_CASE("small radii below the grid scale are rejected") {
  const GridMap u = GridMap::constant(Manifold::circle(), support::grid(1, 8, 0.25), Point{1, 0});
  const std::vector<double> radii{0.1};
  CHECK_THROWS_AS(w11::small_r_sweep(u, radii), w11::ResolutionError);
}
