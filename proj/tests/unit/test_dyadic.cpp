#include <doctest.h>

#include <cmath>
#include <limits>

#include <w11/dyadic.hpp>
#include <w11/error.hpp>

#include "support.hpp"

using w11::DyadicLattice;
using w11::GridMap;
using w11::Manifold;
using w11::Point;

namespace {

DyadicLattice lattice(double L = 1.0) {
  DyadicLattice l;
  l.L = L;
  return l;
}

/// Cube index of each cell at level k, corner-aligned at the origin.
std::vector<long> cube_of(const GridMap& u, double side) {
  const auto& g = u.geometry();
  std::vector<long> out(g.cell_count());
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto x = g.cell_center(c);
    long flat = 0;
    for (int j = 0; j < g.dim(); ++j) flat = flat * 1000 + static_cast<long>(std::floor(x[j] / side));
    out[c] = flat;
  }
  return out;
}

}  // namespace

TEST_CASE("lattice sides and floor level") {
  const DyadicLattice l = lattice(1.0);
  CHECK(l.side(0) == 2.0);
  CHECK(l.side(3) == 0.25);
  CHECK(l.floor_level(support::grid(1, 16, 0.125)) == 4);
  CHECK(lattice(0.5).floor_level(support::grid(2, 8, 0.125)) == 3);
  CHECK_THROWS_AS(l.floor_level(support::grid(1, 16, 0.3)), w11::AlignmentError);
  CHECK_THROWS_AS(l.floor_level(support::grid(1, 16, 0.125, 0.0625)), w11::AlignmentError);
}

TEST_CASE("padding extends the window to whole level-0 cubes with the tail") {
  support::Gen gen(41);
  const GridMap u = support::random_map(gen, Manifold::circle(), support::grid(2, 5, 0.25, -0.5));
  const GridMap p = w11::pad_to_lattice(u, lattice(1.0));
  for (int j = 0; j < 2; ++j) {
    CHECK(std::fmod(p.geometry().lower(j), 2.0) == doctest::Approx(0.0));
    CHECK(std::fmod(p.geometry().upper(j), 2.0) == doctest::Approx(0.0));
  }
  const auto& g = p.geometry();
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const auto x = g.cell_center(c);
    const auto a = p.value(c);
    const auto b = u.at(x);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
  }
}

TEST_CASE("projection matches the brute-force argmin of the mean distance") {
  support::Gen gen(42);
  const Manifold m = Manifold::sphere(3);
  for (int d : {1, 2}) {
    const GridMap u = support::random_map(gen, m, support::grid(d, d == 1 ? 16 : 8, 2.0 / (d == 1 ? 16 : 8)));
    const int floor = lattice().floor_level(u.geometry());
    for (int k = 0; k <= floor; ++k) {
      CAPTURE(d);
      CAPTURE(k);
      const auto proj = w11::project_dyadic(u, lattice(), k);
      const auto cube = cube_of(u, lattice().side(k));
      const auto& g = u.geometry();
      double defect = 0.0;
      std::vector<std::size_t> chosen;
      std::vector<long> seen;
      for (std::size_t c = 0; c < g.cell_count(); ++c) {
        if (std::find(seen.begin(), seen.end(), cube[c]) != seen.end()) continue;
        seen.push_back(cube[c]);
        std::size_t best = 0;
        double best_sum = std::numeric_limits<double>::infinity();
        for (std::size_t x = 0; x < g.cell_count(); ++x) {
          if (cube[x] != cube[c]) continue;
          double sum = 0.0;
          for (std::size_t y = 0; y < g.cell_count(); ++y) {
            if (cube[y] == cube[c]) sum += m.dist(u.value(x), u.value(y));
          }
          if (sum < best_sum - 1e-12) {
            best_sum = sum;
            best = x;
          }
        }
        chosen.push_back(best);
        defect += best_sum * g.cell_volume();
      }
      CHECK(proj.defect == doctest::Approx(defect).epsilon(1e-9));
      // Ties by lowest index: the chosen value must have the minimal sum;
      // compare values rather than indices since equal values tie.
      for (std::size_t c = 0; c < g.cell_count(); ++c) {
        const auto e = proj.cubes.at(g.cell_center(c));
        const std::size_t q = static_cast<std::size_t>(std::find(seen.begin(), seen.end(), cube[c]) - seen.begin());
        CHECK(m.dist(e, u.value(chosen[q])) == doctest::Approx(0.0));
      }
    }
  }
}

TEST_CASE("projection at the floor level is the identity") {
  support::Gen gen(43);
  const GridMap u = support::random_map(gen, Manifold::circle(), support::grid(2, 8, 0.25));
  const auto proj = w11::project_dyadic(u, lattice(), lattice().floor_level(u.geometry()));
  CHECK(proj.defect == 0.0);
  CHECK(proj.cubes.raw_values() == u.raw_values());
}

TEST_CASE("projection of a constant map is the constant") {
  const GridMap u = GridMap::constant(Manifold::sphere(3), support::grid(1, 16, 0.125), Point{0, 1, 0});
  for (int k = 0; k <= 4; ++k) CHECK(w11::project_dyadic(u, lattice(), k).defect == 0.0);
}

TEST_CASE("property: schedules are increasing, tile the strip and meet their thresholds") {
  support::Gen gen(44);
  const Manifold m = Manifold::sphere(3);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = trial % 2 + 1;
    const long n = d == 1 ? 32 : 8;
    const auto g = support::grid(d, n, 2.0 / static_cast<double>(n));
    const GridMap u0 = support::random_map(gen, m, g, 0.3 + 0.2 * trial);
    const GridMap u1 = support::random_map(gen, m, g, 0.5);
    const int n_max = 1 + trial % 4;
    const auto s = w11::select_schedule(u0, u1, lattice(), n_max);
    CAPTURE(trial);
    REQUIRE(!s.levels.empty());
    CHECK(s.levels.front().k == 0);
    CHECK(s.gamma == doctest::Approx(w11::gamma_energy(u0, u1, 1.0)));
    for (std::size_t i = 1; i < s.levels.size(); ++i) {
      const auto& level = s.levels[i];
      CHECK(level.k > s.levels[i - 1].k);
      CHECK(level.k <= s.floor_level);
      CHECK(level.defect_threshold == doctest::Approx(std::ldexp(s.gamma, -static_cast<int>(i))));
      CHECK(level.translation_threshold == doctest::Approx(std::ldexp(s.gamma, -s.levels[i - 1].k)));
      if (level.certified) {
        for (int side = 0; side < 2; ++side) {
          CHECK(level.defect[side] <= level.defect_threshold);
          CHECK(level.translation[side] <= level.translation_threshold);
        }
      } else {
        CHECK(level.k == s.floor_level);
      }
    }
    CHECK(s.levels.back().k == s.floor_level);
    CHECK(s.levels.size() <= static_cast<std::size_t>(n_max) + 2);
    for (int side = 0; side < 2; ++side) {
      const auto layers = s.layers(side);
      for (const auto& layer : layers) CHECK(layer.lo < layer.hi);
      if (side == 1) {
        CHECK(layers.front().lo == 0.0);
        CHECK(layers.back().hi == 1.0);
        for (std::size_t i = 1; i < layers.size(); ++i) CHECK(layers[i].lo == layers[i - 1].hi);
      } else {
        const auto up = s.layers(1);
        for (std::size_t i = 0; i < layers.size(); ++i) {
          CHECK(layers[i].lo == -up[i].hi);
          CHECK(layers[i].hi == -up[i].lo);
        }
      }
    }
  }
}

TEST_CASE("identical constant data needs no levels beyond the floor") {
  const auto g = support::grid(1, 8, 0.25);
  const GridMap u = GridMap::constant(Manifold::circle(), g, Point{1, 0});
  const auto s = w11::select_schedule(u, u, lattice(), 3);
  CHECK(s.gamma == 0.0);
  for (const auto& level : s.levels) CHECK(level.certified);
}
