#include <doctest.h>

#include <w11/error.hpp>
#include <w11/grid_map.hpp>
#include <w11/io.hpp>

#include "support.hpp"

using w11::GridMap;
using w11::Manifold;
using w11::Point;

TEST_CASE("values inside the window, tail outside") {
  const auto g = support::grid(1, 4, 0.25);
  const GridMap u(Manifold::euclidean(1), g, {1, 2, 3, 4}, Point{0});
  CHECK(u.at(std::vector<double>{0.1})[0] == 1.0);
  CHECK(u.at(std::vector<double>{0.25})[0] == 2.0);
  CHECK(u.at(std::vector<double>{0.99})[0] == 4.0);
  CHECK(u.at(std::vector<double>{1.0})[0] == 0.0);
  CHECK(u.at(std::vector<double>{-0.01})[0] == 0.0);
}

TEST_CASE("geometry ravel and unravel are inverse") {
  w11::GridGeometry g;
  g.h = 0.5;
  g.origin = {-1.0, 0.0, 2.0};
  g.counts = {3, 4, 5};
  for (std::size_t c = 0; c < g.cell_count(); ++c) CHECK(g.ravel(g.unravel(c)) == c);
  CHECK(g.cell_volume() == doctest::Approx(0.125));
  CHECK(g.window_volume() == doctest::Approx(60 * 0.125));
  std::size_t cell = 0;
  REQUIRE(g.locate(std::vector<double>{-0.9, 1.9, 4.4}, cell));
  CHECK(g.unravel(cell) == w11::Index{0, 3, 4});
  CHECK_FALSE(g.locate(std::vector<double>{0.6, 0.0, 2.0}, cell));
}

TEST_CASE("off-manifold data is rejected at construction") {
  const auto g = support::grid(1, 2, 0.5);
  CHECK_THROWS_AS(GridMap(Manifold::circle(), g, {1, 0, 0.5, 0.5}, Point{1, 0}), w11::DomainError);
  CHECK_THROWS_AS(GridMap(Manifold::circle(), g, {1, 0, 0, 1}, Point{2, 0}), w11::DomainError);
}

TEST_CASE("json round trip is exact") {
  support::Gen gen(21);
  const Manifold m = Manifold::sphere(3);
  const GridMap u = support::random_map(gen, m, support::grid(2, 5, 0.125, -0.25));
  const GridMap v = w11::parse_grid_map(w11::format_grid_map(u));
  CHECK(v.geometry() == u.geometry());
  CHECK(v.manifold() == u.manifold());
  CHECK(v.raw_values() == u.raw_values());
  CHECK(std::vector<double>(v.tail().begin(), v.tail().end()) == std::vector<double>(u.tail().begin(), u.tail().end()));
  CHECK(w11::format_grid_map(v) == w11::format_grid_map(u));
}

TEST_CASE("malformed files raise schema errors") {
  const char* bad[] = {
      "{",
      "[]",
      R"({"d":1,"origin":[0],"h":1,"counts":[2],"manifold_id":"circle","tail":[1,0]})",
      R"({"d":1,"origin":[0],"h":1,"counts":[2],"manifold_id":"circle","tail":[1,0],"values":[[1,0]]})",
      R"({"d":1,"origin":[0],"h":1,"counts":[1],"manifold_id":"circle","tail":[1,0],"values":[[1,0,0]]})",
      R"({"d":2,"origin":[0],"h":1,"counts":[1],"manifold_id":"circle","tail":[1,0],"values":[[1,0]]})",
      R"({"d":1,"origin":[0],"h":-1,"counts":[1],"manifold_id":"circle","tail":[1,0],"values":[[1,0]]})",
      R"({"d":1,"origin":[0],"h":1,"counts":[1],"manifold_id":"blob","tail":[1,0],"values":[[1,0]]})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(w11::parse_grid_map(text), w11::SchemaError);
  }
}

TEST_CASE("slab round trip keeps layer tails") {
  const auto g = support::grid(2, 4, 0.25, -0.5);
  const GridMap grid = GridMap::constant(Manifold::circle(), g, Point{0, 1});
  const w11::SlabMap U{grid};
  const w11::SlabMap V = w11::parse_slab_map(w11::format_slab_map(U));
  CHECK(V.grid.raw_values() == U.grid.raw_values());
  CHECK(V.base_dim() == 1);
  CHECK(V.t_lower() == doctest::Approx(-0.5));
}
