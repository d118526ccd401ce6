#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "w11tools/corpus.hpp"

namespace w11tools {

struct Fixture {
  std::string name;
  w11::GridMap map;
};

struct FixturePair {
  std::string name;
  w11::GridMap u0, u1;
  /// Fine resolution of the coarser slab; the refined slab uses half.
  double h_fine = 0.0;
};

/// Five maps for the nonlocal criteria: d = 1 and 2, circle and sphere.
std::vector<Fixture> energy_fixtures(std::uint64_t seed);

/// energy_fixtures plus the two-valued step.
std::vector<Fixture> energy_fixtures_with_step(std::uint64_t seed);

/// Boundary pairs for the strip construction (equal tails).
std::vector<FixturePair> extension_fixtures(std::uint64_t seed);

}  // namespace w11tools
