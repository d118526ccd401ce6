#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <w11/grid_map.hpp>

namespace w11tools {

enum class Family { Constant, SingleBump, MultiBump, SmoothSampled, TwoValuedStep };

const char* to_string(Family f) noexcept;
/// Throws UsageError for unknown names.
Family parse_family(const std::string& name);

struct CorpusSpec {
  Family family = Family::Constant;
  std::string manifold = "sphere:3";
  int d = 1;
  /// Cells per axis; the window is [0, n h)^d.
  long n = 16;
  double h = 0.125;
  int bumps = 3;
  std::uint64_t seed = 1;
};

/// Base point used as the tail: (1, 0) on the circle, the last basis
/// vector on spheres, the origin in Euclidean space.
w11::Point base_point(const w11::Manifold& m);

/// Deterministic fixture for the given spec.
w11::GridMap generate(const CorpusSpec& spec);

/// Uniform double in [0, 1) from a 64-bit engine.
double uniform01(std::uint64_t bits);

}  // namespace w11tools
