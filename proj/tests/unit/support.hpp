#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <w11/grid_map.hpp>
#include <w11tools/corpus.hpp>

namespace support {

/// Hand-rolled generators on a fixed-seed engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return lo + (hi - lo) * w11tools::uniform01(eng_()); }
  long integer(long lo, long hi) { return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  w11::Point sphere_point(int nu) {
    w11::Point p(nu);
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (auto& x : p) {
        x = uniform(-1.0, 1.0);
        n2 += x * x;
      }
    } while (n2 < 1e-4 || n2 > 1.0);
    for (auto& x : p) x /= std::sqrt(n2);
    return p;
  }

  /// Point within geodesic distance `radius` of `base` on the sphere.
  w11::Point near(const w11::Manifold& m, const w11::Point& base, double radius) {
    const w11::Point dir = sphere_point(m.ambient_dim());
    double along = 0.0;
    for (int j = 0; j < m.ambient_dim(); ++j) along += dir[j] * base[j];
    w11::Point tangent(m.ambient_dim());
    double n2 = 0.0;
    for (int j = 0; j < m.ambient_dim(); ++j) {
      tangent[j] = dir[j] - along * base[j];
      n2 += tangent[j] * tangent[j];
    }
    const double angle = uniform(0.0, radius);
    w11::Point p(m.ambient_dim());
    for (int j = 0; j < m.ambient_dim(); ++j) {
      p[j] = std::cos(angle) * base[j] + std::sin(angle) * tangent[j] / std::sqrt(n2);
    }
    return p;
  }

 private:
  std::mt19937_64 eng_;
};

inline w11::GridGeometry grid(int d, long n, double h, double origin = 0.0) {
  w11::GridGeometry g;
  g.h = h;
  g.origin.assign(d, origin);
  g.counts.assign(d, n);
  return g;
}

/// Sphere-valued map whose cells lie within `radius` of the tail; roughly
/// half the cells equal the tail.
inline w11::GridMap random_map(Gen& gen, const w11::Manifold& m, const w11::GridGeometry& g, double radius = 1.5) {
  const w11::Point tail = w11tools::base_point(m);
  std::vector<double> values;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const w11::Point p = gen.uniform() < 0.5 ? tail : gen.near(m, tail, radius);
    values.insert(values.end(), p.begin(), p.end());
  }
  return w11::GridMap(m, g, std::move(values), tail);
}

}  // namespace support
