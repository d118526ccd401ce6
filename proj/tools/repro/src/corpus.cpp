#include "w11tools/corpus.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <w11/error.hpp>

namespace w11tools {

using w11::GridGeometry;
using w11::GridMap;
using w11::Index;
using w11::Manifold;
using w11::ManifoldKind;
using w11::Point;

namespace {

struct Box {
  Index lo, hi;  // cell index range [lo, hi)
};

bool inside(const Box& b, const Index& idx) {
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] < b.lo[j] || idx[j] >= b.hi[j]) return false;
  }
  return true;
}

/// Boxes separated by at least one cell.
bool clear_of(const Box& a, const Box& b) {
  for (std::size_t j = 0; j < a.lo.size(); ++j) {
    if (a.hi[j] + 1 <= b.lo[j] || b.hi[j] + 1 <= a.lo[j]) return true;
  }
  return false;
}

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return uniform01(rng_()); }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  long integer(long lo, long hi) {  // [lo, hi]
    return lo + static_cast<long>(uniform() * static_cast<double>(hi - lo + 1));
  }

 private:
  std::mt19937_64 rng_;
};

/// Point at geodesic angle `angle` from the base point, direction psi.
Point tilted(const Manifold& m, double angle, double psi) {
  const int nu = m.ambient_dim();
  switch (m.kind()) {
    case ManifoldKind::Circle:
      return {std::cos(angle), std::sin(angle)};
    case ManifoldKind::Sphere: {
      Point p(nu, 0.0);
      p[nu - 1] = std::cos(angle);
      if (nu == 2) {
        p[0] = std::sin(angle);
      } else {
        p[0] = std::sin(angle) * std::cos(psi);
        p[1] = std::sin(angle) * std::sin(psi);
      }
      return p;
    }
    case ManifoldKind::Euclidean: {
      Point p(nu, 0.0);
      p[0] = angle * std::cos(psi);
      if (nu > 1) p[1] = angle * std::sin(psi);
      return p;
    }
  }
  return {};
}

Box random_box(Draw& draw, const GridGeometry& g) {
  Box b;
  for (int j = 0; j < g.dim(); ++j) {
    const long n = g.counts[j];
    const long len = draw.integer(1, std::max(1L, n / 4));
    const long start = draw.integer(1, std::max(1L, n - len - 1));
    b.lo.push_back(start);
    b.hi.push_back(std::min(n, start + len));
  }
  return b;
}

}  // namespace

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::Constant:
      return "constant";
    case Family::SingleBump:
      return "single-bump";
    case Family::MultiBump:
      return "multi-bump";
    case Family::SmoothSampled:
      return "smooth-sampled";
    case Family::TwoValuedStep:
      return "two-valued-step";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::Constant, Family::SingleBump, Family::MultiBump, Family::SmoothSampled,
                   Family::TwoValuedStep}) {
    if (name == to_string(f)) return f;
  }
  throw w11::UsageError("unknown corpus family '" + name + "'");
}

Point base_point(const Manifold& m) {
  Point p(m.ambient_dim(), 0.0);
  if (m.kind() == ManifoldKind::Circle) {
    p[0] = 1.0;
  } else if (m.kind() == ManifoldKind::Sphere) {
    p.back() = 1.0;
  }
  return p;
}

GridMap generate(const CorpusSpec& spec) {
  if (spec.d < 1 || spec.n < 1 || !(spec.h > 0.0)) throw w11::UsageError("corpus grid must be non-empty");
  const Manifold m = Manifold::parse(spec.manifold);
  GridGeometry g;
  g.h = spec.h;
  g.origin.assign(spec.d, 0.0);
  g.counts.assign(spec.d, spec.n);
  const Point tail = base_point(m);
  const int nu = m.ambient_dim();
  std::vector<double> values;
  values.reserve(g.cell_count() * static_cast<std::size_t>(nu));
  Draw draw(spec.seed);

  auto fill = [&](auto&& value_of) {
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      const Point p = value_of(c);
      values.insert(values.end(), p.begin(), p.end());
    }
  };

  switch (spec.family) {
    case Family::Constant:
      fill([&](std::size_t) { return tail; });
      break;
    case Family::SingleBump:
    case Family::MultiBump: {
      const int count = spec.family == Family::SingleBump ? 1 : spec.bumps;
      std::vector<Box> boxes;
      std::vector<Point> colors;
      for (int attempt = 0; static_cast<int>(boxes.size()) < count && attempt < 10000; ++attempt) {
        Box b = random_box(draw, g);
        bool ok = true;
        for (const auto& o : boxes) ok = ok && clear_of(b, o);
        if (!ok) continue;
        boxes.push_back(b);
        colors.push_back(tilted(m, draw.uniform(0.4, 2.4), draw.uniform(0.0, 2.0 * std::numbers::pi)));
      }
      if (static_cast<int>(boxes.size()) < count) throw w11::UsageError("window too small for the requested bumps");
      fill([&](std::size_t c) {
        const Index idx = g.unravel(c);
        for (std::size_t b = 0; b < boxes.size(); ++b) {
          if (inside(boxes[b], idx)) return colors[b];
        }
        return tail;
      });
      break;
    }
    case Family::SmoothSampled: {
      const double amp = draw.uniform(1.2, 2.0);
      std::vector<double> freq(spec.d);
      for (auto& f : freq) f = draw.uniform(0.5, 1.5);
      const double phase = draw.uniform(0.0, 2.0 * std::numbers::pi);
      fill([&](std::size_t c) {
        const auto x = g.cell_center(c);
        double bump = 1.0, psi = phase;
        for (int j = 0; j < spec.d; ++j) {
          const double s = (x[j] - g.lower(j)) / (g.upper(j) - g.lower(j));
          bump *= std::sin(std::numbers::pi * s);
          psi += 2.0 * std::numbers::pi * freq[j] * s;
        }
        return tilted(m, amp * bump * bump, psi);
      });
      break;
    }
    case Family::TwoValuedStep: {
      const Point other = tilted(m, 1.0, 0.0);
      const long half = spec.n / 2;
      fill([&](std::size_t c) { return g.unravel(c)[0] < half ? other : tail; });
      break;
    }
  }
  return GridMap(m, std::move(g), std::move(values), tail);
}

}  // namespace w11tools
