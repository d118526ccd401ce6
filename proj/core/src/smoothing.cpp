#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "w11/dyadic.hpp"
#include "w11/error.hpp"
#include "w11/numeric.hpp"
#include "w11/trace.hpp"

namespace w11 {

namespace {

constexpr double kTol = 1e-9;

long snap(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) > kTol) throw AlignmentError("grid quantity " + std::to_string(x) + " is not an integer");
  return static_cast<long>(r);
}

/// Distance to the boundary of the face within its own plane.
double face_depth(const JumpFace& f, std::span<const double> y) {
  double depth = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (static_cast<int>(j) == f.normal_axis) continue;
    depth = std::min(depth, std::min(y[j] - f.lo[j], f.hi[j] - y[j]));
  }
  return depth;
}

double smallest_extent(const JumpFace& f) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < f.lo.size(); ++j) {
    if (static_cast<int>(j) != f.normal_axis) m = std::min(m, f.hi[j] - f.lo[j]);
  }
  return m;
}

void write(std::vector<double>& values, std::size_t cell, const Point& p) {
  std::copy(p.begin(), p.end(), values.begin() + static_cast<std::ptrdiff_t>(cell * p.size()));
}

}  // namespace

SlabMap smooth_extension(const BVExtension& e, double h_fine) {
  const GridGeometry& w = e.window();
  const int d = w.dim();
  const int D = d + 1;
  const double L = e.L();
  if (!(h_fine > 0.0)) throw DomainError("h_fine must be positive");
  const long per_half_cell = snap(w.h / 2.0 / h_fine);
  if (per_half_cell < 1) throw AlignmentError("h_fine must divide h / 2");

  const auto& levels = e.schedule.levels;
  const auto layers = e.schedule.layers(1);
  for (const auto& layer : layers) {
    const double thickness = layer.hi - layer.lo;
    if (thickness < 4.0 * h_fine * (1.0 - kTol)) {
      std::ostringstream msg;
      msg << "layer n = " << layer.n << " (k = " << layer.k << ") has thickness " << thickness
          << " < 4 h_fine = " << 4.0 * h_fine;
      throw ResolutionError(msg.str());
    }
  }
  (void)levels;

  const Manifold& m = e.manifold();
  double margin = 0.0;
  if (!e.confined) {
    for (const auto& f : e.faces) {
      if (f.on_boundary) margin = std::max(margin, smallest_extent(f) / 4.0);
    }
    margin = std::ceil(margin / h_fine - kTol) * h_fine;
  }
  GridGeometry g;
  g.h = h_fine;
  g.origin.resize(D);
  g.counts.resize(D);
  for (int j = 0; j < d; ++j) {
    g.origin[j] = w.origin[j] - margin;
    g.counts[j] = snap((w.upper(j) - w.lower(j) + 2.0 * margin) / h_fine);
  }
  g.origin[d] = -L;
  g.counts[d] = snap(2.0 * L / h_fine);

  const int nu = m.ambient_dim();
  std::vector<double> values(g.cell_count() * static_cast<std::size_t>(nu));
  parallel_for(g.cell_count(), [&](std::size_t c) {
    const auto center = g.cell_center(c);
    const auto v = e.value_at(std::span<const double>(center.data(), d), center[d]);
    std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(c * nu));
  });

  parallel_for(e.faces.size(), [&](std::size_t fi) {
    const JumpFace& f = e.faces[fi];
    const int a = f.normal_axis;
    const double reach = smallest_extent(f) / 4.0;
    const bool one_sided = e.confined && f.on_boundary;
    bool outside_below = false;
    if (one_sided) outside_below = std::abs(f.position - w.lower(a)) <= kTol * (1.0 + std::abs(f.position));
    Index first(D), last(D);
    for (int j = 0; j < D; ++j) {
      const double lo = j == a ? f.position - reach : f.lo[j];
      const double hi = j == a ? f.position + reach : f.hi[j];
      first[j] = std::max(0L, static_cast<long>(std::ceil((lo - g.origin[j]) / h_fine - 0.5 - kTol)));
      last[j] = std::min(g.counts[j], static_cast<long>(std::floor((hi - g.origin[j]) / h_fine - 0.5 + kTol)) + 1);
      if (last[j] <= first[j]) return;
    }
    Index idx = first;
    std::vector<double> y(D);
    while (true) {
      for (int j = 0; j < D; ++j) y[j] = g.origin[j] + (static_cast<double>(idx[j]) + 0.5) * h_fine;
      const double depth = face_depth(f, y);
      const double s = y[a] - f.position;
      if (depth > 0.0) {
        if (one_sided) {
          const double inward = outside_below ? s : -s;
          if (inward >= 0.0 && 2.0 * inward < depth) {
            const Point& out = outside_below ? f.below : f.above;
            const Point& in = outside_below ? f.above : f.below;
            write(values, g.ravel(idx), m.one_sided_profile(out, in, 2.0 * inward / depth));
          }
        } else if (2.0 * std::abs(s) < depth) {
          write(values, g.ravel(idx), m.geodesic_profile(f.below, f.above, 2.0 * s / depth));
        }
      }
      int j = D - 1;
      while (j >= 0 && ++idx[j] == last[j]) {
        idx[j] = first[j];
        --j;
      }
      if (j < 0) break;
    }
  });

  const auto tail = e.data[0].tail();
  return SlabMap{GridMap(m, std::move(g), std::move(values), Point(tail.begin(), tail.end()))};
}

FaceSmoothing smooth_single_face(const Manifold& m, PointView a, PointView b, std::span<const double> extent,
                                 double h_fine, bool one_sided) {
  const int d = static_cast<int>(extent.size());
  const int D = d + 1;
  if (d < 1) throw DomainError("face dimension must be at least 1");
  if (!(h_fine > 0.0)) throw DomainError("h_fine must be positive");
  m.require_on(a, "face value a");
  m.require_on(b, "face value b");
  double minext = std::numeric_limits<double>::infinity();
  GridGeometry g;
  g.h = h_fine;
  g.origin.assign(D, 0.0);
  g.counts.resize(D);
  for (int j = 0; j < d; ++j) {
    if (!(extent[j] > 0.0)) throw DomainError("face extents must be positive");
    g.counts[j] = snap(extent[j] / h_fine);
    minext = std::min(minext, extent[j]);
  }
  const double reach = std::ceil(minext / 4.0 / h_fine - kTol) * h_fine + h_fine;
  g.origin[d] = one_sided ? 0.0 : -reach;
  g.counts[d] = snap((one_sided ? reach : 2.0 * reach) / h_fine);

  const int nu = m.ambient_dim();
  const Point pa(a.begin(), a.end()), pb(b.begin(), b.end());
  std::vector<double> values(g.cell_count() * static_cast<std::size_t>(nu));
  parallel_for(g.cell_count(), [&](std::size_t c) {
    const auto y = g.cell_center(c);
    double depth = std::numeric_limits<double>::infinity();
    for (int j = 0; j < d; ++j) depth = std::min(depth, std::min(y[j], extent[j] - y[j]));
    const double s = y[d];
    Point v;
    if (one_sided) {
      v = 2.0 * s < depth ? m.one_sided_profile(pa, pb, 2.0 * s / depth) : pb;
    } else if (2.0 * std::abs(s) < depth) {
      v = m.geodesic_profile(pa, pb, 2.0 * s / depth);
    } else {
      v = s < 0.0 ? pa : pb;
    }
    write(values, c, v);
  });
  SlabMap U{GridMap(m, g, std::move(values), pb)};

  FaceSmoothing out;
  out.distance = m.dist(a, b);
  out.area = 1.0;
  for (double x : extent) out.area *= x;
  out.energy = gradient_energy(U);
  const std::size_t rows = static_cast<std::size_t>(g.counts[d]);
  const std::size_t per_row = g.cell_count() / rows;
  double worst = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double t = g.origin[d] + (static_cast<double>(r) + 0.5) * h_fine;
    const Point& step = (!one_sided && t < 0.0) ? pa : pb;
    CompensatedSum acc;
    for (std::size_t c = 0; c < per_row; ++c) acc.add(m.dist_unchecked(step, U.grid.value(c * rows + r)));
    worst = std::max(worst, acc.value() * ipow(h_fine, d));
  }
  out.slice_l1 = worst;
  const double scale = out.distance * out.area;
  out.energy_ratio = scale > 0.0 ? out.energy / scale : 0.0;
  out.slice_ratio = scale > 0.0 ? out.slice_l1 / scale : 0.0;
  return out;
}

}  // namespace w11
