#include <algorithm>
#include <cmath>
#include <limits>

#include "w11/dyadic.hpp"
#include "w11/error.hpp"
#include "w11/numeric.hpp"
#include "w11/trace.hpp"

namespace w11 {

namespace {

double thinnest_layer(const DyadicSchedule& s) {
  double t = std::numeric_limits<double>::infinity();
  for (const auto& layer : s.layers(1)) t = std::min(t, layer.hi - layer.lo);
  return t;
}

/// \int over the slab's boundary cell row of dist(u, U), u given on R^d.
double slice_error(const SlabMap& U, const GridMap& u, TraceSide side) {
  const GridMap slice = trace_slice(U, side);
  const auto& g = slice.geometry();
  const Manifold& m = u.manifold();
  const double sum = parallel_sum(g.cell_count(), [&](std::size_t lo, std::size_t hi, CompensatedSum& acc) {
    for (std::size_t c = lo; c < hi; ++c) acc.add(m.dist_unchecked(u.at(g.cell_center(c)), slice.value(c)));
  });
  return sum * g.cell_volume();
}

StripReport run_strip(const GridMap& u0, const GridMap& u1, const StripOptions& opt, bool confined) {
  if (!(u0.geometry() == u1.geometry())) throw DomainError("boundary maps have different grids");
  if (!(u0.manifold() == u1.manifold())) throw DomainError("boundary maps have different manifolds");
  DyadicLattice lattice{opt.L, opt.anchor};
  const GridMap p0 = pad_to_lattice(u0, lattice);
  const GridMap p1 = pad_to_lattice(u1, lattice);
  StripReport r;
  r.schedule = select_schedule(p0, p1, lattice, opt.n_max, opt.s);
  const BVExtension e = build_bv_extension(p0, p1, r.schedule, confined);
  r.jumps = jump_energy(e);
  r.bounds = jump_bounds(e, opt.s);
  double h_fine = opt.h_fine;
  if (h_fine <= 0.0) {
    h_fine = u0.h() / 2.0;
    const double thin = thinnest_layer(r.schedule);
    while (4.0 * h_fine > thin * (1.0 + 1e-9)) h_fine /= 2.0;
  }
  r.slab = smooth_extension(e, h_fine);
  r.energy = gradient_energy(r.slab);
  r.integral_dist = r.bounds.integral_dist;
  r.nonlocal_unit = pair_integral(u0, 1.0, Norm::Euclidean, opt.s) + pair_integral(u1, 1.0, Norm::Euclidean, opt.s);
  r.rhs = r.integral_dist + r.nonlocal_unit;
  if (r.rhs > 0.0) {
    r.ratio = r.energy / r.rhs;
  } else {
    r.ratio = r.energy > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  r.trace_error[0] = slice_error(r.slab, u0, TraceSide::Bottom);
  r.trace_error[1] = slice_error(r.slab, u1, TraceSide::Top);
  return r;
}

bool is_constant(const GridMap& u, PointView p) {
  const Manifold& m = u.manifold();
  for (std::size_t c = 0; c < u.cell_count(); ++c) {
    if (m.dist_unchecked(u.value(c), p) > m.tolerance()) return false;
  }
  return true;
}

GridMap with_tail(const GridMap& u, PointView tail) {
  return GridMap(u.manifold(), u.geometry(), u.raw_values(), Point(tail.begin(), tail.end()));
}

/// Moves the last axis of U to position `axis`, keeping the others in order.
SlabMap move_last_axis(const SlabMap& U, int axis) {
  const GridMap& src = U.grid;
  const auto& g = src.geometry();
  const int D = g.dim();
  if (axis == D - 1) return U;
  std::vector<int> from(D);  // new axis -> old axis
  for (int j = 0, o = 0; j < D; ++j) from[j] = j == axis ? D - 1 : o++;
  GridGeometry ng;
  ng.h = g.h;
  ng.origin.resize(D);
  ng.counts.resize(D);
  for (int j = 0; j < D; ++j) {
    ng.origin[j] = g.origin[from[j]];
    ng.counts[j] = g.counts[from[j]];
  }
  const int nu = src.nu();
  std::vector<double> values(g.cell_count() * static_cast<std::size_t>(nu));
  parallel_for(ng.cell_count(), [&](std::size_t c) {
    const Index ni = ng.unravel(c);
    Index oi(D);
    for (int j = 0; j < D; ++j) oi[from[j]] = ni[j];
    const auto v = src.value(g.ravel(oi));
    std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(c * nu));
  });
  const auto tail = src.tail();
  return SlabMap{GridMap(src.manifold(), std::move(ng), std::move(values), Point(tail.begin(), tail.end()))};
}

}  // namespace

StripReport strip_extension(const GridMap& u0, const GridMap& u1, const StripOptions& options) {
  return run_strip(u0, u1, options, false);
}

CubeReport cube_extension(const std::vector<GridMap>& faces, PointView p, int n_max, double h_fine) {
  if (faces.size() < 4 || faces.size() % 2 != 0) throw DomainError("cube data needs 2 (d + 1) faces, d >= 1");
  const int D = static_cast<int>(faces.size() / 2);
  const int d = D - 1;
  const Manifold& m = faces[0].manifold();
  m.require_on(p, "base point p");
  const double h = faces[0].h();
  for (const auto& f : faces) {
    if (!(f.manifold() == m)) throw DomainError("cube faces use different manifolds");
    const auto& g = f.geometry();
    if (g.dim() != d || g.h != h) throw DomainError("cube faces must share dimension and cell size");
    for (int j = 0; j < d; ++j) {
      if (std::abs(g.lower(j) + 1.0) > 1e-9 || std::abs(g.upper(j) - 1.0) > 1e-9) {
        throw DomainError("cube faces must cover [-1, 1]^d");
      }
    }
  }
  int axis = -1;
  for (int j = 0; j < D; ++j) {
    if (is_constant(faces[2 * j], p) && is_constant(faces[2 * j + 1], p)) continue;
    if (axis >= 0) throw DomainError("boundary data differs from p on more than one pair of opposed faces");
    axis = j;
  }
  if (axis < 0) axis = D - 1;

  StripOptions opt;
  opt.L = 1.0;
  opt.n_max = n_max;
  opt.h_fine = h_fine;
  opt.anchor.assign(d, -1.0);
  CubeReport r;
  r.strip = run_strip(with_tail(faces[2 * axis], p), with_tail(faces[2 * axis + 1], p), opt, true);
  r.strip.slab = move_last_axis(r.strip.slab, axis);

  CompensatedSum boundary;
  for (const auto& f : faces) {
    CompensatedSum acc;
    for (std::size_t c = 0; c < f.cell_count(); ++c) acc.add(m.dist_unchecked(f.value(c), p));
    boundary.add(acc.value() * f.geometry().cell_volume());
  }
  r.boundary_integral = boundary.value();
  if (r.boundary_integral > 0.0) {
    r.ratio = r.strip.energy / r.boundary_integral;
  } else {
    r.ratio = r.strip.energy > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }

  // Trace on every face of the cube against its data.
  const auto& g = r.strip.slab.grid.geometry();
  r.trace_error.assign(faces.size(), 0.0);
  for (int j = 0; j < D; ++j) {
    for (int side = 0; side < 2; ++side) {
      const GridMap& data = faces[2 * j + side];
      const long layer = side == 0 ? 0 : g.counts[j] - 1;
      GridGeometry fg;
      fg.h = g.h;
      for (int k = 0; k < D; ++k) {
        if (k == j) continue;
        fg.origin.push_back(g.origin[k]);
        fg.counts.push_back(g.counts[k]);
      }
      const double sum = parallel_sum(fg.cell_count(), [&](std::size_t lo, std::size_t hi, CompensatedSum& acc) {
        for (std::size_t c = lo; c < hi; ++c) {
          const Index fi = fg.unravel(c);
          Index si(D);
          for (int k = 0, o = 0; k < D; ++k) si[k] = k == j ? layer : fi[o++];
          acc.add(m.dist_unchecked(data.at(fg.cell_center(c)), r.strip.slab.grid.value(g.ravel(si))));
        }
      });
      r.trace_error[2 * j + side] = sum * fg.cell_volume();
    }
  }
  return r;
}

HalfspaceReport halfspace_extension(const GridMap& u, std::span<const double> bbm_schedule,
                                    const StripOptions& options) {
  HalfspaceReport r;
  r.bbm = asymptotic_mean(u, bbm_schedule, options.s);
  const Manifold& m = u.manifold();
  if (m.dist(r.bbm.b_star, u.tail()) > m.tolerance()) {
    throw DomainError("asymptotic mean differs from the tail; enlarge the radius schedule");
  }
  const GridMap top = GridMap::constant(m, u.geometry(), r.bbm.b_star);
  r.strip = run_strip(u, with_tail(top, r.bbm.b_star), options, false);
  // Shift (-L, L) to (0, 2L).
  GridGeometry g = r.strip.slab.grid.geometry();
  g.origin.back() += options.L;
  const auto tail = r.strip.slab.grid.tail();
  r.strip.slab = SlabMap{GridMap(m, std::move(g), r.strip.slab.grid.raw_values(), Point(tail.begin(), tail.end()))};
  r.energy = r.strip.energy;
  r.theta_limit = theta(u, bbm_schedule.back(), Norm::Euclidean, options.s).value;
  if (r.theta_limit > 0.0) {
    r.ratio = r.energy / r.theta_limit;
  } else {
    r.ratio = r.energy > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return r;
}

}  // namespace w11
