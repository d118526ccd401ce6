#include <algorithm>
#include <cmath>

#include "w11/dyadic.hpp"
#include "w11/error.hpp"
#include "w11/numeric.hpp"

namespace w11 {

namespace {

Point to_point(PointView v) { return Point(v.begin(), v.end()); }

/// Box of cube q of a projection, extended by the t-range [tlo, thi].
void cube_box(const GridGeometry& cg, const Index& qi, double tlo, double thi, std::vector<double>& lo,
              std::vector<double>& hi) {
  const int d = cg.dim();
  lo.resize(d + 1);
  hi.resize(d + 1);
  for (int j = 0; j < d; ++j) {
    lo[j] = cg.origin[j] + cg.h * static_cast<double>(qi[j]);
    hi[j] = lo[j] + cg.h;
  }
  lo[d] = tlo;
  hi[d] = thi;
}

void add_face(std::vector<JumpFace>& out, const Manifold& m, FaceClass kind, int axis, double position,
              std::vector<double> lo, std::vector<double> hi, PointView below, PointView above, bool boundary) {
  if (m.dist_unchecked(below, above) <= 0.0) return;
  JumpFace f;
  f.kind = kind;
  f.normal_axis = axis;
  f.position = position;
  lo[axis] = position;
  hi[axis] = position;
  double area = 1.0;
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (static_cast<int>(j) != axis) area *= hi[j] - lo[j];
  }
  f.lo = std::move(lo);
  f.hi = std::move(hi);
  f.area = area;
  f.below = to_point(below);
  f.above = to_point(above);
  f.on_boundary = boundary;
  out.push_back(std::move(f));
}

}  // namespace

const char* to_string(FaceClass c) noexcept {
  switch (c) {
    case FaceClass::Interface:
      return "interface";
    case FaceClass::Parallel:
      return "parallel";
    case FaceClass::Perpendicular:
      return "perpendicular";
  }
  return "?";
}

std::size_t BVExtension::layer_of(double t) const {
  const double a = std::abs(t);
  std::size_t n = 0;
  for (std::size_t i = 1; i < schedule.levels.size(); ++i) {
    if (a >= (1.0 - std::ldexp(1.0, -schedule.levels[i].k)) * L()) n = i;
  }
  return n;
}

PointView BVExtension::value_at(std::span<const double> x, double t) const {
  const int side = t >= 0.0 ? 1 : 0;
  return projections[side][layer_of(t)].cubes.at(x);
}

BVExtension build_bv_extension(const GridMap& u0, const GridMap& u1, const DyadicSchedule& schedule,
                               bool confined) {
  if (!(u0.geometry() == u1.geometry())) throw DomainError("boundary maps have different grids");
  const Manifold& m = u0.manifold();
  if (m.dist(u0.tail(), u1.tail()) > 0.0) {
    throw DomainError("boundary maps have different tails; \\int dist(u0, u1) is infinite");
  }
  BVExtension e;
  e.data = {u0, u1};
  e.schedule = schedule;
  e.confined = confined;
  const std::size_t nlev = schedule.levels.size();
  for (int i = 0; i < 2; ++i) {
    e.projections[i].reserve(nlev);
    for (const auto& level : schedule.levels) {
      e.projections[i].push_back(project_dyadic(e.data[i], schedule.lattice, level.k));
    }
  }
  const int d = u0.dim();

  // Interface at t = 0 between the level-k_0 projections.
  {
    const GridMap& below = e.projections[0][0].cubes;
    const GridMap& above = e.projections[1][0].cubes;
    const auto& cg = below.geometry();
    for (std::size_t q = 0; q < cg.cell_count(); ++q) {
      std::vector<double> lo, hi;
      cube_box(cg, cg.unravel(q), 0.0, 0.0, lo, hi);
      add_face(e.faces, m, FaceClass::Interface, d, 0.0, lo, hi, below.value(q), above.value(q), false);
    }
  }

  for (int i = 0; i < 2; ++i) {
    const auto layers = schedule.layers(i);
    // Parallel faces between layers n and n + 1, one per fine cube.
    for (std::size_t n = 0; n + 1 < nlev; ++n) {
      const GridMap& coarse = e.projections[i][n].cubes;
      const GridMap& fine = e.projections[i][n + 1].cubes;
      const auto& fg = fine.geometry();
      const double pos = i == 1 ? layers[n].hi : layers[n].lo;
      for (std::size_t q = 0; q < fg.cell_count(); ++q) {
        std::vector<double> lo, hi;
        cube_box(fg, fg.unravel(q), pos, pos, lo, hi);
        const auto cv = coarse.at(fg.cell_center(q));
        const auto fv = fine.value(q);
        if (i == 1) {
          add_face(e.faces, m, FaceClass::Parallel, d, pos, lo, hi, cv, fv, false);
        } else {
          add_face(e.faces, m, FaceClass::Parallel, d, pos, lo, hi, fv, cv, false);
        }
      }
    }
    // Perpendicular faces between lateral neighbours within each layer,
    // including the neighbours outside the window.
    for (std::size_t n = 0; n < nlev; ++n) {
      const GridMap& cubes = e.projections[i][n].cubes;
      const auto& cg = cubes.geometry();
      const auto tail = cubes.tail();
      for (int j = 0; j < d; ++j) {
        GridGeometry fg = cg;
        fg.counts[j] += 1;
        for (std::size_t f = 0; f < fg.cell_count(); ++f) {
          Index qi = fg.unravel(f);
          const long pos_index = qi[j];
          const bool left_out = pos_index == 0;
          const bool right_out = pos_index == cg.counts[j];
          PointView right = tail, left = tail;
          if (!right_out) right = cubes.value(cg.ravel(qi));
          if (!left_out) {
            Index li = qi;
            li[j] -= 1;
            left = cubes.value(cg.ravel(li));
          }
          std::vector<double> lo, hi;
          Index box = qi;
          if (right_out) box[j] -= 1;
          cube_box(cg, box, layers[n].lo, layers[n].hi, lo, hi);
          const double pos = cg.origin[j] + cg.h * static_cast<double>(pos_index);
          add_face(e.faces, m, FaceClass::Perpendicular, j, pos, lo, hi, left, right, left_out || right_out);
        }
      }
    }
  }
  return e;
}

JumpEnergy jump_energy(const BVExtension& e) {
  JumpEnergy out;
  CompensatedSum total, iface, par, perp;
  const Manifold& m = e.manifold();
  for (const auto& f : e.faces) {
    const double v = f.area * m.dist_unchecked(f.below, f.above);
    total.add(v);
    switch (f.kind) {
      case FaceClass::Interface:
        iface.add(v);
        break;
      case FaceClass::Parallel:
        par.add(v);
        break;
      case FaceClass::Perpendicular:
        perp.add(v);
        break;
    }
  }
  out.total = total.value();
  out.interface = iface.value();
  out.parallel = par.value();
  out.perpendicular = perp.value();
  return out;
}

JumpBounds jump_bounds(const BVExtension& e, int s) {
  const int d = e.dim();
  const double L = e.L();
  const double Ld = ipow(L, d);
  JumpBounds b;
  b.gamma = e.schedule.gamma;
  b.integral_dist = 0.0;
  {
    const Manifold& m = e.manifold();
    const GridMap& u0 = e.data[0];
    const GridMap& u1 = e.data[1];
    CompensatedSum acc;
    for (std::size_t c = 0; c < u0.cell_count(); ++c) acc.add(m.dist_unchecked(u0.value(c), u1.value(c)));
    b.integral_dist = acc.value() * u0.geometry().cell_volume();
  }
  for (int i = 0; i < 2; ++i) {
    b.sup2 += pair_integral(e.data[i], 2.0 * L, Norm::Sup, s) / Ld;
    b.sup6 += pair_integral(e.data[i], 6.0 * L, Norm::Sup, s) / Ld;
  }
  const double dd = static_cast<double>(d);
  b.interface = b.integral_dist + std::ldexp(b.sup2, -d);
  b.parallel = 6.0 * b.gamma + b.sup2;
  b.perpendicular = 11.0 * dd * b.gamma + dd * b.sup6;
  b.total = b.integral_dist + (6.0 + 11.0 * dd) * b.gamma + (1.0 + std::ldexp(1.0, -d) + dd) * b.sup6;

  const auto& levels = e.schedule.levels;
  const std::size_t nlev = levels.size();
  const double lead = 2.0 * dd * ipow(3.0, d) * std::ldexp(1.0, d - 1);
  CompensatedSum par, perp;
  for (int i = 0; i < 2; ++i) {
    for (std::size_t n = 0; n < nlev; ++n) {
      const double defect = e.projections[i][n].defect;
      if (n + 1 < nlev) {
        par.add(defect);
        par.add(e.projections[i][n + 1].defect);
      }
      const double c = n + 1 < nlev ? 1.0 - std::ldexp(1.0, levels[n].k - levels[n + 1].k) : 1.0;
      const double rho = 3.0 * e.schedule.lattice.side(levels[n].k);
      perp.add(2.0 * dd * defect);
      perp.add(lead * c * theta(e.data[i], rho, Norm::Sup, s).value);
    }
  }
  b.parallel_direct = par.value();
  b.perpendicular_direct = perp.value();
  return b;
}

}  // namespace w11
