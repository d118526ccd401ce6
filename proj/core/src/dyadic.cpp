#include "w11/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "w11/error.hpp"
#include "w11/numeric.hpp"

namespace w11 {

namespace {

constexpr double kAlignTol = 1e-9;

bool is_integer(double x, double tol = kAlignTol) { return std::abs(x - std::round(x)) <= tol; }

std::vector<double> anchor_of(const DyadicLattice& lattice, int d) {
  if (lattice.anchor.empty()) return std::vector<double>(d, 0.0);
  if (static_cast<int>(lattice.anchor.size()) != d) throw DomainError("lattice anchor has wrong dimension");
  return lattice.anchor;
}

/// Distinct values of a cube's cells, with multiplicity and first cell.
struct Distinct {
  std::vector<std::size_t> first;
  std::vector<double> weight;
};

}  // namespace

double DyadicLattice::side(int k) const { return std::ldexp(2.0 * L, -k); }

int DyadicLattice::floor_level(const GridGeometry& g) const {
  if (!(L > 0.0)) throw DomainError("L must be positive");
  const double ratio = 2.0 * L / g.h;
  const int k = static_cast<int>(std::lround(std::log2(ratio)));
  if (k < 0 || std::abs(std::ldexp(1.0, k) - ratio) > kAlignTol * ratio) {
    throw AlignmentError("2L/h = " + std::to_string(ratio) + " is not a power of two");
  }
  const auto a = anchor_of(*this, g.dim());
  for (int j = 0; j < g.dim(); ++j) {
    if (!is_integer((g.origin[j] - a[j]) / g.h)) {
      throw AlignmentError("grid origin is not aligned with the dyadic lattice on axis " + std::to_string(j));
    }
  }
  return k;
}

GridMap pad_to_lattice(const GridMap& u, const DyadicLattice& lattice) {
  const auto& g = u.geometry();
  const int d = g.dim();
  lattice.floor_level(g);
  const auto a = anchor_of(lattice, d);
  const double side = lattice.side(0);
  GridGeometry padded;
  padded.h = g.h;
  padded.origin.resize(d);
  padded.counts.resize(d);
  std::vector<long> shift(d);
  for (int j = 0; j < d; ++j) {
    const double lo = a[j] + side * std::floor((g.lower(j) - a[j]) / side + kAlignTol);
    const double hi = a[j] + side * std::ceil((g.upper(j) - a[j]) / side - kAlignTol);
    padded.origin[j] = lo;
    padded.counts[j] = std::lround((hi - lo) / g.h);
    shift[j] = std::lround((g.lower(j) - lo) / g.h);
  }
  if (padded == g) return u;
  const int nu = u.nu();
  const auto tail = u.tail();
  std::vector<double> values(padded.cell_count() * static_cast<std::size_t>(nu));
  for (std::size_t c = 0; c < padded.cell_count(); ++c) {
    std::copy(tail.begin(), tail.end(), values.begin() + static_cast<std::ptrdiff_t>(c * nu));
  }
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    Index idx = g.unravel(c);
    for (int j = 0; j < d; ++j) idx[j] += shift[j];
    const auto v = u.value(c);
    std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(padded.ravel(idx) * nu));
  }
  return GridMap(u.manifold(), std::move(padded), std::move(values), Point(tail.begin(), tail.end()));
}

GridMap refine(const GridMap& coarse, const GridGeometry& fine) {
  const int nu = coarse.nu();
  std::vector<double> values(fine.cell_count() * static_cast<std::size_t>(nu));
  parallel_for(fine.cell_count(), [&](std::size_t c) {
    const auto v = coarse.at(fine.cell_center(c));
    std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(c * nu));
  });
  const auto tail = coarse.tail();
  return GridMap(coarse.manifold(), fine, std::move(values), Point(tail.begin(), tail.end()));
}

Projection project_dyadic(const GridMap& u, const DyadicLattice& lattice, int k) {
  const auto& g = u.geometry();
  const int d = g.dim();
  const int kf = lattice.floor_level(g);
  if (k < 0 || k > kf) {
    throw AlignmentError("level " + std::to_string(k) + " is outside [0, " + std::to_string(kf) +
                         "] for h = " + std::to_string(g.h));
  }
  const long m = 1L << (kf - k);
  GridGeometry cg;
  cg.h = lattice.side(k);
  cg.origin = g.origin;
  cg.counts.resize(d);
  for (int j = 0; j < d; ++j) {
    if (g.counts[j] % m != 0) {
      throw AlignmentError("window is not a union of level-" + std::to_string(k) + " cubes on axis " +
                           std::to_string(j));
    }
    cg.counts[j] = g.counts[j] / m;
  }
  const auto a = anchor_of(lattice, d);
  for (int j = 0; j < d; ++j) {
    if (!is_integer((g.origin[j] - a[j]) / cg.h)) {
      throw AlignmentError("window does not start on a level-" + std::to_string(k) + " cube boundary");
    }
  }

  const Manifold& man = u.manifold();
  const int nu = u.nu();
  const std::size_t ncubes = cg.cell_count();
  const std::size_t per_cube = static_cast<std::size_t>(ipow(static_cast<double>(m), d));
  Projection p{k, GridMap::constant(man, cg, Point(u.tail().begin(), u.tail().end())), {}, {}, {}, 0.0, 0.0};
  p.chosen.resize(ncubes);
  p.chosen_mean.resize(ncubes);
  p.pair_mean.resize(ncubes);
  std::vector<double> values(ncubes * static_cast<std::size_t>(nu));
  std::vector<double> defect(ncubes), pair_sum(ncubes);

  parallel_for(ncubes, [&](std::size_t q) {
    const Index qi = cg.unravel(q);
    // Cells of the cube in row-major order of u.
    std::vector<std::size_t> cells;
    cells.reserve(per_cube);
    Index off(d, 0);
    for (std::size_t n = 0; n < per_cube; ++n) {
      std::size_t rest = n;
      for (int j = d - 1; j >= 0; --j) {
        off[j] = qi[j] * m + static_cast<long>(rest % static_cast<std::size_t>(m));
        rest /= static_cast<std::size_t>(m);
      }
      cells.push_back(g.ravel(off));
    }
    std::sort(cells.begin(), cells.end());
    Distinct dv;
    for (std::size_t c : cells) {
      const auto v = u.value(c);
      bool found = false;
      for (std::size_t i = 0; i < dv.first.size(); ++i) {
        const auto w = u.value(dv.first[i]);
        if (std::equal(v.begin(), v.end(), w.begin())) {
          dv.weight[i] += 1.0;
          found = true;
          break;
        }
      }
      if (!found) {
        dv.first.push_back(c);
        dv.weight.push_back(1.0);
      }
    }
    const std::size_t nd = dv.first.size();
    const double inv = 1.0 / static_cast<double>(per_cube);
    std::vector<double> mean(nd, 0.0);
    for (std::size_t i = 0; i < nd; ++i) {
      CompensatedSum acc;
      for (std::size_t j = 0; j < nd; ++j) {
        if (i == j) continue;
        acc.add(dv.weight[j] * man.dist_unchecked(u.value(dv.first[i]), u.value(dv.first[j])));
      }
      mean[i] = acc.value() * inv;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < nd; ++i) {
      if (mean[i] < mean[best]) best = i;
    }
    CompensatedSum pairs;
    for (std::size_t i = 0; i < nd; ++i) pairs.add(dv.weight[i] * mean[i]);
    p.chosen[q] = dv.first[best];
    p.chosen_mean[q] = mean[best];
    p.pair_mean[q] = pairs.value() * inv;
    const auto v = u.value(dv.first[best]);
    std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(q * nu));
    // \int_Q dist(u(x_Q), u) = |Q| * chosen_mean.
    defect[q] = mean[best] * static_cast<double>(per_cube) * g.cell_volume();
    pair_sum[q] = p.pair_mean[q] * static_cast<double>(per_cube) * g.cell_volume();
  });
  const auto tail = u.tail();
  p.cubes = GridMap(man, std::move(cg), std::move(values), Point(tail.begin(), tail.end()));
  CompensatedSum dsum, psum;
  for (std::size_t q = 0; q < ncubes; ++q) {
    dsum.add(defect[q]);
    psum.add(pair_sum[q]);
  }
  p.defect = dsum.value();
  p.cube_pair_sum = psum.value();
  return p;
}

GridMap project_Ek(const GridMap& u, int k, double L) {
  DyadicLattice lattice{L, {}};
  const GridMap padded = pad_to_lattice(u, lattice);
  const Projection p = project_dyadic(padded, lattice, k);
  return refine(p.cubes, u.geometry());
}

double gamma_energy(const GridMap& u0, const GridMap& u1, double L, int s) {
  if (!(u0.geometry() == u1.geometry())) throw DomainError("boundary maps have different grids");
  if (!(u0.manifold() == u1.manifold())) throw DomainError("boundary maps have different manifolds");
  if (!(L > 0.0)) throw DomainError("L must be positive");
  const double sum = pair_integral(u0, L, Norm::Euclidean, s) + pair_integral(u1, L, Norm::Euclidean, s);
  return sum / ipow(L, u0.dim());
}

}  // namespace w11
