#include "w11/trace.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "w11/error.hpp"
#include "w11/nonlocal.hpp"
#include "w11/numeric.hpp"

namespace w11 {

namespace {

constexpr double kSamplesPerRadius = 8.0;
constexpr int kMaxRefinement = 64;

/// Smallest power of two q with h / q <= r / kSamplesPerRadius.
int refinement(double h, double r) {
  int q = 1;
  while (q < kMaxRefinement && h / q > r / kSamplesPerRadius * (1.0 + 1e-12)) q *= 2;
  return q;
}

double ratio(double lhs, double energy) {
  if (energy > 0.0) return lhs / energy;
  return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

/// Energy of the cells whose multi-index lies in [first, last).
double gradient_energy_cells(const SlabMap& U, const Index& first, const Index& last) {
  const GridMap& grid = U.grid;
  const GridGeometry& g = grid.geometry();
  const int D = g.dim();
  const int nu = grid.nu();
  std::vector<std::size_t> stride(D, 1);
  for (int j = D - 2; j >= 0; --j) stride[j] = stride[j + 1] * static_cast<std::size_t>(g.counts[j + 1]);
  std::size_t total = 1;
  Index extent(D);
  for (int j = 0; j < D; ++j) {
    extent[j] = last[j] - first[j];
    if (extent[j] <= 0) return 0.0;
    total *= static_cast<std::size_t>(extent[j]);
  }
  const double sum = parallel_sum(total, [&](std::size_t lo, std::size_t hi, CompensatedSum& acc) {
    Index idx(D);
    for (std::size_t flat = lo; flat < hi; ++flat) {
      std::size_t rest = flat;
      std::size_t cell = 0;
      for (int j = D - 1; j >= 0; --j) {
        idx[j] = first[j] + static_cast<long>(rest % static_cast<std::size_t>(extent[j]));
        rest /= static_cast<std::size_t>(extent[j]);
        cell += static_cast<std::size_t>(idx[j]) * stride[j];
      }
      const auto here = grid.value(cell);
      double sq = 0.0;
      for (int j = 0; j < D; ++j) {
        if (idx[j] + 1 >= g.counts[j]) continue;
        const auto next = grid.value(cell + stride[j]);
        for (int c = 0; c < nu; ++c) {
          const double diff = next[c] - here[c];
          sq += diff * diff;
        }
      }
      acc.add(std::sqrt(sq));
    }
  });
  // |DU| ~ |diff| / h, weighted by h^{D}.
  return sum * ipow(g.h, D - 1);
}

}  // namespace

double gradient_energy(const SlabMap& U) {
  const auto& g = U.grid.geometry();
  return gradient_energy_cells(U, Index(g.dim(), 0), g.counts);
}

double gradient_energy(const SlabMap& U, std::span<const double> lo, std::span<const double> hi) {
  const auto& g = U.grid.geometry();
  const int D = g.dim();
  if (static_cast<int>(lo.size()) != D || static_cast<int>(hi.size()) != D) {
    throw DomainError("energy region has wrong dimension");
  }
  const double tol = 1e-9 * g.h;
  Index first(D), last(D);
  for (int j = 0; j < D; ++j) {
    if (lo[j] < g.lower(j) - tol || hi[j] > g.upper(j) + tol || lo[j] > hi[j]) {
      throw DomainError("energy region leaves the slab on axis " + std::to_string(j));
    }
    // Cells with center in [lo, hi].
    first[j] = static_cast<long>(std::ceil((lo[j] - g.origin[j]) / g.h - 0.5 - 1e-9));
    last[j] = static_cast<long>(std::floor((hi[j] - g.origin[j]) / g.h - 0.5 + 1e-9)) + 1;
    first[j] = std::max(first[j], 0L);
    last[j] = std::min(last[j], g.counts[j]);
  }
  return gradient_energy_cells(U, first, last);
}

GridMap trace_slice(const SlabMap& U, TraceSide side) {
  const GridMap& grid = U.grid;
  const auto& g = grid.geometry();
  const int d = U.base_dim();
  GridGeometry base;
  base.origin.assign(g.origin.begin(), g.origin.begin() + d);
  base.h = g.h;
  base.counts.assign(g.counts.begin(), g.counts.begin() + d);
  const long nt = g.counts[d];
  const long layer = side == TraceSide::Bottom ? 0 : nt - 1;
  const int nu = grid.nu();
  std::vector<double> values;
  values.reserve(base.cell_count() * static_cast<std::size_t>(nu));
  for (std::size_t c = 0; c < base.cell_count(); ++c) {
    const auto v = grid.value(c * static_cast<std::size_t>(nt) + static_cast<std::size_t>(layer));
    values.insert(values.end(), v.begin(), v.end());
  }
  const auto tail = grid.tail();
  return GridMap(grid.manifold(), std::move(base), std::move(values), Point(tail.begin(), tail.end()));
}

TraceReport trace_inequality_check(const SlabMap& U, const GridMap& u, std::span<const double> radii) {
  const GridMap& grid = U.grid;
  const auto& g = grid.geometry();
  const int d = U.base_dim();
  if (u.dim() != d) throw DomainError("trace map dimension does not match the slab");
  if (!(u.manifold() == grid.manifold())) throw DomainError("trace map and slab use different manifolds");
  const Manifold& m = grid.manifold();
  const double hf = g.h;
  const long nt = g.counts[d];

  TraceReport report;
  for (double r : radii) {
    if (r < 2.0 * hf) {
      throw ResolutionError("trace radius " + std::to_string(r) + " is below 2 h_fine");
    }
    if (r > U.t_upper() - U.t_lower() + 1e-12) {
      throw DomainError("trace radius " + std::to_string(r) + " exceeds the slab height");
    }
    TraceRow row;
    row.r = r;
    // Sub-sampling so that r spans at least kSamplesPerRadius sample spacings.
    const int s_base = refinement(u.h(), r);
    row.lhs1 = pair_integral(u, r, Norm::Euclidean, s_base) / ipow(r, d);

    const int q = refinement(hf, r);
    const double hs = hf / q;
    // x samples: the slab's lateral lattice refined q times, dilated by r.
    const long pad = static_cast<long>(std::ceil(r / hs));
    std::vector<long> count(d);
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) {
      count[j] = g.counts[j] * q + 2 * pad;
      total *= static_cast<std::size_t>(count[j]);
    }
    const long layers = std::min(nt * q, static_cast<long>(std::ceil(r / hs)));
    // Offsets (dx, k) with |(dx, k + 1/2)| hs <= r.
    std::vector<std::pair<Index, long>> offsets;
    {
      Index dx(d, -pad);
      while (true) {
        double r2 = 0.0;
        for (long v : dx) r2 += static_cast<double>(v * v);
        for (long k = 0; k < layers; ++k) {
          const double z = static_cast<double>(k) + 0.5;
          if ((r2 + z * z) * hs * hs <= r * r) offsets.emplace_back(dx, k);
        }
        int j = d - 1;
        while (j >= 0 && dx[j] == pad) {
          dx[j] = -pad;
          --j;
        }
        if (j < 0) break;
        ++dx[j];
      }
    }
    const auto tail = grid.tail();
    const double sum = parallel_sum(total, [&](std::size_t lo, std::size_t hi, CompensatedSum& acc) {
      Index xi(d);
      std::vector<double> x(d);
      for (std::size_t flat = lo; flat < hi; ++flat) {
        std::size_t rest = flat;
        for (int j = d - 1; j >= 0; --j) {
          xi[j] = static_cast<long>(rest % static_cast<std::size_t>(count[j])) - pad;
          rest /= static_cast<std::size_t>(count[j]);
          x[j] = g.origin[j] + (static_cast<double>(xi[j]) + 0.5) * hs;
        }
        const auto ux = u.at(x);
        for (const auto& [dx, k] : offsets) {
          bool inside = true;
          std::size_t cell = 0;
          for (int j = 0; j < d; ++j) {
            const long yi = xi[j] + dx[j];
            if (yi < 0 || yi >= g.counts[j] * q) {
              inside = false;
              break;
            }
            cell = cell * static_cast<std::size_t>(g.counts[j]) + static_cast<std::size_t>(yi / q);
          }
          const auto Uy =
              inside ? grid.value(cell * static_cast<std::size_t>(nt) + static_cast<std::size_t>(k / q)) : tail;
          acc.add(m.dist_unchecked(ux, Uy));
        }
      }
    });
    row.lhs2 = sum * ipow(hs, 2 * d + 1) / ipow(r, d + 1);

    std::vector<double> lo(g.origin), hi(d + 1);
    for (int j = 0; j <= d; ++j) hi[j] = g.upper(j);
    hi[d] = U.t_lower() + r;
    row.energy = gradient_energy(U, lo, hi);
    row.ratio1 = ratio(row.lhs1, row.energy);
    row.ratio2 = ratio(row.lhs2, row.energy);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace w11
