#pragma once

#include <span>
#include <vector>

#include "w11/grid_map.hpp"
#include "w11/slab_map.hpp"

namespace w11 {

/// \int |DU| over the whole slab: forward differences of the embedding
/// coordinates, Frobenius norm, weight h^{d+1}. No differences are taken
/// across the slab boundary.
double gradient_energy(const SlabMap& U);

/// Same, restricted to cells whose centers lie in the box [lo, hi].
/// Throws DomainError when the box leaves the slab.
double gradient_energy(const SlabMap& U, std::span<const double> lo, std::span<const double> hi);

enum class TraceSide { Bottom, Top };

/// The boundary-adjacent cell layer of U as a map on R^d.
GridMap trace_slice(const SlabMap& U, TraceSide side);

struct TraceRow {
  double r = 0.0;
  /// \iint_{|x-y|<=r} dist(u(x), u(y)) / r^d.
  double lhs1 = 0.0;
  /// \iint_{x in R^d, y in R^d x (0,r), |x-y|<=r} dist(u(x), U(y)) / r^{d+1}.
  double lhs2 = 0.0;
  /// \int_{R^d x (0, r)} |DU|, measured from the slab bottom.
  double energy = 0.0;
  double ratio1 = 0.0;
  double ratio2 = 0.0;
};

struct TraceReport {
  std::vector<TraceRow> rows;
};

/// Evaluates both trace inequalities for the bottom trace u of U.
/// Each r must satisfy 2 h_fine <= r <= slab height.
TraceReport trace_inequality_check(const SlabMap& U, const GridMap& u, std::span<const double> radii);

}  // namespace w11
