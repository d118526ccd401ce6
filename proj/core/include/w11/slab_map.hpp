#pragma once

#include "w11/grid_map.hpp"

namespace w11 {

/// Discretised map U on a (d+1)-dimensional slab; the last axis is the
/// transverse coordinate t. Outside the lateral window U equals the tail.
struct SlabMap {
  GridMap grid;

  int base_dim() const noexcept { return grid.dim() - 1; }
  int t_axis() const noexcept { return grid.dim() - 1; }
  double t_lower() const { return grid.geometry().lower(t_axis()); }
  double t_upper() const { return grid.geometry().upper(t_axis()); }
};

}  // namespace w11
