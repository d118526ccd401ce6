#pragma once

#include <cstddef>
#include <vector>

#include "w11/manifold.hpp"

namespace w11 {

/// Integer multi-index, one entry per axis.
using Index = std::vector<long>;

/// Uniform axis-aligned grid geometry: `counts[j]` cells of side `h` starting
/// at `origin[j]`. Cells are stored row-major (last axis fastest).
struct GridGeometry {
  std::vector<double> origin;
  double h = 1.0;
  std::vector<long> counts;

  int dim() const noexcept { return static_cast<int>(counts.size()); }
  std::size_t cell_count() const noexcept;
  double cell_volume() const noexcept;
  double window_volume() const noexcept;
  double lower(int axis) const { return origin[axis]; }
  double upper(int axis) const { return origin[axis] + h * static_cast<double>(counts[axis]); }
  /// Largest Euclidean distance between two points of the window.
  double diameter() const noexcept;

  std::size_t ravel(const Index& idx) const noexcept;
  Index unravel(std::size_t cell) const;
  std::vector<double> cell_center(std::size_t cell) const;
  /// Cell containing x (half-open cells); false when x is outside.
  bool locate(std::span<const double> x, std::size_t& cell) const noexcept;

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;
};

/// A map u: R^d -> N, constant on each grid cell and equal to `tail` outside
/// the window. Immutable after construction.
class GridMap {
 public:
  /// Empty placeholder; no cells.
  GridMap() = default;

  /// `values` holds cell_count() points of the manifold's ambient dimension,
  /// flattened row-major. Throws DomainError for off-manifold data.
  GridMap(Manifold manifold, GridGeometry geometry, std::vector<double> values, Point tail);

  /// Every cell equal to `value`.
  static GridMap constant(Manifold manifold, GridGeometry geometry, const Point& value);

  const Manifold& manifold() const noexcept { return manifold_; }
  const GridGeometry& geometry() const noexcept { return geometry_; }
  int dim() const noexcept { return geometry_.dim(); }
  int nu() const noexcept { return manifold_.ambient_dim(); }
  double h() const noexcept { return geometry_.h; }
  std::size_t cell_count() const noexcept { return geometry_.cell_count(); }

  PointView value(std::size_t cell) const noexcept {
    return {values_.data() + cell * static_cast<std::size_t>(nu()), static_cast<std::size_t>(nu())};
  }
  PointView tail() const noexcept { return tail_; }
  const std::vector<double>& raw_values() const noexcept { return values_; }

  /// u(x), including the tail outside the window.
  PointView at(std::span<const double> x) const noexcept;

 private:
  Manifold manifold_;
  GridGeometry geometry_;
  std::vector<double> values_;
  Point tail_;
};

}  // namespace w11
