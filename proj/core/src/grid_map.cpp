#include "w11/grid_map.hpp"

#include <cmath>
#include <string>

#include "w11/error.hpp"

namespace w11 {

std::size_t GridGeometry::cell_count() const noexcept {
  std::size_t n = 1;
  for (long c : counts) n *= static_cast<std::size_t>(c);
  return n;
}

double GridGeometry::cell_volume() const noexcept {
  double v = 1.0;
  for (int j = 0; j < dim(); ++j) v *= h;
  return v;
}

double GridGeometry::window_volume() const noexcept {
  return cell_volume() * static_cast<double>(cell_count());
}

double GridGeometry::diameter() const noexcept {
  double s = 0.0;
  for (long c : counts) s += (h * c) * (h * c);
  return std::sqrt(s);
}

std::size_t GridGeometry::ravel(const Index& idx) const noexcept {
  std::size_t flat = 0;
  for (int j = 0; j < dim(); ++j) {
    flat = flat * static_cast<std::size_t>(counts[j]) + static_cast<std::size_t>(idx[j]);
  }
  return flat;
}

Index GridGeometry::unravel(std::size_t cell) const {
  Index idx(counts.size());
  for (int j = dim() - 1; j >= 0; --j) {
    idx[j] = static_cast<long>(cell % static_cast<std::size_t>(counts[j]));
    cell /= static_cast<std::size_t>(counts[j]);
  }
  return idx;
}

std::vector<double> GridGeometry::cell_center(std::size_t cell) const {
  const Index idx = unravel(cell);
  std::vector<double> x(counts.size());
  for (int j = 0; j < dim(); ++j) x[j] = origin[j] + h * (static_cast<double>(idx[j]) + 0.5);
  return x;
}

bool GridGeometry::locate(std::span<const double> x, std::size_t& cell) const noexcept {
  std::size_t flat = 0;
  for (int j = 0; j < dim(); ++j) {
    const double f = std::floor((x[j] - origin[j]) / h);
    if (!(f >= 0.0) || f >= static_cast<double>(counts[j])) return false;
    flat = flat * static_cast<std::size_t>(counts[j]) + static_cast<std::size_t>(f);
  }
  cell = flat;
  return true;
}

GridMap::GridMap(Manifold manifold, GridGeometry geometry, std::vector<double> values, Point tail)
    : manifold_(std::move(manifold)),
      geometry_(std::move(geometry)),
      values_(std::move(values)),
      tail_(std::move(tail)) {
  if (geometry_.dim() < 1) throw DomainError("grid map needs dimension >= 1");
  if (static_cast<int>(geometry_.origin.size()) != geometry_.dim()) {
    throw DomainError("grid origin has wrong dimension");
  }
  if (!(geometry_.h > 0.0) || !std::isfinite(geometry_.h)) {
    throw DomainError("grid cell size must be positive");
  }
  for (long c : geometry_.counts) {
    if (c < 1) throw DomainError("grid counts must be positive");
  }
  const std::size_t expected = geometry_.cell_count() * static_cast<std::size_t>(nu());
  if (values_.size() != expected) {
    throw DomainError("grid map has " + std::to_string(values_.size()) + " coordinates, expected " +
                      std::to_string(expected));
  }
  manifold_.require_on(tail_, "tail value");
  for (std::size_t c = 0; c < cell_count(); ++c) {
    if (!manifold_.contains(value(c))) {
      throw DomainError("cell " + std::to_string(c) + " is not on manifold " + manifold_.id());
    }
  }
}

GridMap GridMap::constant(Manifold manifold, GridGeometry geometry, const Point& value) {
  std::vector<double> values;
  values.reserve(geometry.cell_count() * value.size());
  for (std::size_t c = 0; c < geometry.cell_count(); ++c) {
    values.insert(values.end(), value.begin(), value.end());
  }
  return GridMap(std::move(manifold), std::move(geometry), std::move(values), value);
}

PointView GridMap::at(std::span<const double> x) const noexcept {
  std::size_t cell = 0;
  if (geometry_.locate(x, cell)) return value(cell);
  return tail();
}

}  // namespace w11
