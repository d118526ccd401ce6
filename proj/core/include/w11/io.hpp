#pragma once

#include <string>
#include <string_view>

#include "w11/grid_map.hpp"
#include "w11/slab_map.hpp"

namespace w11 {

/// JSON object {d, origin, h, counts, manifold_id, tail, values}; values is a
/// flat row-major array of nu-tuples. Malformed input raises SchemaError.
GridMap parse_grid_map(std::string_view json);
std::string format_grid_map(const GridMap& u);

/// Same schema in dimension d + 1 with an extra `layer_tails` array (one
/// tail per t-layer).
SlabMap parse_slab_map(std::string_view json);
std::string format_slab_map(const SlabMap& U);

GridMap read_grid_map(const std::string& path);
SlabMap read_slab_map(const std::string& path);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace w11
