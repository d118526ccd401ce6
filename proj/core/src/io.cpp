#include "w11/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "w11/error.hpp"

namespace w11 {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw SchemaError(std::string("missing field '") + name + "'");
  return j.at(name);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw SchemaError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(number(x, what));
  return out;
}

GridMap grid_from_json(const json& j, int extra_dim) {
  const json& dj = field(j, "d");
  if (!dj.is_number_integer() || dj.get<long>() < 1) throw SchemaError("d must be a positive integer");
  const int d = dj.get<int>() + extra_dim;
  Manifold m;
  const json& mid = field(j, "manifold_id");
  if (!mid.is_string()) throw SchemaError("manifold_id must be a string");
  try {
    m = Manifold::parse(mid.get<std::string>());
  } catch (const Error& e) {
    throw SchemaError(e.what());
  }
  GridGeometry g;
  g.origin = numbers(field(j, "origin"), "origin");
  g.h = number(field(j, "h"), "h");
  const json& cj = field(j, "counts");
  if (!cj.is_array()) throw SchemaError("counts must be an array");
  for (const auto& c : cj) {
    if (!c.is_number_integer() || c.get<long>() < 1) throw SchemaError("counts must be positive integers");
    g.counts.push_back(c.get<long>());
  }
  if (static_cast<int>(g.origin.size()) != d || static_cast<int>(g.counts.size()) != d) {
    throw SchemaError("origin and counts must have " + std::to_string(d) + " entries");
  }
  if (!(g.h > 0.0)) throw SchemaError("h must be positive");
  const int nu = m.ambient_dim();
  const Point tail = numbers(field(j, "tail"), "tail");
  if (static_cast<int>(tail.size()) != nu) throw SchemaError("tail must have " + std::to_string(nu) + " coordinates");
  const json& vj = field(j, "values");
  if (!vj.is_array() || vj.size() != g.cell_count()) {
    throw SchemaError("values must hold " + std::to_string(g.cell_count()) + " points");
  }
  std::vector<double> values;
  values.reserve(g.cell_count() * static_cast<std::size_t>(nu));
  for (const auto& v : vj) {
    const auto p = numbers(v, "value");
    if (static_cast<int>(p.size()) != nu) throw SchemaError("each value must have " + std::to_string(nu) + " coordinates");
    values.insert(values.end(), p.begin(), p.end());
  }
  return GridMap(m, std::move(g), std::move(values), tail);
}

json grid_to_json(const GridMap& u, int extra_dim) {
  const auto& g = u.geometry();
  json j;
  j["d"] = g.dim() - extra_dim;
  j["origin"] = g.origin;
  j["h"] = g.h;
  j["counts"] = g.counts;
  j["manifold_id"] = u.manifold().id();
  j["tail"] = Point(u.tail().begin(), u.tail().end());
  json values = json::array();
  for (std::size_t c = 0; c < u.cell_count(); ++c) {
    const auto v = u.value(c);
    values.push_back(Point(v.begin(), v.end()));
  }
  j["values"] = std::move(values);
  return j;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

GridMap parse_grid_map(std::string_view text) { return grid_from_json(parse_json(text), 0); }

std::string format_grid_map(const GridMap& u) { return grid_to_json(u, 0).dump() + "\n"; }

SlabMap parse_slab_map(std::string_view text) {
  const json j = parse_json(text);
  SlabMap U{grid_from_json(j, 1)};
  if (j.contains("layer_tails")) {
    const json& lt = j.at("layer_tails");
    const auto& g = U.grid.geometry();
    if (!lt.is_array() || static_cast<long>(lt.size()) != g.counts.back()) {
      throw SchemaError("layer_tails must hold one tail per t-layer");
    }
    const Manifold& m = U.grid.manifold();
    for (const auto& t : lt) {
      const auto p = numbers(t, "layer tail");
      if (static_cast<int>(p.size()) != m.ambient_dim() || m.dist(p, U.grid.tail()) > m.tolerance()) {
        throw SchemaError("layer tails must all equal the slab tail");
      }
    }
  }
  return U;
}

std::string format_slab_map(const SlabMap& U) {
  json j = grid_to_json(U.grid, 1);
  const Point tail(U.grid.tail().begin(), U.grid.tail().end());
  j["layer_tails"] = json::array();
  for (long t = 0; t < U.grid.geometry().counts.back(); ++t) j["layer_tails"].push_back(tail);
  return j.dump() + "\n";
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

GridMap read_grid_map(const std::string& path) { return parse_grid_map(read_text(path)); }

SlabMap read_slab_map(const std::string& path) { return parse_slab_map(read_text(path)); }

}  // namespace w11
