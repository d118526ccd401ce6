#include "w11tools/report.hpp"

#include <cmath>
#include <sstream>

namespace w11tools {

ordered_json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

ordered_json point(w11::PointView p) {
  ordered_json a = ordered_json::array();
  for (double x : p) a.push_back(number(x));
  return a;
}

ordered_json to_json(const w11::EnergyValue& e) {
  return {{"value", number(e.value)}, {"supersampling", e.supersampling}};
}

ordered_json to_json(const w11::BbmReport& r) {
  ordered_json steps = ordered_json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"R", number(s.R)},
                     {"eta", number(s.eta)},
                     {"y", point(s.y)},
                     {"value", point(s.value)},
                     {"objective", number(s.objective)},
                     {"averaged_bound", number(s.averaged_bound)},
                     {"rhs", number(s.rhs)}});
  }
  return {{"b_star", point(r.b_star)}, {"lhs", number(r.lhs.value)}, {"steps", steps}};
}

ordered_json to_json(const w11::DyadicSchedule& s) {
  ordered_json levels = ordered_json::array();
  for (const auto& l : s.levels) {
    levels.push_back({{"k", l.k},
                      {"defect", {number(l.defect[0]), number(l.defect[1])}},
                      {"translation", {number(l.translation[0]), number(l.translation[1])}},
                      {"defect_threshold", number(l.defect_threshold)},
                      {"translation_threshold", number(l.translation_threshold)},
                      {"certified", l.certified},
                      {"terminal", l.terminal}});
  }
  ordered_json layers = ordered_json::array();
  for (int side = 0; side < 2; ++side) {
    for (const auto& l : s.layers(side)) {
      layers.push_back({{"side", l.side}, {"n", l.n}, {"k", l.k}, {"lo", number(l.lo)}, {"hi", number(l.hi)}});
    }
  }
  return {{"L", number(s.lattice.L)},
          {"gamma", number(s.gamma)},
          {"floor_level", s.floor_level},
          {"n_max", s.n_max},
          {"truncated", s.truncated},
          {"notice", s.notice},
          {"levels", levels},
          {"layers", layers}};
}

ordered_json to_json(const w11::JumpEnergy& j) {
  return {{"total", number(j.total)},
          {"interface", number(j.interface)},
          {"parallel", number(j.parallel)},
          {"perpendicular", number(j.perpendicular)}};
}

ordered_json to_json(const w11::JumpBounds& b) {
  return {{"integral_dist", number(b.integral_dist)},
          {"gamma", number(b.gamma)},
          {"sup2", number(b.sup2)},
          {"sup6", number(b.sup6)},
          {"interface", number(b.interface)},
          {"parallel", number(b.parallel)},
          {"parallel_direct", number(b.parallel_direct)},
          {"perpendicular", number(b.perpendicular)},
          {"perpendicular_direct", number(b.perpendicular_direct)},
          {"total", number(b.total)}};
}

ordered_json to_json(const w11::StripReport& r) {
  const auto& g = r.slab.grid.geometry();
  return {{"schedule", to_json(r.schedule)},
          {"jumps", to_json(r.jumps)},
          {"bounds", to_json(r.bounds)},
          {"h_fine", number(g.h)},
          {"slab_counts", g.counts},
          {"energy", number(r.energy)},
          {"integral_dist", number(r.integral_dist)},
          {"nonlocal_unit", number(r.nonlocal_unit)},
          {"rhs", number(r.rhs)},
          {"ratio", number(r.ratio)},
          {"trace_error", {number(r.trace_error[0]), number(r.trace_error[1])}}};
}

ordered_json to_json(const w11::CubeReport& r) {
  ordered_json tr = ordered_json::array();
  for (double e : r.trace_error) tr.push_back(number(e));
  return {{"strip", to_json(r.strip)},
          {"boundary_integral", number(r.boundary_integral)},
          {"ratio", number(r.ratio)},
          {"trace_error", tr}};
}

ordered_json to_json(const w11::HalfspaceReport& r) {
  return {{"bbm", to_json(r.bbm)},
          {"strip", to_json(r.strip)},
          {"energy", number(r.energy)},
          {"theta_limit", number(r.theta_limit)},
          {"ratio", number(r.ratio)}};
}

ordered_json to_json(const w11::TraceReport& r) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"r", number(row.r)},
                    {"lhs1", number(row.lhs1)},
                    {"lhs2", number(row.lhs2)},
                    {"energy", number(row.energy)},
                    {"ratio1", number(row.ratio1)},
                    {"ratio2", number(row.ratio2)}});
  }
  return {{"rows", rows}};
}

std::string to_csv(const ordered_json& flat) {
  std::ostringstream out;
  out << "name,value\n";
  for (const auto& [key, value] : flat.items()) {
    out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  return out.str();
}

}  // namespace w11tools
