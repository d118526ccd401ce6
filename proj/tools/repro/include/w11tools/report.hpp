#pragma once

#include <json.hpp>

#include <w11/dyadic.hpp>
#include <w11/nonlocal.hpp>
#include <w11/trace.hpp>

namespace w11tools {

using nlohmann::ordered_json;

/// Finite doubles as numbers, infinities and NaN as strings.
ordered_json number(double x);
ordered_json point(w11::PointView p);

ordered_json to_json(const w11::EnergyValue& e);
ordered_json to_json(const w11::BbmReport& r);
ordered_json to_json(const w11::DyadicSchedule& s);
ordered_json to_json(const w11::JumpEnergy& j);
ordered_json to_json(const w11::JumpBounds& b);
/// Everything except the slab values.
ordered_json to_json(const w11::StripReport& r);
ordered_json to_json(const w11::CubeReport& r);
ordered_json to_json(const w11::HalfspaceReport& r);
ordered_json to_json(const w11::TraceReport& r);

/// Rows "name,value" for a flat JSON object of numbers.
std::string to_csv(const ordered_json& flat);

}  // namespace w11tools
