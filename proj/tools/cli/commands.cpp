#include "commands.hpp"

#include <algorithm>

#include <w11/dyadic.hpp>
#include <w11/error.hpp>
#include <w11/io.hpp>
#include <w11/nonlocal.hpp>
#include <w11/trace.hpp>
#include <w11tools/acceptance.hpp>
#include <w11tools/corpus.hpp>

namespace w11cli {

namespace {

using w11tools::number;
using w11tools::to_json;

void require_sorted(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw w11::UsageError(std::string(what) + " is empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) throw w11::UsageError(std::string(what) + " entries must be positive");
    if (i > 0 && !(v[i] > v[i - 1])) throw w11::UsageError(std::string(what) + " must be strictly increasing");
  }
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw w11::UsageError(std::string(what) + " must be positive");
}

w11::StripOptions strip_options(const RunConfig& c) {
  require_positive(c.L, "--L");
  if (c.n_max < 1) throw w11::UsageError("--n-max must be at least 1");
  if (c.h_fine < 0.0) throw w11::UsageError("--h-fine must be positive (0 picks it automatically)");
  w11::StripOptions o;
  o.L = c.L;
  o.n_max = c.n_max;
  o.h_fine = c.h_fine;
  o.s = c.s;
  return o;
}

void dump_slab(const RunConfig& c, const w11::SlabMap& slab) {
  if (!c.slab_out.empty()) w11::write_text(c.slab_out, w11::format_slab_map(slab));
}

ordered_json energy(const RunConfig& c) {
  const w11::GridMap u = w11::read_grid_map(c.in);
  ordered_json r;
  r["command"] = "energy";
  r["integral_dist_to_tail"] = to_json(w11::integral_dist_to_point(u, u.tail()));
  r["window_pair_integral"] = number(w11::window_pair_integral(u));
  return r;
}

ordered_json theta(const RunConfig& c) {
  require_positive(c.R, "--R");
  const w11::GridMap u = w11::read_grid_map(c.in);
  const w11::Norm norm = w11::parse_norm(c.norm);
  ordered_json r;
  r["command"] = "theta";
  r["R"] = number(c.R);
  r["norm"] = w11::to_string(norm);
  r["theta"] = to_json(w11::theta(u, c.R, norm, c.s));
  return r;
}

ordered_json bbm(const RunConfig& c) {
  require_sorted(c.schedule, "--schedule");
  const w11::GridMap u = w11::read_grid_map(c.in);
  ordered_json r;
  r["command"] = "bbm";
  r["bbm"] = to_json(w11::asymptotic_mean(u, c.schedule, c.s));
  return r;
}

ordered_json extend_strip(const RunConfig& c) {
  const w11::GridMap u0 = w11::read_grid_map(c.u0);
  const w11::GridMap u1 = w11::read_grid_map(c.u1);
  const w11::StripReport s = w11::strip_extension(u0, u1, strip_options(c));
  dump_slab(c, s.slab);
  ordered_json r;
  r["command"] = "extend-strip";
  r["strip"] = to_json(s);
  return r;
}

ordered_json extend_cube(const RunConfig& c) {
  std::vector<w11::GridMap> faces;
  for (const auto& path : c.faces) faces.push_back(w11::read_grid_map(path));
  if (faces.empty()) throw w11::UsageError("--faces is required");
  if (c.n_max < 1) throw w11::UsageError("--n-max must be at least 1");
  const w11::Point p =
      c.point.empty() ? w11tools::base_point(faces[0].manifold()) : w11::Point(c.point.begin(), c.point.end());
  const w11::CubeReport cube = w11::cube_extension(faces, p, c.n_max, c.h_fine);
  dump_slab(c, cube.strip.slab);
  ordered_json r;
  r["command"] = "extend-cube";
  r["cube"] = to_json(cube);
  return r;
}

ordered_json extend_halfspace(const RunConfig& c) {
  require_sorted(c.schedule, "--schedule");
  const w11::GridMap u = w11::read_grid_map(c.in);
  const w11::HalfspaceReport hs = w11::halfspace_extension(u, c.schedule, strip_options(c));
  dump_slab(c, hs.strip.slab);
  ordered_json r;
  r["command"] = "extend-halfspace";
  r["halfspace"] = to_json(hs);
  return r;
}

ordered_json trace_check(const RunConfig& c) {
  require_sorted(c.radii, "--r");
  const w11::SlabMap U = w11::read_slab_map(c.in);
  const w11::GridMap u = w11::read_grid_map(c.u0);
  ordered_json r;
  r["command"] = "trace-check";
  r["trace"] = to_json(w11::trace_inequality_check(U, u, c.radii));
  return r;
}

ordered_json gen_corpus(const RunConfig& c) {
  if (c.slab_out.empty()) throw w11::UsageError("--out is required");
  w11tools::CorpusSpec spec;
  spec.family = w11tools::parse_family(c.family);
  spec.manifold = c.manifold;
  spec.d = c.d;
  spec.n = c.n;
  spec.h = c.h;
  spec.bumps = c.bumps;
  spec.seed = c.seed;
  if (spec.d < 1) throw w11::UsageError("--d must be at least 1");
  if (spec.n < 1) throw w11::UsageError("--n must be at least 1");
  require_positive(spec.h, "--h");
  const w11::GridMap u = w11tools::generate(spec);
  w11::write_text(c.slab_out, w11::format_grid_map(u));
  ordered_json r;
  r["command"] = "gen-corpus";
  r["family"] = w11tools::to_string(spec.family);
  r["manifold"] = spec.manifold;
  r["d"] = spec.d;
  r["n"] = spec.n;
  r["h"] = number(spec.h);
  r["seed"] = spec.seed;
  r["cells"] = u.cell_count();
  return r;
}

ordered_json repro(const RunConfig& c) {
  w11tools::ReproOptions o;
  o.seed = c.seed;
  std::vector<w11tools::CriterionResult> results;
  ordered_json r;
  r["command"] = "repro";
  r["seed"] = c.seed;
  r["report"] = w11tools::run_repro(o, &results);
  results.push_back(w11tools::check_determinism(o));
  ordered_json summary = ordered_json::object();
  for (const auto& res : results) {
    summary["criterion_" + std::to_string(res.id)] = res.passed ? "pass" : "fail";
  }
  r["summary"] = std::move(summary);
  r["determinism"] = results.back().summary;
  return r;
}

void flatten_into(const ordered_json& v, const std::string& prefix, ordered_json& out) {
  if (v.is_object()) {
    for (const auto& [key, child] : v.items()) flatten_into(child, prefix.empty() ? key : prefix + "." + key, out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten_into(v[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out[prefix] = v;
  }
}

}  // namespace

ordered_json run(const RunConfig& c) {
  if (c.command == "energy") return energy(c);
  if (c.command == "theta") return theta(c);
  if (c.command == "bbm") return bbm(c);
  if (c.command == "extend-strip") return extend_strip(c);
  if (c.command == "extend-cube") return extend_cube(c);
  if (c.command == "extend-halfspace") return extend_halfspace(c);
  if (c.command == "trace-check") return trace_check(c);
  if (c.command == "gen-corpus") return gen_corpus(c);
  if (c.command == "repro") return repro(c);
  throw w11::UsageError("unknown command " + c.command);
}

ordered_json flatten(const ordered_json& report) {
  ordered_json out = ordered_json::object();
  flatten_into(report, "", out);
  return out;
}

}  // namespace w11cli
