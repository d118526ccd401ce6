#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <w11/dyadic.hpp>
#include <w11/numeric.hpp>
#include <w11/trace.hpp>

#include "w11tools/acceptance.hpp"
#include "w11tools/fixtures.hpp"

namespace w11tools {

namespace {

constexpr double kRoundoff = 1e-12;
constexpr double kStripCap = 10.0;
constexpr double kTraceCap = 100.0;
constexpr double kTraceStability = 0.20;
constexpr int kNmax = 3;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

bool below(double value, double bound) { return value <= bound * (1.0 + kRoundoff) + kRoundoff; }

struct Built {
  w11::DyadicSchedule schedule;
  w11::BVExtension bv;
};

Built build(const FixturePair& p) {
  w11::DyadicLattice lattice{1.0, {}};
  const auto u0 = w11::pad_to_lattice(p.u0, lattice);
  const auto u1 = w11::pad_to_lattice(p.u1, lattice);
  Built b;
  b.schedule = w11::select_schedule(u0, u1, lattice, kNmax);
  b.bv = w11::build_bv_extension(u0, u1, b.schedule);
  return b;
}

w11::StripOptions strip_options(double h_fine) {
  w11::StripOptions o;
  o.L = 1.0;
  o.n_max = kNmax;
  o.h_fine = h_fine;
  return o;
}

}  // namespace

CriterionResult check_jump_bound(const ReproOptions& o) {
  CriterionResult r{5, "BV jump bound", true, "", ordered_json::array()};
  int failures = 0;
  double worst_total = 0.0;
  for (const auto& p : extension_fixtures(o.seed)) {
    const Built b = build(p);
    const auto j = w11::jump_energy(b.bv);
    const auto B = w11::jump_bounds(b.bv);
    const bool total = below(j.total, B.total);
    const bool iface = below(j.interface, B.interface);
    const bool par = below(j.parallel, B.parallel) && below(j.parallel, B.parallel_direct);
    const bool perp = below(j.perpendicular, B.perpendicular) && below(j.perpendicular, B.perpendicular_direct);
    const bool ok = total && iface && par && perp;
    if (!ok) ++failures;
    if (B.total > 0.0) worst_total = std::max(worst_total, j.total / B.total);
    r.details.push_back({{"fixture", p.name},
                         {"jumps", to_json(j)},
                         {"bounds", to_json(B)},
                         {"total_ok", total},
                         {"interface_ok", iface},
                         {"parallel_ok", par},
                         {"perpendicular_ok", perp}});
  }
  r.passed = failures == 0;
  r.summary = std::to_string(failures) + " fixtures violate a face-class bound; max total / bound = " + fmt(worst_total);
  return r;
}

CriterionResult check_trace_round_trip(const ReproOptions& o) {
  CriterionResult r{6, "Trace round-trip", true, "", ordered_json::array()};
  int failures = 0;
  double worst = 0.0;
  for (const auto& p : extension_fixtures(o.seed)) {
    const Built b = build(p);
    const auto& g = b.bv.window();
    const double gamma = b.schedule.gamma;
    ordered_json rows = ordered_json::array();
    bool ok = true;
    for (int side = 0; side < 2; ++side) {
      const w11::GridMap& u = b.bv.data[side];
      for (const auto& layer : b.schedule.layers(side)) {
        const double t = 0.5 * (layer.lo + layer.hi);
        const double defect = w11::parallel_sum(g.cell_count(), [&](std::size_t lo, std::size_t hi,
                                                                    w11::CompensatedSum& acc) {
          for (std::size_t c = lo; c < hi; ++c) {
            const auto x = g.cell_center(c);
            acc.add(u.manifold().dist_unchecked(u.value(c), b.bv.value_at(x, t)));
          }
        }) * g.cell_volume();
        const double bound = std::ldexp(gamma, -layer.n);
        const bool at_floor = layer.k == b.schedule.floor_level;
        const bool layer_ok = below(defect, bound) && (!at_floor || defect == 0.0);
        ok = ok && layer_ok;
        if (bound > 0.0) worst = std::max(worst, defect / bound);
        rows.push_back({{"side", side},
                        {"n", layer.n},
                        {"k", layer.k},
                        {"defect", number(defect)},
                        {"bound", number(bound)},
                        {"floor", at_floor},
                        {"ok", layer_ok}});
      }
    }
    const auto strip = w11::strip_extension(p.u0, p.u1, strip_options(p.h_fine));
    const bool exact = strip.trace_error[0] == 0.0 && strip.trace_error[1] == 0.0;
    ok = ok && exact;
    if (!ok) ++failures;
    r.details.push_back({{"fixture", p.name},
                         {"gamma", number(gamma)},
                         {"layers", rows},
                         {"slab_trace_error", {number(strip.trace_error[0]), number(strip.trace_error[1])}},
                         {"ok", ok}});
  }
  r.passed = failures == 0;
  r.summary = std::to_string(failures) + " fixtures with a layer defect above 2^-n Gamma or an inexact slab trace; max defect / bound = " +
              fmt(worst);
  return r;
}

CriterionResult check_strip_bound(const ReproOptions& o) {
  CriterionResult r{7, "Strip extension bound", true, "", ordered_json::array()};
  double worst = 0.0;
  bool finite = true, monotone = true;
  for (const auto& p : extension_fixtures(o.seed)) {
    const auto coarse = w11::strip_extension(p.u0, p.u1, strip_options(p.h_fine));
    const auto fine = w11::strip_extension(p.u0, p.u1, strip_options(p.h_fine / 2.0));
    finite = finite && std::isfinite(coarse.ratio) && std::isfinite(fine.ratio);
    worst = std::max({worst, coarse.ratio, fine.ratio});
    const bool mono = below(fine.ratio, coarse.ratio);
    monotone = monotone && mono;
    r.details.push_back({{"fixture", p.name},
                         {"energy", {number(coarse.energy), number(fine.energy)}},
                         {"rhs", number(coarse.rhs)},
                         {"ratio", {number(coarse.ratio), number(fine.ratio)}},
                         {"non_increasing", mono}});
  }
  r.passed = finite && worst <= kStripCap && monotone;
  r.summary = "max int|DU| / rhs = " + fmt(worst) + " (cap " + fmt(kStripCap) + "), finite: " + (finite ? "yes" : "no") +
              ", non-increasing under h_fine/2: " + (monotone ? "yes" : "no");
  return r;
}

CriterionResult check_trace_inequalities(const ReproOptions& o) {
  CriterionResult r{8, "Trace inequalities", true, "", ordered_json::array()};
  double worst = 0.0, drift = 0.0;
  bool finite = true;
  for (const auto& p : extension_fixtures(o.seed)) {
    const std::vector<double> radii = p.u0.dim() == 1 ? std::vector<double>{1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2}
                                                       : std::vector<double>{1.0 / 16, 1.0 / 8};
    const auto coarse = w11::strip_extension(p.u0, p.u1, strip_options(p.h_fine));
    const auto fine = w11::strip_extension(p.u0, p.u1, strip_options(p.h_fine / 2.0));
    const auto tc = w11::trace_inequality_check(coarse.slab, p.u0, radii);
    const auto tf = w11::trace_inequality_check(fine.slab, p.u0, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      for (auto [a, b] : {std::pair{tc.rows[i].ratio1, tf.rows[i].ratio1}, std::pair{tc.rows[i].ratio2, tf.rows[i].ratio2}}) {
        finite = finite && std::isfinite(a) && std::isfinite(b);
        worst = std::max({worst, a, b});
        if (a > 0.0) drift = std::max(drift, std::abs(b / a - 1.0));
        else if (b > 0.0) drift = std::numeric_limits<double>::infinity();
      }
    }
    r.details.push_back({{"fixture", p.name}, {"coarse", to_json(tc)}, {"fine", to_json(tf)}});
  }
  r.passed = finite && worst <= kTraceCap && drift <= kTraceStability;
  r.summary = "max lhs / energy = " + fmt(worst) + " (cap " + fmt(kTraceCap) + "), max change under h_fine/2 = " +
              fmt(drift) + " (tol " + fmt(kTraceStability) + ")";
  return r;
}

CriterionResult check_constancy(const ReproOptions& o) {
  CriterionResult r{9, "Constancy dichotomy", true, "", ordered_json::array()};
  bool increasing = true;
  for (int d : {1, 2}) {
    ordered_json values = ordered_json::array();
    double prev = -1.0;
    for (long n : {16L, 32L, 64L}) {
      CorpusSpec s;
      s.family = Family::TwoValuedStep;
      s.manifold = "sphere:3";
      s.d = d;
      s.n = n;
      s.h = 0.125;
      s.seed = o.seed;
      const double v = w11::window_pair_integral(generate(s));
      increasing = increasing && v > prev;
      prev = v;
      values.push_back({{"side", number(static_cast<double>(n) * s.h)}, {"double_integral", number(v)}});
    }
    r.details.push_back({{"d", d}, {"values", values}});
  }
  r.passed = increasing;
  r.summary = std::string("full-window double integral strictly increasing over sides 2, 4, 8: ") +
              (increasing ? "yes" : "no");
  return r;
}

ordered_json run_repro(const ReproOptions& o, std::vector<CriterionResult>* results) {
  std::vector<CriterionResult> all;
  all.push_back(check_bbm_identity(o));
  all.push_back(check_upper_bound(o));
  all.push_back(check_scaling(o));
  all.push_back(check_interpolation_constants(o));
  all.push_back(check_jump_bound(o));
  all.push_back(check_trace_round_trip(o));
  all.push_back(check_strip_bound(o));
  all.push_back(check_trace_inequalities(o));
  all.push_back(check_constancy(o));
  ordered_json report;
  report["seed"] = o.seed;
  report["criteria"] = ordered_json::array();
  for (const auto& c : all) {
    report["criteria"].push_back(
        {{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"summary", c.summary}, {"details", c.details}});
  }
  if (results) *results = std::move(all);
  return report;
}

CriterionResult check_determinism(const ReproOptions& o) {
  CriterionResult r{10, "Determinism", true, "", ordered_json::object()};
  const unsigned saved = w11::thread_count();
  w11::set_thread_count(1);
  const std::string first = run_repro(o).dump(1);
  w11::set_thread_count(3);
  const std::string second = run_repro(o).dump(1);
  w11::set_thread_count(saved);
  r.passed = first == second;
  std::size_t at = 0;
  while (at < std::min(first.size(), second.size()) && first[at] == second[at]) ++at;
  r.details = {{"bytes", first.size()}, {"identical", r.passed}};
  r.summary = "two repro runs (1 and 3 threads), " + std::to_string(first.size()) + " bytes: " +
              (r.passed ? "identical" : "differ at byte " + std::to_string(at));
  return r;
}

}  // namespace w11tools
