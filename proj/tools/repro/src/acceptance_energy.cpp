#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <w11/manifold.hpp>
#include <w11/nonlocal.hpp>
#include <w11/numeric.hpp>

#include "w11tools/acceptance.hpp"
#include "w11tools/fixtures.hpp"

namespace w11tools {

namespace {

constexpr double kBbmTolerance = 0.05;
constexpr double kUpperSlack = 0.05;
constexpr double kScalingSlack = 0.10;
constexpr double kFaceSlackCoarse = 0.10;
constexpr double kFaceSlackFine = 0.05;
constexpr double kRoundoff = 1e-12;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

}  // namespace

CriterionResult check_bbm_identity(const ReproOptions& o) {
  CriterionResult r{1, "BBM identity", true, "", ordered_json::array()};
  double worst = 0.0;
  bool monotone = true;
  for (const auto& f : energy_fixtures(o.seed)) {
    const double diam = f.map.geometry().diameter();
    std::vector<double> radii;
    for (double m : {2.0, 5.0, 10.0, 25.0, 50.0, 100.0}) radii.push_back(m * diam);
    const auto bbm = w11::asymptotic_mean(f.map, radii);
    const double lhs = bbm.lhs.value;
    ordered_json errors = ordered_json::array();
    double prev = std::numeric_limits<double>::infinity();
    bool fixture_monotone = true;
    double err = 0.0;
    for (const auto& step : bbm.steps) {
      err = std::abs(lhs - step.rhs) / lhs;
      errors.push_back(number(err));
      if (err > prev + kRoundoff) fixture_monotone = false;
      prev = err;
    }
    worst = std::max(worst, err);
    monotone = monotone && fixture_monotone;
    r.details.push_back({{"fixture", f.name},
                         {"lhs", number(lhs)},
                         {"relative_error", errors},
                         {"monotone", fixture_monotone}});
  }
  r.passed = worst <= kBbmTolerance && monotone;
  r.summary = "max |lhs - Theta/2| / lhs at R = 100 diam: " + fmt(worst) + " (tol " + fmt(kBbmTolerance) +
              "), error non-increasing in R: " + (monotone ? "yes" : "no");
  return r;
}

CriterionResult check_upper_bound(const ReproOptions& o) {
  CriterionResult r{2, "Upper bound", true, "", ordered_json::array()};
  double worst = 0.0;
  bool halves = true;
  for (const auto& f : energy_fixtures_with_step(o.seed)) {
    const double mass = w11::integral_dist_to_point(f.map, f.map.tail()).value;
    const double diam = f.map.geometry().diameter();
    ordered_json rows = ordered_json::array();
    for (double R : {0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0 * diam}) {
      const double q1 = w11::theta(f.map, R, w11::Norm::Euclidean, 1).value / (2.0 * mass);
      const double q2 = w11::theta(f.map, R, w11::Norm::Euclidean, 2).value / (2.0 * mass);
      const double slack1 = std::max(0.0, q1 - 1.0);
      const double slack2 = std::max(0.0, q2 - 1.0);
      worst = std::max(worst, q1 - 1.0);
      const bool h = slack2 <= 0.5 * slack1 + kRoundoff;
      halves = halves && h;
      rows.push_back({{"R", number(R)}, {"ratio_s1", number(q1)}, {"ratio_s2", number(q2)}, {"slack_halves", h}});
    }
    r.details.push_back({{"fixture", f.name}, {"rows", rows}});
  }
  r.passed = worst <= kUpperSlack && halves;
  r.summary = "max Theta / (2 int dist(u, tail)) - 1 = " + fmt(worst) + " (tol " + fmt(kUpperSlack) +
              "), slack halves at s = 2: " + (halves ? "yes" : "no");
  return r;
}

CriterionResult check_scaling(const ReproOptions& o) {
  CriterionResult r{3, "Scaling", true, "", ordered_json::array()};
  const double L = 2.0;
  double worst = 0.0;
  for (const auto& f : energy_fixtures_with_step(o.seed)) {
    const int d = f.map.dim();
    const double lhs = w11::pair_integral(f.map, L, w11::Norm::Euclidean) / w11::ipow(L, d + 1);
    ordered_json rows = ordered_json::array();
    for (double ell : {L / 2.0, L / 4.0, L / 8.0}) {
      const double rhs = std::ldexp(1.0, d + 1) * w11::pair_integral(f.map, ell, w11::Norm::Euclidean) /
                         w11::ipow(ell, d + 1);
      const double q = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      worst = std::max(worst, q);
      rows.push_back({{"ell", number(ell)}, {"lhs", number(lhs)}, {"rhs", number(rhs)}, {"ratio", number(q)}});
    }
    r.details.push_back({{"fixture", f.name}, {"rows", rows}});
  }
  r.passed = worst <= 1.0 + kScalingSlack;
  r.summary = "max lhs / rhs over ell in {L/2, L/4, L/8}: " + fmt(worst) + " (limit " + fmt(1.0 + kScalingSlack) + ")";
  return r;
}

CriterionResult check_interpolation_constants(const ReproOptions& o) {
  (void)o;
  CriterionResult r{4, "Interpolation constants", true, "", ordered_json::array()};
  struct Case {
    const char* manifold;
    std::vector<double> extent;
  };
  const std::vector<Case> cases = {{"sphere:3", {1.0}}, {"circle", {1.0}}, {"sphere:3", {1.0, 0.5}},
                                   {"circle", {0.75, 1.0}}};
  double worst[2][2] = {{0.0, 0.0}, {0.0, 0.0}};  // [one_sided][coarse/fine] of max ratio/limit
  for (const auto& c : cases) {
    const w11::Manifold m = w11::Manifold::parse(c.manifold);
    const w11::Point a = base_point(m);
    w11::Point b = m.kind() == w11::ManifoldKind::Circle ? w11::Point{std::cos(2.0), std::sin(2.0)}
                                                          : w11::Point{std::sin(1.3), 0.0, std::cos(1.3)};
    for (int one = 0; one < 2; ++one) {
      const double e_limit = one ? 8.0 : 4.0;
      const double s_limit = one ? 2.0 : 1.0;
      ordered_json rows = ordered_json::array();
      int level = 0;
      for (double hf : {1.0 / 32.0, 1.0 / 64.0}) {
        const auto face = w11::smooth_single_face(m, a, b, c.extent, hf, one == 1);
        const double q = std::max(face.energy_ratio / e_limit, face.slice_ratio / s_limit);
        worst[one][level] = std::max(worst[one][level], q);
        rows.push_back({{"h_fine", number(hf)},
                        {"energy_ratio", number(face.energy_ratio)},
                        {"slice_ratio", number(face.slice_ratio)}});
        ++level;
      }
      r.details.push_back({{"manifold", c.manifold},
                           {"face_dim", c.extent.size()},
                           {"one_sided", one == 1},
                           {"rows", rows}});
    }
  }
  bool ok = true;
  for (int one = 0; one < 2; ++one) {
    ok = ok && worst[one][0] <= 1.0 + kFaceSlackCoarse && worst[one][1] <= 1.0 + kFaceSlackFine;
  }
  r.passed = ok;
  r.summary = "max fraction of the limit (two-sided 4 / 1, one-sided 8 / 2): " + fmt(worst[0][0]) + ", " +
              fmt(worst[1][0]) + " at h_fine; " + fmt(worst[0][1]) + ", " + fmt(worst[1][1]) +
              " at h_fine/2 (limits 1.10 / 1.05)";
  return r;
}

}  // namespace w11tools
