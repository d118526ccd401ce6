#include <cmath>
#include <limits>
#include <sstream>

#include "w11/dyadic.hpp"
#include "w11/error.hpp"
#include "w11/numeric.hpp"

namespace w11 {

namespace {

constexpr double kNone = std::numeric_limits<double>::infinity();

ScheduleLevel evaluate_level(const GridMap& u0, const GridMap& u1, const DyadicLattice& lattice, int k, int s) {
  ScheduleLevel level;
  level.k = k;
  const double rho = lattice.side(k);
  const GridMap* maps[2] = {&u0, &u1};
  for (int i = 0; i < 2; ++i) {
    level.defect[i] = project_dyadic(*maps[i], lattice, k).defect;
    level.translation[i] = theta(*maps[i], rho, Norm::Sup, s).value;
  }
  return level;
}

bool meets(const ScheduleLevel& level) {
  for (int i = 0; i < 2; ++i) {
    if (level.defect[i] > level.defect_threshold) return false;
    if (level.translation[i] > level.translation_threshold) return false;
  }
  return true;
}

}  // namespace

double DyadicSchedule::layer_end(std::size_t n) const {
  if (n + 1 >= levels.size()) return lattice.L;
  return (1.0 - std::ldexp(1.0, -levels[n + 1].k)) * lattice.L;
}

std::vector<Layer> DyadicSchedule::layers(int side) const {
  std::vector<Layer> out;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const double start = (1.0 - std::ldexp(1.0, -levels[n].k)) * lattice.L;
    const double end = layer_end(n);
    Layer layer{side, static_cast<int>(n), levels[n].k, start, end};
    if (side == 0) {
      layer.lo = -end;
      layer.hi = -start;
    }
    out.push_back(layer);
  }
  return out;
}

DyadicSchedule select_schedule(const GridMap& u0, const GridMap& u1, const DyadicLattice& lattice, int n_max,
                               int s) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (!(u0.geometry() == u1.geometry())) throw DomainError("boundary maps have different grids");
  DyadicSchedule sched;
  sched.lattice = lattice;
  sched.n_max = n_max;
  sched.floor_level = lattice.floor_level(u0.geometry());
  sched.gamma = gamma_energy(u0, u1, lattice.L, s);
  if (!std::isfinite(sched.gamma)) throw DomainError("Gamma is not finite");
  const double gamma = sched.gamma;

  ScheduleLevel first = evaluate_level(u0, u1, lattice, 0, s);
  first.defect_threshold = kNone;
  first.translation_threshold = kNone;
  first.certified = true;
  sched.levels.push_back(first);

  int n = 1;
  while (n <= n_max && sched.levels.back().k < sched.floor_level) {
    const int prev = sched.levels.back().k;
    const double defect_threshold = std::ldexp(gamma, -n);
    const double translation_threshold = std::ldexp(gamma, -prev);
    bool found = false;
    ScheduleLevel level;
    for (int k = prev + 1; k <= sched.floor_level; ++k) {
      level = evaluate_level(u0, u1, lattice, k, s);
      level.defect_threshold = defect_threshold;
      level.translation_threshold = translation_threshold;
      level.certified = meets(level);
      if (level.certified) {
        found = true;
        break;
      }
    }
    if (!found) {
      sched.truncated = true;
      std::ostringstream msg;
      msg << "thresholds for n = " << n << " not met above the grid floor k = " << sched.floor_level
          << "; the floor level is used uncertified";
      sched.notice = msg.str();
    }
    sched.levels.push_back(level);
    ++n;
  }
  const int depth = static_cast<int>(sched.levels.size()) - 1;
  if (sched.levels.back().k < sched.floor_level) {
    ScheduleLevel last = evaluate_level(u0, u1, lattice, sched.floor_level, s);
    last.defect_threshold = std::ldexp(gamma, -n);
    last.translation_threshold = std::ldexp(gamma, -sched.levels.back().k);
    last.certified = meets(last);
    last.terminal = true;
    sched.levels.push_back(last);
  } else if (depth < n_max) {
    sched.truncated = true;
    if (sched.notice.empty()) {
      std::ostringstream msg;
      msg << "grid floor k = " << sched.floor_level << " reached at depth " << depth << " < n_max = " << n_max;
      sched.notice = msg.str();
    }
  }
  return sched;
}

}  // namespace w11
