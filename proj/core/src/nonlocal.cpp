#include "w11/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "w11/error.hpp"
#include "w11/numeric.hpp"

namespace w11 {

namespace {

/// Cell offset between two grid cells with its quadrature weight.
struct Offset {
  Index delta;
  long flat_shift = 0;
  double weight = 0.0;
};

std::vector<std::size_t> strides(const GridGeometry& g) {
  std::vector<std::size_t> st(g.dim(), 1);
  for (int j = g.dim() - 2; j >= 0; --j) st[j] = st[j + 1] * static_cast<std::size_t>(g.counts[j + 1]);
  return st;
}

/// P(|delta + Z| <= rho) with Z = a - b, a, b uniform on [0, 1].
double triangular_window(double delta, double rho) {
  auto cdf = [](double z) {
    if (z <= -1.0) return 0.0;
    if (z <= 0.0) return 0.5 * (1.0 + z) * (1.0 + z);
    if (z <= 1.0) return 1.0 - 0.5 * (1.0 - z) * (1.0 - z);
    return 1.0;
  };
  return std::max(0.0, cdf(rho - delta) - cdf(-rho - delta));
}

/// Fraction of point pairs (x in cell c, y in cell c + delta) with |x - y| <= R.
double offset_weight(const Index& delta, double h, double R, Norm norm, int s) {
  const int d = static_cast<int>(delta.size());
  if (norm == Norm::Sup) {
    double w = 1.0;
    for (int j = 0; j < d; ++j) w *= triangular_window(static_cast<double>(delta[j]), R / h);
    return w;
  }
  double near = 0.0;
  double far = 0.0;
  for (int j = 0; j < d; ++j) {
    const double a = static_cast<double>(std::abs(delta[j]));
    near += std::max(a - 1.0, 0.0) * std::max(a - 1.0, 0.0);
    far += (a + 1.0) * (a + 1.0);
  }
  const double R2 = (R / h) * (R / h);
  if (far <= R2) return 1.0;
  if (near > R2) return 0.0;
  // Sub-sample displacement e = a - b per axis has multiplicity s - |e|.
  Index e(d, -(s - 1));
  double hit = 0.0;
  while (true) {
    double r2 = 0.0;
    double mult = 1.0;
    for (int j = 0; j < d; ++j) {
      const double z = static_cast<double>(delta[j]) + static_cast<double>(e[j]) / s;
      r2 += z * z;
      mult *= static_cast<double>(s - std::abs(e[j]));
    }
    if (r2 <= R2) hit += mult;
    int j = d - 1;
    while (j >= 0 && e[j] == s - 1) {
      e[j] = -(s - 1);
      --j;
    }
    if (j < 0) break;
    ++e[j];
  }
  return hit / ipow(static_cast<double>(s), 2 * d);
}

/// Quadrature-consistent volume of the cutoff ball: h^d times the sum of
/// offset weights over all of Z^d.
double sampled_cutoff_volume(int d, double h, double R, Norm norm, int s) {
  if (norm == Norm::Sup) return cutoff_volume(d, R, norm);
  const double rho = R / h;
  const double R2 = rho * rho;
  const long reach = static_cast<long>(std::ceil(rho)) + 1;
  CompensatedSum total;
  Index delta(d, 0);
  // Odometer over the leading d - 1 axes; the last axis is summed by rows.
  Index lead(d - 1, -reach);
  while (true) {
    double near = 0.0;
    double far = 0.0;
    for (int j = 0; j < d - 1; ++j) {
      const double a = static_cast<double>(std::abs(lead[j]));
      near += std::max(a - 1.0, 0.0) * std::max(a - 1.0, 0.0);
      far += (a + 1.0) * (a + 1.0);
    }
    if (near <= R2) {
      // |k| <= full: weight 1; |k| > outer: weight 0; in between: explicit.
      const long full = far <= R2 ? static_cast<long>(std::floor(std::sqrt(R2 - far) - 1.0)) : -1;
      const long outer = static_cast<long>(std::ceil(std::sqrt(R2 - near) + 1.0));
      if (full >= 0) total.add(static_cast<double>(2 * full + 1));
      for (int j = 0; j < d - 1; ++j) delta[j] = lead[j];
      for (long k = std::max(full + 1, 0L); k <= outer; ++k) {
        delta[d - 1] = k;
        const double w = offset_weight(delta, h, R, norm, s);
        total.add(k == 0 ? w : 2.0 * w);
      }
    }
    int j = d - 2;
    while (j >= 0 && lead[j] == reach) {
      lead[j] = -reach;
      --j;
    }
    if (j < 0) break;
    ++lead[j];
  }
  return total.value() * ipow(h, d);
}

std::vector<Offset> cell_offsets(const GridGeometry& g, double R, Norm norm, int s, bool all) {
  const int d = g.dim();
  const auto st = strides(g);
  std::vector<Offset> out;
  Index delta(d);
  for (int j = 0; j < d; ++j) delta[j] = -(g.counts[j] - 1);
  while (true) {
    const double w = all ? 1.0 : offset_weight(delta, g.h, R, norm, s);
    if (w > 0.0) {
      long shift = 0;
      for (int j = 0; j < d; ++j) shift += delta[j] * static_cast<long>(st[j]);
      out.push_back({delta, shift, w});
    }
    int j = d - 1;
    while (j >= 0 && delta[j] == g.counts[j] - 1) {
      delta[j] = -(g.counts[j] - 1);
      --j;
    }
    if (j < 0) break;
    ++delta[j];
  }
  return out;
}

/// Calls fn(flat) for every cell c of the window with c + delta also inside.
template <class Fn>
void for_each_overlap(const GridGeometry& g, const Index& delta, Fn&& fn) {
  const int d = g.dim();
  const auto st = strides(g);
  Index lo(d), hi(d);
  for (int j = 0; j < d; ++j) {
    lo[j] = std::max(0L, -delta[j]);
    hi[j] = std::min(g.counts[j], g.counts[j] - delta[j]);
    if (lo[j] >= hi[j]) return;
  }
  Index c = lo;
  while (true) {
    std::size_t base = 0;
    for (int j = 0; j < d - 1; ++j) base += static_cast<std::size_t>(c[j]) * st[j];
    for (long k = lo[d - 1]; k < hi[d - 1]; ++k) fn(base + static_cast<std::size_t>(k));
    int j = d - 2;
    while (j >= 0 && c[j] == hi[j] - 1) {
      c[j] = lo[j];
      --j;
    }
    if (j < 0) break;
    ++c[j];
  }
}

void require_supersampling(int s) {
  if (s < 1) throw DomainError("supersampling factor must be >= 1");
}

}  // namespace

const char* to_string(Norm n) noexcept { return n == Norm::Sup ? "sup" : "euclidean"; }

Norm parse_norm(std::string_view text) {
  if (text == "euclidean") return Norm::Euclidean;
  if (text == "sup") return Norm::Sup;
  throw UsageError("unknown norm '" + std::string(text) + "'");
}

double cutoff_volume(int d, double R, Norm norm) {
  if (norm == Norm::Sup) return ipow(2.0 * R, d);
  return unit_ball_volume(d) * ipow(R, d);
}

EnergyValue integral_dist_to_point(const GridMap& u, PointView b) {
  const Manifold& m = u.manifold();
  m.require_on(b, "base point");
  if (m.dist_unchecked(u.tail(), b) > 0.0) return EnergyValue::infinite();
  const double vol = u.geometry().cell_volume();
  const double sum = parallel_sum(u.cell_count(), [&](std::size_t lo, std::size_t hi, CompensatedSum& acc) {
    for (std::size_t c = lo; c < hi; ++c) acc.add(m.dist_unchecked(u.value(c), b));
  });
  return {vol * sum, 1};
}

double pair_integral(const GridMap& u, double R, Norm norm, int s) {
  if (!(R > 0.0)) throw DomainError("cutoff radius must be positive");
  require_supersampling(s);
  const GridGeometry& g = u.geometry();
  const Manifold& m = u.manifold();
  const auto offsets = cell_offsets(g, R, norm, s, false);

  std::vector<double> to_tail(u.cell_count());
  for (std::size_t c = 0; c < u.cell_count(); ++c) to_tail[c] = m.dist_unchecked(u.value(c), u.tail());

  // [0]: weighted window-window distances, [1]: weighted in-window partner mass.
  const auto sums = parallel_sums(offsets.size(), 2, [&](std::size_t lo, std::size_t hi,
                                                         std::span<CompensatedSum> acc) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Offset& off = offsets[i];
      CompensatedSum pairs;
      CompensatedSum mass;
      for_each_overlap(g, off.delta, [&](std::size_t c) {
        const std::size_t partner = static_cast<std::size_t>(static_cast<long>(c) + off.flat_shift);
        pairs.add(m.dist_unchecked(u.value(c), u.value(partner)));
        mass.add(to_tail[c]);
      });
      acc[0].add(off.weight * pairs.value());
      acc[1].add(off.weight * mass.value());
    }
  });
  CompensatedSum tail_mass;
  for (double v : to_tail) tail_mass.add(v);

  const double cell = g.cell_volume();
  const double volume = sampled_cutoff_volume(g.dim(), g.h, R, norm, s);
  const double inside = cell * cell * sums[0];
  const double crossing = 2.0 * (volume * cell * tail_mass.value() - cell * cell * sums[1]);
  return inside + crossing;
}

EnergyValue theta(const GridMap& u, double R, Norm norm, int s) {
  const double p = pair_integral(u, R, norm, s);
  return {p / cutoff_volume(u.dim(), R, norm), s};
}

double window_pair_integral(const GridMap& u) {
  const GridGeometry& g = u.geometry();
  const Manifold& m = u.manifold();
  const auto offsets = cell_offsets(g, 0.0, Norm::Euclidean, 1, true);
  const double sum = parallel_sum(offsets.size(), [&](std::size_t lo, std::size_t hi, CompensatedSum& acc) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Offset& off = offsets[i];
      for_each_overlap(g, off.delta, [&](std::size_t c) {
        const std::size_t partner = static_cast<std::size_t>(static_cast<long>(c) + off.flat_shift);
        acc.add(m.dist_unchecked(u.value(c), u.value(partner)));
      });
    }
  });
  const double cell = g.cell_volume();
  return cell * cell * sum;
}

EnergyValue translation_energy(const GridMap& u, std::span<const double> shift, int s) {
  require_supersampling(s);
  const GridGeometry& g = u.geometry();
  const int d = g.dim();
  if (static_cast<int>(shift.size()) != d) throw DomainError("shift has wrong dimension");
  const double step = g.h / s;
  // Sample lattice covering W and W - shift; every cell holds s^d samples.
  std::vector<long> first(d), count(d);
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) {
    first[j] = static_cast<long>(std::floor(-std::max(shift[j], 0.0) / step)) - 1;
    const long last = g.counts[j] * s + static_cast<long>(std::ceil(std::max(-shift[j], 0.0) / step)) + 1;
    count[j] = last - first[j];
    total *= static_cast<std::size_t>(count[j]);
  }
  const Manifold& m = u.manifold();
  const double sum = parallel_sum(total, [&](std::size_t lo, std::size_t hi, CompensatedSum& acc) {
    std::vector<double> x(d), y(d);
    for (std::size_t flat = lo; flat < hi; ++flat) {
      std::size_t rest = flat;
      for (int j = d - 1; j >= 0; --j) {
        const long i = first[j] + static_cast<long>(rest % static_cast<std::size_t>(count[j]));
        rest /= static_cast<std::size_t>(count[j]);
        x[j] = g.origin[j] + (static_cast<double>(i) + 0.5) * step;
        y[j] = x[j] + shift[j];
      }
      acc.add(m.dist_unchecked(u.at(x), u.at(y)));
    }
  });
  return {sum * ipow(step, d), s};
}

EnergyValue averaged_translation(const GridMap& u, double rho, int shift_samples, int s) {
  if (!(rho > 0.0)) throw DomainError("translation radius must be positive");
  if (shift_samples < 1) throw DomainError("shift sample count must be >= 1");
  const int d = u.dim();
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= static_cast<std::size_t>(shift_samples);
  CompensatedSum acc;
  std::vector<double> shift(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int j = d - 1; j >= 0; --j) {
      const auto i = static_cast<double>(rest % static_cast<std::size_t>(shift_samples));
      rest /= static_cast<std::size_t>(shift_samples);
      shift[j] = -rho + (i + 0.5) * 2.0 * rho / shift_samples;
    }
    acc.add(translation_energy(u, shift, s).value);
  }
  return {acc.value() / static_cast<double>(total), s};
}

namespace {

/// Fraction of the s^d sub-samples of `cell` lying in the closed ball B(0, r).
double ball_fraction(const GridGeometry& g, std::size_t cell, double r, int s) {
  const int d = g.dim();
  const Index idx = g.unravel(cell);
  double near = 0.0;
  double far = 0.0;
  for (int j = 0; j < d; ++j) {
    const double lo = g.origin[j] + g.h * static_cast<double>(idx[j]);
    const double hi = lo + g.h;
    const double n = (lo > 0.0) ? lo : (hi < 0.0 ? -hi : 0.0);
    const double f = std::max(std::abs(lo), std::abs(hi));
    near += n * n;
    far += f * f;
  }
  if (far <= r * r) return 1.0;
  if (near > r * r) return 0.0;
  Index sub(d, 0);
  long hit = 0;
  long total = 0;
  while (true) {
    double r2 = 0.0;
    for (int j = 0; j < d; ++j) {
      const double x = g.origin[j] + g.h * (static_cast<double>(idx[j]) + (sub[j] + 0.5) / s);
      r2 += x * x;
    }
    if (r2 <= r * r) ++hit;
    ++total;
    int j = d - 1;
    while (j >= 0 && sub[j] == s - 1) {
      sub[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++sub[j];
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

/// A point of B(0, r) outside the window, if any.
bool point_outside_window(const GridGeometry& g, double r, std::vector<double>& y) {
  for (int j = 0; j < g.dim(); ++j) {
    y.assign(g.dim(), 0.0);
    if (-r < g.lower(j)) {
      y[j] = -r;
      return true;
    }
    if (r >= g.upper(j)) {
      y[j] = r;
      return true;
    }
  }
  return false;
}

}  // namespace

BbmReport asymptotic_mean(const GridMap& u, std::span<const double> schedule, int s) {
  require_supersampling(s);
  if (schedule.size() < 2) throw DomainError("asymptotic mean needs at least two radii");
  for (std::size_t n = 0; n < schedule.size(); ++n) {
    if (!(schedule[n] > 0.0) || (n > 0 && !(schedule[n] > schedule[n - 1]))) {
      throw DomainError("radius schedule must be positive and strictly increasing");
    }
  }
  const GridGeometry& g = u.geometry();
  const Manifold& m = u.manifold();
  const int d = g.dim();
  const double cell = g.cell_volume();

  BbmReport report;
  for (double R : schedule) {
    BbmStep step;
    step.R = R;
    step.eta = 1.0 / std::max(2.0, std::sqrt(R));
    const double small = step.eta * R;
    const double large = (1.0 - step.eta) * R;

    std::vector<double> frac(u.cell_count());
    CompensatedSum inner;
    for (std::size_t c = 0; c < u.cell_count(); ++c) {
      frac[c] = ball_fraction(g, c, small, s);
      inner.add(cell * frac[c]);
    }
    const double outer = std::max(0.0, cutoff_volume(d, small, Norm::Euclidean) - inner.value());
    auto objective = [&](PointView v) {
      CompensatedSum acc;
      for (std::size_t c = 0; c < u.cell_count(); ++c) {
        if (frac[c] > 0.0) acc.add(cell * frac[c] * m.dist_unchecked(u.value(c), v));
      }
      acc.add(outer * m.dist_unchecked(u.tail(), v));
      return acc.value();
    };

    bool found = false;
    std::vector<Point> seen;
    for (std::size_t c = 0; c < u.cell_count(); ++c) {
      const auto center = g.cell_center(c);
      double r2 = 0.0;
      for (double x : center) r2 += x * x;
      if (r2 > large * large) continue;
      const auto v = u.value(c);
      Point candidate(v.begin(), v.end());
      if (std::find(seen.begin(), seen.end(), candidate) != seen.end()) continue;
      const double value = objective(v);
      if (!found || value < step.objective) {
        step.objective = value;
        step.y = center;
        step.value = candidate;
        found = true;
      }
      seen.push_back(std::move(candidate));
    }
    std::vector<double> y;
    if (point_outside_window(g, large, y)) {
      const double value = objective(u.tail());
      if (!found || value < step.objective) {
        step.objective = value;
        step.y = y;
        step.value = Point(u.tail().begin(), u.tail().end());
        found = true;
      }
    }
    if (!found) {
      throw DomainError("no candidate point in B(0, " + std::to_string(large) + ")");
    }
    const double theta_R = theta(u, R, Norm::Euclidean, s).value;
    const double theta_small = theta(u, 2.0 * small, Norm::Euclidean, s).value;
    const double theta_n =
        (theta_R + ipow(2.0 * step.eta, d) * theta_small) / ipow(1.0 - step.eta, d);
    step.averaged_bound = 0.5 * theta_n;
    step.rhs = 0.5 * theta_R;
    report.steps.push_back(std::move(step));
  }
  report.b_star = report.steps.back().value;
  report.lhs = integral_dist_to_point(u, report.b_star);
  return report;
}

std::vector<std::pair<double, double>> small_r_sweep(const GridMap& u, std::span<const double> radii,
                                                     Norm norm, int s) {
  std::vector<std::pair<double, double>> out;
  for (double r : radii) {
    if (r < 2.0 * u.h()) {
      throw ResolutionError("radius " + std::to_string(r) + " is below twice the cell size " +
                            std::to_string(u.h()));
    }
    out.emplace_back(r, theta(u, r, norm, s).value);
  }
  return out;
}

}  // namespace w11
