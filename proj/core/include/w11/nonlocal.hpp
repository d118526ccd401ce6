#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "w11/grid_map.hpp"

namespace w11 {

/// Cutoff norm for |x - y| <= R.
enum class Norm { Euclidean, Sup };

const char* to_string(Norm n) noexcept;
Norm parse_norm(std::string_view text);

/// Nonnegative energy; +infinity is a regular value (infinite tail mass).
struct EnergyValue {
  double value = 0.0;
  /// Sub-samples per cell and axis used by the quadrature (1 = midpoint).
  int supersampling = 1;

  bool is_infinite() const noexcept { return value == std::numeric_limits<double>::infinity(); }
  static EnergyValue infinite(int s = 1) noexcept {
    return {std::numeric_limits<double>::infinity(), s};
  }
};

/// Volume of {|z| <= R}: the Euclidean ball, or the cube (2R)^d for Sup.
double cutoff_volume(int d, double R, Norm norm);

/// \int dist(u(x), b) dx over R^d; infinite unless b equals the tail.
EnergyValue integral_dist_to_point(const GridMap& u, PointView b);

/// Unnormalised \iint_{|x-y| <= R} dist(u(x), u(y)) dx dy over R^d x R^d.
///
/// Pairs with both points outside the window vanish; pairs with one point
/// outside contribute dist(u(x), tail) times the out-of-window part of the
/// cutoff ball, computed in closed form. Window-window pairs use the
/// midpoint rule with `s` sub-samples per axis for the Euclidean cutoff and
/// the exact cell-pair overlap for the sup-norm cutoff.
double pair_integral(const GridMap& u, double R, Norm norm, int s = 1);

/// Theta(R) = pair_integral / cutoff_volume.
EnergyValue theta(const GridMap& u, double R, Norm norm = Norm::Euclidean, int s = 1);

/// \iint over window x window of dist(u(x), u(y)), no cutoff.
double window_pair_integral(const GridMap& u);

/// \int dist(u(x), u(x + shift)) dx on a lattice of spacing h/s.
EnergyValue translation_energy(const GridMap& u, std::span<const double> shift, int s = 1);

/// Mean of translation_energy over `shift_samples`^d midpoint shifts with
/// |shift|_inf <= rho.
EnergyValue averaged_translation(const GridMap& u, double rho, int shift_samples = 8, int s = 1);

struct BbmStep {
  double R = 0.0;
  double eta = 0.0;
  /// Point of B(0, (1 - eta) R) selected as y_n.
  std::vector<double> y;
  Point value;
  /// \int_{B(0, eta R)} dist(u(x), u(y_n)) dx.
  double objective = 0.0;
  /// theta_n / 2, the averaged bound the selection must satisfy.
  double averaged_bound = 0.0;
  /// Theta(R) / 2.
  double rhs = 0.0;
};

struct BbmReport {
  std::vector<BbmStep> steps;
  Point b_star;
  /// \int dist(u, b_star).
  EnergyValue lhs;
};

/// Constructive asymptotic mean b_* with the diagnostics of each radius.
BbmReport asymptotic_mean(const GridMap& u, std::span<const double> schedule, int s = 1);

/// (r, Theta(r)) for every r; rejects r < 2h.
std::vector<std::pair<double, double>> small_r_sweep(const GridMap& u, std::span<const double> radii,
                                                     Norm norm = Norm::Euclidean, int s = 1);

}  // namespace w11
