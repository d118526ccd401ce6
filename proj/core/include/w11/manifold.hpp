#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace w11 {

/// Coordinates of a point in the ambient space R^nu.
using Point = std::vector<double>;
using PointView = std::span<const double>;

enum class ManifoldKind { Euclidean, Circle, Sphere };

/// Target manifold N embedded in R^nu with closed-form geodesics.
///
/// Circle is the unit circle in R^2, Sphere(nu) the unit sphere S^{nu-1}
/// in R^nu. Distances are intrinsic (arc length on spheres).
class Manifold {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  /// Euclidean(1).
  Manifold() : Manifold(ManifoldKind::Euclidean, 1, kDefaultTolerance) {}

  static Manifold euclidean(int nu, double tol = kDefaultTolerance);
  static Manifold circle(double tol = kDefaultTolerance);
  static Manifold sphere(int nu, double tol = kDefaultTolerance);

  /// Parses "euclidean:nu", "circle" or "sphere:nu".
  static Manifold parse(std::string_view id);
  std::string id() const;

  ManifoldKind kind() const noexcept { return kind_; }
  int ambient_dim() const noexcept { return nu_; }
  double tolerance() const noexcept { return tol_; }

  bool contains(PointView p) const noexcept;
  /// Throws DomainError naming `what` when p is off the manifold.
  void require_on(PointView p, std::string_view what = "point") const;

  double dist(PointView a, PointView b) const;
  /// No membership check; for inner loops over validated data.
  double dist_unchecked(PointView a, PointView b) const noexcept;

  /// Point at fraction s in [0,1] of the minimal geodesic from a to b.
  Point interpolate(PointView a, PointView b, double s) const;

  /// gamma(t) = a for t <= -1, b for t >= 1, minimal geodesic in between
  /// reparametrised by a cubic smoothstep; speed <= 3/4 dist(a, b).
  Point geodesic_profile(PointView a, PointView b, double t) const;

  /// gamma(0) = a, gamma(t) = b for t >= 1; speed <= 3/2 dist(a, b).
  Point one_sided_profile(PointView a, PointView b, double t) const;

  /// Nearest point of the manifold.
  Point project(PointView x) const;

  friend bool operator==(const Manifold& a, const Manifold& b) noexcept {
    return a.kind_ == b.kind_ && a.nu_ == b.nu_;
  }

 private:
  Manifold(ManifoldKind kind, int nu, double tol) : kind_(kind), nu_(nu), tol_(tol) {}

  void check_geodesic_unique(PointView a, PointView b) const;

  ManifoldKind kind_;
  int nu_;
  double tol_;
};

/// Smoothstep 3 tau^2 - 2 tau^3 clamped to [0, 1].
double smoothstep(double tau) noexcept;

}  // namespace w11
