#include "w11/manifold.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "w11/error.hpp"

namespace w11 {

namespace {

double norm(PointView x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double chord(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

int parse_dim(std::string_view text, std::string_view id) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value <= 0) {
    throw UsageError("invalid manifold id '" + std::string(id) + "'");
  }
  return value;
}

}  // namespace

double smoothstep(double tau) noexcept {
  tau = std::clamp(tau, 0.0, 1.0);
  return tau * tau * (3.0 - 2.0 * tau);
}

Manifold Manifold::euclidean(int nu, double tol) {
  if (nu < 1) throw DomainError("euclidean target needs nu >= 1");
  return Manifold(ManifoldKind::Euclidean, nu, tol);
}

Manifold Manifold::circle(double tol) { return Manifold(ManifoldKind::Circle, 2, tol); }

Manifold Manifold::sphere(int nu, double tol) {
  if (nu < 2) throw DomainError("sphere target needs nu >= 2");
  return Manifold(ManifoldKind::Sphere, nu, tol);
}

Manifold Manifold::parse(std::string_view id) {
  if (id == "circle") return circle();
  const auto colon = id.find(':');
  if (colon != std::string_view::npos) {
    const auto head = id.substr(0, colon);
    const int nu = parse_dim(id.substr(colon + 1), id);
    if (head == "euclidean") return euclidean(nu);
    if (head == "sphere") return sphere(nu);
  }
  throw UsageError("unknown manifold id '" + std::string(id) + "'");
}

std::string Manifold::id() const {
  switch (kind_) {
    case ManifoldKind::Euclidean:
      return "euclidean:" + std::to_string(nu_);
    case ManifoldKind::Circle:
      return "circle";
    case ManifoldKind::Sphere:
      return "sphere:" + std::to_string(nu_);
  }
  return {};
}

bool Manifold::contains(PointView p) const noexcept {
  if (static_cast<int>(p.size()) != nu_) return false;
  for (double v : p) {
    if (!std::isfinite(v)) return false;
  }
  if (kind_ == ManifoldKind::Euclidean) return true;
  return std::abs(norm(p) - 1.0) <= tol_;
}

void Manifold::require_on(PointView p, std::string_view what) const {
  if (!contains(p)) {
    throw DomainError(std::string(what) + " is not on manifold " + id());
  }
}

double Manifold::dist_unchecked(PointView a, PointView b) const noexcept {
  const double c = chord(a, b);
  if (kind_ == ManifoldKind::Euclidean) return c;
  // Arc length from the chord; well conditioned for close points.
  return 2.0 * std::asin(std::min(1.0, 0.5 * c));
}

double Manifold::dist(PointView a, PointView b) const {
  require_on(a, "first argument");
  require_on(b, "second argument");
  return dist_unchecked(a, b);
}

void Manifold::check_geodesic_unique(PointView a, PointView b) const {
  if (kind_ == ManifoldKind::Euclidean) return;
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] + b[i]) * (a[i] + b[i]);
  if (std::sqrt(s) <= 1e-9) {
    throw DomainError("non-unique geodesic: antipodal points on " + id());
  }
}

Point Manifold::interpolate(PointView a, PointView b, double s) const {
  require_on(a, "geodesic start");
  require_on(b, "geodesic end");
  check_geodesic_unique(a, b);
  Point out(a.size());
  if (kind_ == ManifoldKind::Euclidean) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - s) * a[i] + s * b[i];
    return out;
  }
  const double theta = dist_unchecked(a, b);
  if (theta < 1e-12) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - s) * a[i] + s * b[i];
  } else {
    const double w0 = std::sin((1.0 - s) * theta) / std::sin(theta);
    const double w1 = std::sin(s * theta) / std::sin(theta);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = w0 * a[i] + w1 * b[i];
  }
  const double n = norm(out);
  for (double& v : out) v /= n;
  return out;
}

Point Manifold::geodesic_profile(PointView a, PointView b, double t) const {
  if (t <= -1.0) {
    require_on(a, "geodesic start");
    return Point(a.begin(), a.end());
  }
  if (t >= 1.0) {
    require_on(b, "geodesic end");
    return Point(b.begin(), b.end());
  }
  return interpolate(a, b, smoothstep(0.5 * (t + 1.0)));
}

Point Manifold::one_sided_profile(PointView a, PointView b, double t) const {
  if (t <= 0.0) {
    require_on(a, "geodesic start");
    return Point(a.begin(), a.end());
  }
  if (t >= 1.0) {
    require_on(b, "geodesic end");
    return Point(b.begin(), b.end());
  }
  return interpolate(a, b, smoothstep(t));
}

Point Manifold::project(PointView x) const {
  if (static_cast<int>(x.size()) != nu_) {
    throw DomainError("projection input has wrong dimension for " + id());
  }
  Point out(x.begin(), x.end());
  if (kind_ == ManifoldKind::Euclidean) return out;
  const double n = norm(x);
  if (!(n > 0.0)) throw DomainError("cannot project the zero vector onto " + id());
  for (double& v : out) v /= n;
  return out;
}

}  // namespace w11
