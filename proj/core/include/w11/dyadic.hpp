#pragma once

#include <array>
#include <string>
#include <vector>

#include "w11/grid_map.hpp"
#include "w11/nonlocal.hpp"
#include "w11/slab_map.hpp"

namespace w11 {

/// Nested dyadic cubes anchor + side(k) * (j + [0,1)^d), side(k) = 2^{1-k} L.
struct DyadicLattice {
  double L = 1.0;
  std::vector<double> anchor;

  double side(int k) const;
  /// Level whose cubes are single cells of size h; AlignmentError unless
  /// 2L/h is a power of two and the grid is aligned with the anchor.
  int floor_level(const GridGeometry& g) const;
};

/// Extends the window with tail cells to a union of level-0 cubes.
GridMap pad_to_lattice(const GridMap& u, const DyadicLattice& lattice);

/// Cell values of `coarse` sampled at the centers of `fine`.
GridMap refine(const GridMap& coarse, const GridGeometry& fine);

/// E_k u on a lattice-padded map. `cubes` is a GridMap whose cells are the
/// level-k cubes of the window.
struct Projection {
  int level = 0;
  GridMap cubes;
  /// Per cube: flat index of the selected cell x_Q.
  std::vector<std::size_t> chosen;
  /// Per cube: mean over Q of dist(u(x_Q), u(y)).
  std::vector<double> chosen_mean;
  /// Per cube: mean over Q x Q of dist(u(x), u(y)).
  std::vector<double> pair_mean;
  /// \int dist(E_k u, u).
  double defect = 0.0;
  /// Sum over cubes of |Q|^{-1} \iint_{Q x Q} dist(u(x), u(y)).
  double cube_pair_sum = 0.0;
};

Projection project_dyadic(const GridMap& u, const DyadicLattice& lattice, int k);

/// E_k u on the grid of u, lattice anchored at the origin of R^d.
GridMap project_Ek(const GridMap& u, int k, double L);

/// Sum over both maps of the unnormalised Euclidean-cutoff pair integral at
/// radius L, divided by L^d.
double gamma_energy(const GridMap& u0, const GridMap& u1, double L, int s = 1);

struct ScheduleLevel {
  int k = 0;
  /// \int dist(E_k u_i, u_i).
  std::array<double, 2> defect{};
  /// Mean translation distance over |shift|_inf <= 2^{1-k} L.
  std::array<double, 2> translation{};
  /// Thresholds imposed at selection; +inf where none applies.
  double defect_threshold = 0.0;
  double translation_threshold = 0.0;
  bool certified = true;
  /// Appended at the grid floor after the last selected level.
  bool terminal = false;
};

/// One layer of one side, endpoints ascending. Side 1 lies in (0, L),
/// side 0 is its mirror image in (-L, 0).
struct Layer {
  int side = 1;
  int n = 0;
  int k = 0;
  double lo = 0.0;
  double hi = 0.0;
};

struct DyadicSchedule {
  DyadicLattice lattice;
  double gamma = 0.0;
  int floor_level = 0;
  int n_max = 1;
  std::vector<ScheduleLevel> levels;
  bool truncated = false;
  std::string notice;

  /// Depth boundary |t| where layer n ends: (1 - 2^{-k_{n+1}}) L, or L.
  double layer_end(std::size_t n) const;
  std::vector<Layer> layers(int side) const;
};

/// Both maps must be lattice-padded with the same geometry.
DyadicSchedule select_schedule(const GridMap& u0, const GridMap& u1, const DyadicLattice& lattice, int n_max,
                               int s = 1);

enum class FaceClass { Interface, Parallel, Perpendicular };
const char* to_string(FaceClass c) noexcept;

/// A jump face in R^{d+1}, t being the last coordinate.
struct JumpFace {
  FaceClass kind = FaceClass::Interface;
  int normal_axis = 0;
  double position = 0.0;
  /// Box of the face; lo[normal_axis] == hi[normal_axis] == position.
  std::vector<double> lo, hi;
  double area = 0.0;
  /// Values on the sides with smaller / larger normal coordinate.
  Point below, above;
  /// One side lies outside the lattice window (tail value).
  bool on_boundary = false;
};

struct BVExtension {
  /// Lattice-padded boundary data.
  std::array<GridMap, 2> data;
  DyadicSchedule schedule;
  /// projections[i][n] = E_{k_n} u_i.
  std::array<std::vector<Projection>, 2> projections;
  std::vector<JumpFace> faces;
  /// Lateral boundary faces are smoothed one-sidedly inside the window.
  bool confined = false;

  const Manifold& manifold() const { return data[0].manifold(); }
  const GridGeometry& window() const { return data[0].geometry(); }
  int dim() const { return data[0].dim(); }
  double L() const { return schedule.lattice.L; }
  /// Layer index containing |t| on side t >= 0 ? 1 : 0.
  std::size_t layer_of(double t) const;
  PointView value_at(std::span<const double> x, double t) const;
};

BVExtension build_bv_extension(const GridMap& u0, const GridMap& u1, const DyadicSchedule& schedule,
                               bool confined = false);

struct JumpEnergy {
  double total = 0.0;
  double interface = 0.0;
  double parallel = 0.0;
  double perpendicular = 0.0;
};

JumpEnergy jump_energy(const BVExtension& e);

/// Explicit bounds for each class of jump faces.
struct JumpBounds {
  double integral_dist = 0.0;
  double gamma = 0.0;
  /// Sum over i of L^{-d} \iint_{|x-y|_inf <= m L} dist(u_i(x), u_i(y)), m = 2, 6.
  double sup2 = 0.0;
  double sup6 = 0.0;
  /// \int dist(u0, u1) + 2^{-d} sup2.
  double interface = 0.0;
  /// 6 Gamma + sup2.
  double parallel = 0.0;
  /// Parallel bound before the schedule thresholds are inserted.
  double parallel_direct = 0.0;
  /// 11 d Gamma + d sup6.
  double perpendicular = 0.0;
  /// Perpendicular bound before the schedule thresholds are inserted.
  double perpendicular_direct = 0.0;
  /// \int dist(u0, u1) + (6 + 11 d) Gamma + (1 + 2^{-d} + d) sup6.
  double total = 0.0;
};

JumpBounds jump_bounds(const BVExtension& e, int s = 1);

/// Smoothing of every jump face inside its cone 2|s| < dist(x, dP).
/// The slab covers t in (-L, L); in the unconfined case the lateral window
/// is widened to contain every cone.
SlabMap smooth_extension(const BVExtension& e, double h_fine);

/// A single face P = prod [0, extent_j] with values a below, b above.
struct FaceSmoothing {
  double energy = 0.0;
  /// sup over t of \int_P dist(step(t), U(., t)).
  double slice_l1 = 0.0;
  double area = 0.0;
  double distance = 0.0;
  double energy_ratio = 0.0;
  double slice_ratio = 0.0;
};

FaceSmoothing smooth_single_face(const Manifold& m, PointView a, PointView b, std::span<const double> extent,
                                 double h_fine, bool one_sided);

struct StripReport {
  DyadicSchedule schedule;
  JumpEnergy jumps;
  JumpBounds bounds;
  SlabMap slab;
  double energy = 0.0;
  double integral_dist = 0.0;
  /// Sum over i of \iint_{|x-y| <= 1} dist(u_i(x), u_i(y)).
  double nonlocal_unit = 0.0;
  /// \int dist(u0, u1) + nonlocal_unit.
  double rhs = 0.0;
  double ratio = 0.0;
  /// \int dist(u_i, trace of the slab on side i).
  std::array<double, 2> trace_error{};
};

struct StripOptions {
  double L = 1.0;
  int n_max = 4;
  double h_fine = 0.0;
  int s = 1;
  /// Lattice anchor; empty means the origin of R^d.
  std::vector<double> anchor;
};

StripReport strip_extension(const GridMap& u0, const GridMap& u1, const StripOptions& options);

struct CubeReport {
  StripReport strip;
  /// \int_{dQ} dist(u, p).
  double boundary_integral = 0.0;
  double ratio = 0.0;
  /// Per face of the cube (2j: x_j = -1, 2j + 1: x_j = +1), L1 error of
  /// the slab trace against the data.
  std::vector<double> trace_error;
};

/// Extension into Q = [-1,1]^{d+1} of boundary data given per face, each a
/// GridMap on [-1,1]^d in the remaining coordinates in increasing order.
CubeReport cube_extension(const std::vector<GridMap>& faces, PointView p, int n_max, double h_fine);

struct HalfspaceReport {
  BbmReport bbm;
  StripReport strip;
  double energy = 0.0;
  /// Theta at the last radius of the schedule.
  double theta_limit = 0.0;
  double ratio = 0.0;
};

/// Strip between u and the constant b_*, shifted to t in (0, 2L); the
/// extension is b_* above the strip.
HalfspaceReport halfspace_extension(const GridMap& u, std::span<const double> bbm_schedule,
                                    const StripOptions& options);

}  // namespace w11
