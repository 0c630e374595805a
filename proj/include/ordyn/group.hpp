#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordyn/errors.hpp"

namespace ordyn {

/// A lattice point of a carrier.  Length-1 tuples for the line carriers,
/// length-3 for the discrete Heisenberg group.  Cyclic coordinates are kept
/// reduced into [0, d).
struct GroupPoint {
  std::array<std::int64_t, 3> c{0, 0, 0};
  std::uint8_t arity = 1;

  static GroupPoint line(std::int64_t n) { return GroupPoint{{n, 0, 0}, 1}; }
  static GroupPoint heis(std::int64_t x, std::int64_t y, std::int64_t z) {
    return GroupPoint{{x, y, z}, 3};
  }

  friend auto operator<=>(const GroupPoint&, const GroupPoint&) = default;
};

enum class GroupKind { IntegerLine, Cyclic, LatticeLine, DiscreteHeisenberg };

/// A concrete carrier: group arithmetic plus the per-point Haar mass of the
/// quadrature model (1 for the discrete kinds, the cell width h for the
/// lattice discretization of the real line).
class GroupSpace {
 public:
  static GroupSpace integer_line();
  static GroupSpace cyclic(std::int64_t d);
  static GroupSpace lattice_line(double h);
  static GroupSpace heisenberg();

  GroupKind kind() const { return kind_; }
  double haar_mass() const { return mass_; }
  std::int64_t modulus() const { return d_; }  // Cyclic only
  double step() const { return h_; }           // LatticeLine only
  int arity() const { return arity_; }
  bool abelian() const { return kind_ != GroupKind::DiscreteHeisenberg; }
  std::string label() const;

  GroupPoint identity() const;
  bool is_identity(const GroupPoint& p) const;

  /// Normalizes raw coordinates into a member point (cyclic reduction,
  /// arity check).  Throws domain_error on arity mismatch.
  GroupPoint make(std::span<const std::int64_t> coords) const;

  /// Group product.  Heisenberg rule:
  /// (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y').
  GroupPoint mul(const GroupPoint& a, const GroupPoint& b) const;
  GroupPoint inv(const GroupPoint& a) const;

  /// a^n by square-and-multiply; a^0 = identity, negative n via inverses.
  GroupPoint pow(const GroupPoint& a, std::int64_t n) const;

  /// Coordinates in value units (index * h on the lattice line).
  std::array<double, 3> value(const GroupPoint& p) const;

  /// The length fed to exp-type weights: |value| summed over coordinates;
  /// cyclic points use the symmetric representative min(r, d - r).
  double length(const GroupPoint& p) const;

  friend bool operator==(const GroupSpace&, const GroupSpace&) = default;

 private:
  GroupKind kind_ = GroupKind::IntegerLine;
  std::int64_t d_ = 0;
  double h_ = 1.0;
  double mass_ = 1.0;
  int arity_ = 1;
  void check(const GroupPoint& p) const;
};

/// Sorted, duplicate-free finite set of carrier points.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<GroupPoint> pts);

  /// All points with lo[i] <= coord[i] <= hi[i] (coordinates in index units,
  /// pre-reduction for cyclic carriers).
  static PointSet box(const GroupSpace& G, std::span<const std::int64_t> lo,
                      std::span<const std::int64_t> hi);

  bool contains(const GroupPoint& p) const;
  bool empty() const { return pts_.empty(); }
  std::size_t size() const { return pts_.size(); }
  const std::vector<GroupPoint>& points() const { return pts_; }

  /// Right-translate of every point: { p * g }.
  PointSet translated(const GroupSpace& G, const GroupPoint& g) const;
  bool intersects(const PointSet& other) const;
  bool disjoint_from(const PointSet& other) const { return !intersects(other); }

  PointSet set_minus(const PointSet& other) const;
  PointSet unioned(const PointSet& other) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<GroupPoint> pts_;
};

/// Smallest order d <= horizon with a^d = e, if any.
std::optional<std::int64_t> is_torsion(const GroupSpace& G, const GroupPoint& a,
                                       std::int64_t horizon);

/// Outcome of the finite-horizon aperiodicity scan: when ok, every
/// M < n <= verified_to has K and K a^{+-n} disjoint and M is the smallest
/// such threshold.  When the intersections recur all the way up to the
/// horizon (torsion-like behavior) ok is false and witness names the first
/// recurring n.
struct AperiodicityReport {
  bool ok = false;
  std::int64_t M = 0;
  std::int64_t verified_to = 0;
  std::int64_t witness = 0;
};

AperiodicityReport aperiodicity_window(const GroupSpace& G, const GroupPoint& a,
                                       const PointSet& K, std::int64_t horizon);

}  // namespace ordyn
