#pragma once

#include <complex>
#include <vector>

#include "ordyn/group.hpp"
#include "ordyn/weight.hpp"

namespace ordyn {

/// Finitely supported complex function on a carrier: the computational
/// stand-in for the compactly supported dense class.  Support is kept
/// canonically sorted, duplicate-free and zero-free; equality is
/// support-wise amplitude equality.
class SimpleFunction {
 public:
  using Atom = std::pair<GroupPoint, std::complex<double>>;

  explicit SimpleFunction(GroupSpace carrier) : G_(std::move(carrier)) {}
  SimpleFunction(GroupSpace carrier, std::vector<Atom> atoms);

  static SimpleFunction zero(GroupSpace carrier) { return SimpleFunction(std::move(carrier)); }
  static SimpleFunction atom(const GroupSpace& G, const GroupPoint& p,
                             std::complex<double> amp);
  static SimpleFunction indicator(const GroupSpace& G, const PointSet& A);

  const GroupSpace& carrier() const { return G_; }
  const std::vector<Atom>& support() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  double max_abs() const;
  std::complex<double> at(const GroupPoint& p) const;
  PointSet support_set() const;

  SimpleFunction scaled(std::complex<double> c) const;
  SimpleFunction plus(const SimpleFunction& other) const;
  SimpleFunction minus(const SimpleFunction& other) const;

  /// Pointwise product with a weight (positive real factor per point).
  SimpleFunction times_weight(const Weight& w) const;

  /// Restriction f * chi_A.
  SimpleFunction restricted(const PointSet& A) const;

  /// Support right-translation by g: atom at p moves to p*g.  This realizes
  /// (T f)(x) = f(x g^{-1}).
  SimpleFunction right_translated(const GroupPoint& g) const;

  friend bool operator==(const SimpleFunction& a, const SimpleFunction& b) {
    return a.G_ == b.G_ && a.atoms_ == b.atoms_;
  }

 private:
  GroupSpace G_;
  std::vector<Atom> atoms_;
  void canonicalize();
};

}  // namespace ordyn
