#include "ordyn/simple_function.hpp"

#include <algorithm>
#include <cmath>

namespace ordyn {

SimpleFunction::SimpleFunction(GroupSpace carrier, std::vector<Atom> atoms)
    : G_(std::move(carrier)), atoms_(std::move(atoms)) {
  for (auto& [p, amp] : atoms_) p = G_.make({p.c.data(), static_cast<std::size_t>(p.arity)});
  canonicalize();
}

void SimpleFunction::canonicalize() {
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.first < b.first; });
  std::vector<Atom> merged;
  merged.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    if (!merged.empty() && merged.back().first == a.first)
      merged.back().second += a.second;
    else
      merged.push_back(a);
  }
  std::erase_if(merged, [](const Atom& a) { return a.second == std::complex<double>(0.0, 0.0); });
  atoms_ = std::move(merged);
}

SimpleFunction SimpleFunction::atom(const GroupSpace& G, const GroupPoint& p,
                                    std::complex<double> amp) {
  return SimpleFunction(G, {{p, amp}});
}

SimpleFunction SimpleFunction::indicator(const GroupSpace& G, const PointSet& A) {
  std::vector<Atom> atoms;
  atoms.reserve(A.size());
  for (const auto& p : A.points()) atoms.emplace_back(p, 1.0);
  return SimpleFunction(G, std::move(atoms));
}

double SimpleFunction::max_abs() const {
  double m = 0.0;
  for (const auto& [p, amp] : atoms_) m = std::max(m, std::abs(amp));
  return m;
}

std::complex<double> SimpleFunction::at(const GroupPoint& p) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), p,
                             [](const Atom& a, const GroupPoint& q) { return a.first < q; });
  if (it != atoms_.end() && it->first == p) return it->second;
  return {0.0, 0.0};
}

PointSet SimpleFunction::support_set() const {
  std::vector<GroupPoint> pts;
  pts.reserve(atoms_.size());
  for (const auto& [p, amp] : atoms_) pts.push_back(p);
  return PointSet(std::move(pts));
}

SimpleFunction SimpleFunction::scaled(std::complex<double> c) const {
  std::vector<Atom> out = atoms_;
  for (auto& [p, amp] : out) amp *= c;
  return SimpleFunction(G_, std::move(out));
}

SimpleFunction SimpleFunction::plus(const SimpleFunction& other) const {
  if (!(G_ == other.G_)) throw domain_error("carrier mismatch in function sum");
  std::vector<Atom> out = atoms_;
  out.insert(out.end(), other.atoms_.begin(), other.atoms_.end());
  return SimpleFunction(G_, std::move(out));
}

SimpleFunction SimpleFunction::minus(const SimpleFunction& other) const {
  return plus(other.scaled(-1.0));
}

SimpleFunction SimpleFunction::times_weight(const Weight& w) const {
  std::vector<Atom> out = atoms_;
  for (auto& [p, amp] : out) amp *= w(G_, p);
  return SimpleFunction(G_, std::move(out));
}

SimpleFunction SimpleFunction::restricted(const PointSet& A) const {
  std::vector<Atom> out;
  for (const auto& a : atoms_)
    if (A.contains(a.first)) out.push_back(a);
  return SimpleFunction(G_, std::move(out));
}

SimpleFunction SimpleFunction::right_translated(const GroupPoint& g) const {
  std::vector<Atom> out;
  out.reserve(atoms_.size());
  for (const auto& [p, amp] : atoms_) out.emplace_back(G_.mul(p, g), amp);
  return SimpleFunction(G_, std::move(out));
}

}  // namespace ordyn
