#include "ordyn/group.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ordyn {

namespace {

std::int64_t mod_reduce(std::int64_t v, std::int64_t d) {
  std::int64_t r = v % d;
  return r < 0 ? r + d : r;
}

}  // namespace

GroupSpace GroupSpace::integer_line() {
  GroupSpace g;
  g.kind_ = GroupKind::IntegerLine;
  return g;
}

GroupSpace GroupSpace::cyclic(std::int64_t d) {
  if (d < 1) throw domain_error("cyclic carrier requires d >= 1");
  GroupSpace g;
  g.kind_ = GroupKind::Cyclic;
  g.d_ = d;
  return g;
}

GroupSpace GroupSpace::lattice_line(double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw domain_error("lattice carrier requires step h > 0");
  GroupSpace g;
  g.kind_ = GroupKind::LatticeLine;
  g.h_ = h;
  g.mass_ = h;
  return g;
}

GroupSpace GroupSpace::heisenberg() {
  GroupSpace g;
  g.kind_ = GroupKind::DiscreteHeisenberg;
  g.arity_ = 3;
  return g;
}

std::string GroupSpace::label() const {
  switch (kind_) {
    case GroupKind::IntegerLine: return "integer_line";
    case GroupKind::Cyclic: {
      std::ostringstream os;
      os << "cyclic(" << d_ << ")";
      return os.str();
    }
    case GroupKind::LatticeLine: {
      std::ostringstream os;
      os << "lattice_line(h=" << h_ << ")";
      return os.str();
    }
    case GroupKind::DiscreteHeisenberg: return "heisenberg_z";
  }
  return "?";
}

GroupPoint GroupSpace::identity() const {
  GroupPoint p;
  p.arity = static_cast<std::uint8_t>(arity_);
  return p;
}

bool GroupSpace::is_identity(const GroupPoint& p) const { return p == identity(); }

void GroupSpace::check(const GroupPoint& p) const {
  if (p.arity != arity_) throw domain_error("carrier mismatch: wrong point arity");
}

GroupPoint GroupSpace::make(std::span<const std::int64_t> coords) const {
  if (static_cast<int>(coords.size()) != arity_)
    throw domain_error("carrier mismatch: wrong coordinate count");
  GroupPoint p;
  p.arity = static_cast<std::uint8_t>(arity_);
  for (std::size_t i = 0; i < coords.size(); ++i) p.c[i] = coords[i];
  if (kind_ == GroupKind::Cyclic) p.c[0] = mod_reduce(p.c[0], d_);
  return p;
}

GroupPoint GroupSpace::mul(const GroupPoint& a, const GroupPoint& b) const {
  check(a);
  check(b);
  GroupPoint r;
  r.arity = static_cast<std::uint8_t>(arity_);
  switch (kind_) {
    case GroupKind::IntegerLine:
    case GroupKind::LatticeLine:
      r.c[0] = a.c[0] + b.c[0];
      break;
    case GroupKind::Cyclic:
      r.c[0] = mod_reduce(a.c[0] + b.c[0], d_);
      break;
    case GroupKind::DiscreteHeisenberg:
      r.c[0] = a.c[0] + b.c[0];
      r.c[1] = a.c[1] + b.c[1];
      r.c[2] = a.c[2] + b.c[2] + a.c[0] * b.c[1];
      break;
  }
  return r;
}

GroupPoint GroupSpace::inv(const GroupPoint& a) const {
  check(a);
  GroupPoint r;
  r.arity = static_cast<std::uint8_t>(arity_);
  switch (kind_) {
    case GroupKind::IntegerLine:
    case GroupKind::LatticeLine:
      r.c[0] = -a.c[0];
      break;
    case GroupKind::Cyclic:
      r.c[0] = mod_reduce(-a.c[0], d_);
      break;
    case GroupKind::DiscreteHeisenberg:
      // (x,y,z)^{-1} = (-x,-y,-z+xy)
      r.c[0] = -a.c[0];
      r.c[1] = -a.c[1];
      r.c[2] = -a.c[2] + a.c[0] * a.c[1];
      break;
  }
  return r;
}

GroupPoint GroupSpace::pow(const GroupPoint& a, std::int64_t n) const {
  check(a);
  GroupPoint base = n < 0 ? inv(a) : a;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1
                          : static_cast<std::uint64_t>(n);
  GroupPoint acc = identity();
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::array<double, 3> GroupSpace::value(const GroupPoint& p) const {
  check(p);
  std::array<double, 3> v{0.0, 0.0, 0.0};
  const double scale = kind_ == GroupKind::LatticeLine ? h_ : 1.0;
  for (int i = 0; i < arity_; ++i) v[i] = static_cast<double>(p.c[i]) * scale;
  return v;
}

double GroupSpace::length(const GroupPoint& p) const {
  check(p);
  if (kind_ == GroupKind::Cyclic) {
    const std::int64_t r = mod_reduce(p.c[0], d_);
    return static_cast<double>(std::min(r, d_ - r));
  }
  const auto v = value(p);
  double s = 0.0;
  for (int i = 0; i < arity_; ++i) s += std::fabs(v[i]);
  return s;
}

PointSet::PointSet(std::vector<GroupPoint> pts) : pts_(std::move(pts)) {
  std::sort(pts_.begin(), pts_.end());
  pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

PointSet PointSet::box(const GroupSpace& G, std::span<const std::int64_t> lo,
                       std::span<const std::int64_t> hi) {
  if (static_cast<int>(lo.size()) != G.arity() || lo.size() != hi.size())
    throw domain_error("box spec: coordinate count must match the carrier");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) throw domain_error("box spec: lo > hi");
  std::vector<GroupPoint> pts;
  if (G.arity() == 1) {
    for (std::int64_t x = lo[0]; x <= hi[0]; ++x) {
      std::int64_t c[1] = {x};
      pts.push_back(G.make(c));
    }
  } else {
    for (std::int64_t x = lo[0]; x <= hi[0]; ++x)
      for (std::int64_t y = lo[1]; y <= hi[1]; ++y)
        for (std::int64_t z = lo[2]; z <= hi[2]; ++z) {
          std::int64_t c[3] = {x, y, z};
          pts.push_back(G.make(c));
        }
  }
  return PointSet(std::move(pts));
}

bool PointSet::contains(const GroupPoint& p) const {
  return std::binary_search(pts_.begin(), pts_.end(), p);
}

PointSet PointSet::translated(const GroupSpace& G, const GroupPoint& g) const {
  std::vector<GroupPoint> out;
  out.reserve(pts_.size());
  for (const auto& p : pts_) out.push_back(G.mul(p, g));
  return PointSet(std::move(out));
}

bool PointSet::intersects(const PointSet& other) const {
  const PointSet* small = this;
  const PointSet* big = &other;
  if (small->size() > big->size()) std::swap(small, big);
  for (const auto& p : small->pts_)
    if (big->contains(p)) return true;
  return false;
}

PointSet PointSet::set_minus(const PointSet& other) const {
  std::vector<GroupPoint> out;
  std::set_difference(pts_.begin(), pts_.end(), other.pts_.begin(),
                      other.pts_.end(), std::back_inserter(out));
  return PointSet(std::move(out));
}

PointSet PointSet::unioned(const PointSet& other) const {
  std::vector<GroupPoint> out;
  std::set_union(pts_.begin(), pts_.end(), other.pts_.begin(), other.pts_.end(),
                 std::back_inserter(out));
  return PointSet(std::move(out));
}

std::optional<std::int64_t> is_torsion(const GroupSpace& G, const GroupPoint& a,
                                       std::int64_t horizon) {
  if (horizon < 1) throw domain_error("torsion horizon must be >= 1");
  GroupPoint p = G.identity();
  for (std::int64_t d = 1; d <= horizon; ++d) {
    p = G.mul(p, a);
    if (G.is_identity(p)) return d;
  }
  return std::nullopt;
}

AperiodicityReport aperiodicity_window(const GroupSpace& G, const GroupPoint& a,
                                       const PointSet& K, std::int64_t horizon) {
  if (K.empty()) throw precondition_error("aperiodicity window: K must be nonempty");
  if (G.is_identity(a)) throw domain_error("aperiodicity window: a must not be the identity");
  if (horizon < 1) throw domain_error("aperiodicity horizon must be >= 1");

  std::vector<std::int64_t> hits;
  GroupPoint fwd = G.identity(), bwd = G.identity();
  const GroupPoint ainv = G.inv(a);
  for (std::int64_t n = 1; n <= horizon; ++n) {
    fwd = G.mul(fwd, a);
    bwd = G.mul(bwd, ainv);
    if (K.intersects(K.translated(G, fwd)) || K.intersects(K.translated(G, bwd)))
      hits.push_back(n);
  }

  AperiodicityReport rep;
  rep.verified_to = horizon;
  if (hits.empty()) {
    rep.ok = true;
    rep.M = 0;
    return rep;
  }
  // The empty tail past the last hit must be longer than any gap already
  // seen between hits, otherwise the recurrence may simply continue
  // (torsion-like) and we refuse to certify a window.
  std::int64_t max_gap = hits.front();  // gap from 0 to the first hit
  for (std::size_t i = 1; i < hits.size(); ++i)
    max_gap = std::max(max_gap, hits[i] - hits[i - 1]);
  const std::int64_t tail = horizon - hits.back();
  if (tail <= max_gap) {
    rep.ok = false;
    rep.witness = hits.front();
    return rep;
  }
  rep.ok = true;
  rep.M = hits.back();
  return rep;
}

}  // namespace ordyn
