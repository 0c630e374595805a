#include "ordyn/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ordyn {

Weight Weight::constant(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw domain_error("constant weight must be positive");
  Weight w;
  w.family_ = Family::constant;
  w.v_ = v;
  return w;
}

Weight Weight::exp_abs(double c) {
  if (!std::isfinite(c)) throw domain_error("exp_abs weight rate must be finite");
  Weight w;
  w.family_ = Family::exp_abs;
  w.c_ = c;
  return w;
}

Weight Weight::table(std::vector<std::pair<GroupPoint, double>> entries,
                     double default_value) {
  Weight w;
  w.family_ = Family::table;
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  w.entries_ = std::move(entries);
  w.default_ = default_value;
  return w;
}

double Weight::operator()(const GroupSpace& G, const GroupPoint& p) const {
  double v = 0.0;
  switch (family_) {
    case Family::constant:
      v = v_;
      break;
    case Family::exp_abs:
      // Clamp at the smallest normal double: exp underflows to 0 for
      // exponents below about -745 while the weight itself is positive.
      v = std::max(std::exp(c_ * G.length(p)), std::numeric_limits<double>::min());
      break;
    case Family::table: {
      auto it = std::lower_bound(
          entries_.begin(), entries_.end(), p,
          [](const auto& e, const GroupPoint& q) { return e.first < q; });
      v = (it != entries_.end() && it->first == p) ? it->second : default_;
      break;
    }
  }
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "weight is not strictly positive at a sampled point (value " << v << ")";
    throw domain_error(os.str());
  }
  return v;
}

std::string Weight::label() const {
  std::ostringstream os;
  switch (family_) {
    case Family::constant: os << "constant(" << v_ << ")"; break;
    case Family::exp_abs: os << "exp_abs(c=" << c_ << ")"; break;
    case Family::table: os << "table[" << entries_.size() << "]"; break;
  }
  return os.str();
}

Weight Weight::with_verdict(SubmultVerdict v) const {
  Weight w = *this;
  w.verdict_ = v;
  return w;
}

WeightValidation validate_weight(const GroupSpace& G, const Weight& w,
                                 std::span<const std::pair<GroupPoint, GroupPoint>> sample,
                                 std::span<const GroupPoint> generators) {
  if (sample.empty()) throw precondition_error("validate_weight: sample must be nonempty");
  WeightValidation rep;
  rep.verdict = SubmultVerdict::verified_on_sample;
  for (const auto& [x, y] : sample) {
    const double lhs = w(G, G.mul(x, y));
    const double rhs = w(G, x) * w(G, y);
    rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
    // Tiny slack keeps exact-equality families (constant 1) out of the
    // refuted bucket under float rounding.
    if (lhs > rhs * (1.0 + 1e-12) && !rep.counterexample) {
      rep.verdict = SubmultVerdict::refuted;
      rep.counterexample = {x, y};
    }
    ++rep.pairs_checked;
  }
  for (const auto& a : generators) {
    double c_a = 0.0;
    for (const auto& [x, y] : sample) {
      c_a = std::max(c_a, w(G, G.mul(x, a)) / w(G, x));
      c_a = std::max(c_a, w(G, G.mul(y, a)) / w(G, y));
    }
    rep.bound_constants.emplace_back(a, c_a);
  }
  return rep;
}

}  // namespace ordyn
