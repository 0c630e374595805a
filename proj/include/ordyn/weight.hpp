#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordyn/group.hpp"

namespace ordyn {

enum class SubmultVerdict { unchecked, verified_on_sample, refuted };

/// Strictly positive function on a carrier.  Families:
///   constant(v)   w == v
///   exp_abs(c)    w(x) = exp(c * length(x))
///   table         explicit point -> value map with a default elsewhere
/// Submultiplicativity w(xy) <= w(x) w(y) is never assumed; it is checked
/// on samples by validate_weight and the verdict travels with the value.
class Weight {
 public:
  enum class Family { constant, exp_abs, table };

  static Weight constant(double v);
  static Weight exp_abs(double c);
  static Weight table(std::vector<std::pair<GroupPoint, double>> entries,
                      double default_value = 1.0);

  /// w at a point; throws domain_error if the stored data is nonpositive.
  double operator()(const GroupSpace& G, const GroupPoint& p) const;

  Family family() const { return family_; }
  double rate() const { return c_; }            // exp_abs only
  double constant_value() const { return v_; }  // constant only
  const std::vector<std::pair<GroupPoint, double>>& entries() const { return entries_; }
  double default_value() const { return default_; }
  std::string label() const;

  SubmultVerdict verdict() const { return verdict_; }
  Weight with_verdict(SubmultVerdict v) const;

 private:
  Family family_ = Family::constant;
  double v_ = 1.0;
  double c_ = 0.0;
  std::vector<std::pair<GroupPoint, double>> entries_;  // sorted by point
  double default_ = 1.0;
  SubmultVerdict verdict_ = SubmultVerdict::unchecked;
};

struct WeightValidation {
  SubmultVerdict verdict = SubmultVerdict::unchecked;
  std::optional<std::pair<GroupPoint, GroupPoint>> counterexample;
  double worst_ratio = 0.0;  // max over the sample of w(xy) / (w(x) w(y))
  /// C_a = max over sampled x of w(x a) / w(x), per requested generator.
  std::vector<std::pair<GroupPoint, double>> bound_constants;
  std::size_t pairs_checked = 0;
};

/// Checks w(xy) <= w(x) w(y) on every sampled pair and records the first
/// counterexample found; computes the translation-boundedness constant for
/// each requested generator over the sampled left factors.
WeightValidation validate_weight(const GroupSpace& G, const Weight& w,
                                 std::span<const std::pair<GroupPoint, GroupPoint>> sample,
                                 std::span<const GroupPoint> generators = {});

}  // namespace ordyn
