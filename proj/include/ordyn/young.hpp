#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordyn/errors.hpp"

namespace ordyn {

/// Search parameters for the numerical convex conjugate
/// sup { x|y| - Phi(x) : x >= 0 }.
struct ConjugateConfig {
  double bracket_growth = 2.0;   // geometric step of the bracket expansion
  double tol = 1e-10;            // golden-section interior tolerance
  double bracket_limit = 1e300;  // abort (divergence) past this abscissa
};

/// Sampled conjugate on a y-grid.  Values may be +inf (the p = 1 endpoint
/// of the power family conjugates to the indicator of [-1, 1]).
struct ConjugateTable {
  std::vector<double> breakpoints;  // sorted y >= 0
  std::vector<double> values;       // Psi(y) per breakpoint
  double refinement = 0.0;          // interior maximizer accuracy (absolute)

  // nonnegative, nondecreasing and midpoint-convex on the grid
  bool well_formed(double tol = 1e-9) const;
};

/// A convex even modular generator: Phi(0) = 0, Phi(t) > 0 for t > 0,
/// Phi(t) -> inf.  Value type; copies share immutable state.
class YoungFunction {
 public:
  enum class Family { power, power_log, custom };
  enum class Delta2Domain { all_t, t_above };

  /// Phi(t) = |t|^p / p, 1 <= p < inf.
  static YoungFunction power(double p);

  /// Phi(t) = |t|^a (1 + |log|t||), a > 1.  For a < (3+sqrt 5)/2 the raw
  /// formula is not convex on an interval left of t = 1; there we use its
  /// convex minorant (the common tangent chord into the kink at t = 1),
  /// which keeps the Young axioms and agrees with the formula elsewhere.
  static YoungFunction power_log(double alpha);

  /// Arbitrary evaluator; the caller asserts the Young axioms.
  static YoungFunction custom(std::string name,
                              std::function<double(double)> eval,
                              std::function<double(double)> deriv = {},
                              std::function<double(double)> conjugate_hint = {},
                              Delta2Domain dom = Delta2Domain::all_t,
                              double dom_t0 = 0.0);

  /// Piecewise-linear interpolant of sampled (t, Phi(t)) pairs, linearly
  /// extrapolated beyond the last breakpoint.  Used by the serialized
  /// "custom" family.
  static YoungFunction from_table(std::vector<std::pair<double, double>> pts);

  /// Phi(|t|).  Throws domain_error on non-finite input.
  double operator()(double t) const;
  double evaluate(double t) const { return (*this)(t); }

  bool has_derivative() const;
  double derivative(double t) const;  // t >= 0

  Family family() const;
  double param() const;  // p or alpha; 0 for custom
  const std::string& name() const;
  Delta2Domain delta2_domain() const;
  double delta2_threshold() const;

  /// Numerical conjugate Psi(y) = sup { x|y| - Phi(x) : x >= 0 }: bracket
  /// expansion until the objective decreases, then golden-section.  When a
  /// closed-form hint is attached the result is cross-checked against it.
  /// Throws divergence_error (naming the failing bracket) if the objective
  /// is still growing at cfg.bracket_limit.
  double conjugate(double y, const ConjugateConfig& cfg = {}) const;

  bool has_conjugate_hint() const;

  /// The complementary function as a YoungFunction: exact power(q) for
  /// power(p > 1), the [0, cap] indicator for p = 1, and a numeric-backed
  /// evaluator otherwise.
  YoungFunction conjugate_function(const ConjugateConfig& cfg = {}) const;

  /// True for the p = 1 indicator conjugate: Psi = 0 on [0, cap], +inf beyond.
  bool is_indicator() const;
  double indicator_cap() const;

  /// Phi(x) + Psi(y) - |x||y|; >= 0 up to the conjugate search tolerance.
  double young_gap(double x, double y, const ConjugateConfig& cfg = {}) const;

  struct Delta2Report {
    double constant = 0.0;  // max over the grid of Phi(2t)/Phi(t)
    bool pass = false;
  };

  /// Grid probe of Phi(2t) <= M Phi(t).  Fails when the ratio grows
  /// across decades by more than blowup_factor (top decade vs bottom).
  /// Grid points below the t_above threshold are ignored.
  Delta2Report delta2_probe(std::span<const double> t_grid,
                            double blowup_factor = 10.0) const;

  /// Unique t >= 0 with Phi(t) = y, by monotone bisection; 0 for y = 0.
  double inverse(double y, double tol = 1e-12) const;

 private:
  struct State;
  std::shared_ptr<const State> s_;
  explicit YoungFunction(std::shared_ptr<const State> s) : s_(std::move(s)) {}
};

/// Samples the numerical conjugate on a uniform y-grid.
ConjugateTable tabulate_conjugate(const YoungFunction& phi, double y_lo,
                                  double y_hi, int n,
                                  const ConjugateConfig& cfg = {});

}  // namespace ordyn
