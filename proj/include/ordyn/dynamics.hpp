#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ordyn/norms.hpp"
#include "ordyn/simple_function.hpp"

namespace ordyn {

/// T f = f * delta_a (forward) or S f = f * delta_{a^{-1}} (backward);
/// composing the two is the identity at support level.
struct TranslationOp {
  GroupSpace G;
  GroupPoint a;
  bool forward = true;

  SimpleFunction apply(const SimpleFunction& f, std::int64_t steps = 1) const;
};

/// T_a^n f: the support right-translates by a^n (amplitudes unchanged),
/// since (T_a^n f)(x) = f(x a^{-n}).  Negative n realizes S_a^{|n|}.
SimpleFunction translate(const SimpleFunction& f, const GroupPoint& a,
                         std::int64_t n);

struct OrbitEntry {
  std::int64_t n = 0;
  SimpleFunction fn;  // T^n f
  double norm = 0.0;
  std::size_t distinct_so_far = 0;

  OrbitEntry() : fn(SimpleFunction::zero(GroupSpace::integer_line())) {}
};

struct OrbitTrace {
  std::vector<OrbitEntry> entries;  // n = 0 .. N-1
  std::size_t distinct = 0;         // distinct orbit elements (support equality)
};

/// First N orbit elements T^n f (n starting at 0) with weighted norms and a
/// running count of distinct elements.
OrbitTrace orbit(const SimpleFunction& f, const GroupPoint& a, std::int64_t N,
                 const Weight& w, const YoungFunction& phi);

/// C_hat = max over sampled x of w(x a) / w(x); bounds the operator norm of
/// T_a on functions supported in the sample.
double operator_norm_bound(const GroupSpace& G, const GroupPoint& a,
                           const Weight& w, const PointSet& sample);

struct PeriodicCandidate {
  SimpleFunction v;
  std::int64_t period = 0;      // n_k
  std::int64_t truncation = 0;  // L_max
  double residual_bound = 0.0;  // bounds || T^{n_k} v - v ||_{Phi,w}
};

/// Truncated periodic point sum v = sum_{|l| <= L_max} T^{l n_k} (f chi_E).
/// Requires the translates E a^{l n_k}, |l| <= L_max + 1, pairwise disjoint;
/// the telescoping residual T^{n_k} v - v is then exactly the two boundary
/// terms and residual_bound is the sum of their weighted norms.
PeriodicCandidate periodic_point(const SimpleFunction& f, const PointSet& E,
                                 const GroupPoint& a, std::int64_t n_k,
                                 std::int64_t L_max, const Weight& w,
                                 const YoungFunction& phi);

/// Smallest n in [1, N] with || T_a^n f - g ||_{Phi,w} < eps, if any.
std::optional<std::int64_t> orbit_hit(const SimpleFunction& f,
                                      const SimpleFunction& g,
                                      const GroupPoint& a, double eps,
                                      std::int64_t N, const Weight& w,
                                      const YoungFunction& phi);

}  // namespace ordyn
