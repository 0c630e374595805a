#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordyn/dynamics.hpp"
#include "ordyn/norms.hpp"

namespace ordyn {

enum class CertMode { transitive, mixing, chaotic };
enum class CertVerdict { certified_decaying, inconclusive, obstructed };

std::string to_string(CertMode m);
std::string to_string(CertVerdict v);

/// How E_k is carved out of K at step k:
///   full        E_k = K
///   greedy      E_k = { x in K : max(w(x a^{n_k}), w(x a^{-n_k})) <= delta_k }
///               with the geometric schedule delta_k = delta0 * ratio^{k-1}
struct EkStrategy {
  enum class Kind { full, greedy };
  Kind kind = Kind::full;
  double delta0 = 1.0;
  double delta_ratio = 0.5;
};

struct CriterionStep {
  int k = 0;
  std::int64_t n_k = 0;
  std::size_t E_size = 0;
  GroupPoint a_pow;      // a^{n_k}, echoed into step logs
  double q0 = 0.0;       // || chi_{K \ E_k} ||_{Phi,w}
  double q_plus = 0.0;   // || T^{n_k} chi_{E_k} ||_{Phi,w}
  double q_minus = 0.0;  // || S^{n_k} chi_{E_k} ||_{Phi,w}
  // chaotic mode only: truncated series over l = 1..L_max plus tail bounds
  bool has_series = false;
  double series_plus = 0.0, series_minus = 0.0;
  double tail_plus = 0.0, tail_minus = 0.0;
  bool tail_bounded = true;
};

struct Certificate {
  CertMode mode = CertMode::transitive;
  CertVerdict verdict = CertVerdict::inconclusive;
  std::string obstruction_reason;  // set when verdict == obstructed
  double obstruction_bound = 0.0;
  std::vector<CriterionStep> steps;
  double decay_ratio = 1.0;  // fitted geometric ratio of the step stream
  double tol = 0.0;
};

struct CertifyConfig {
  double tol = 1e-9;
  int workers = 1;
  std::int64_t L_max = 8;                  // chaotic series truncation
  EkStrategy strategy;
  std::int64_t obstruction_horizon = 16;   // n range of the pointwise check
};

/// The criterion integral sup_{v in Omega} int_E |v(x a^n)| w(x a^n) dlambda
/// reduced by right invariance to || chi_{E a^n} ||_{Phi,w}.
double criterion_quantity(const GroupSpace& G, const PointSet& E,
                          const GroupPoint& a, std::int64_t n, const Weight& w,
                          const YoungFunction& phi);

/// Direct evaluation of the same supremum through the dual-ball oracle on
/// w * chi_{E a^n}; must agree with the reduced form.
double criterion_quantity_direct(const GroupSpace& G, const PointSet& E,
                                 const GroupPoint& a, std::int64_t n,
                                 const Weight& w, const YoungFunction& phi,
                                 const OracleConfig& cfg = {});

struct ObstructionReport {
  enum class Status { holds, fails, not_applicable };
  Status status = Status::not_applicable;
  double bound = 0.0;  // min over K of w(x^2)
  std::string detail;
};

/// Pointwise consequence of submultiplicativity on abelian carriers:
/// w(x a^n) w(x a^{-n}) >= w(x^2).  When it holds with a positive bound the
/// translated-indicator quantities cannot all vanish, which justifies the
/// `obstructed` verdict.  Non-abelian carriers report not_applicable, as
/// does any weight whose submultiplicativity is refuted on the sample.
ObstructionReport abelian_obstruction_check(const GroupSpace& G, const PointSet& K,
                                            const GroupPoint& a, const Weight& w,
                                            std::int64_t horizon);

Certificate transitivity_certificate(const GroupSpace& G, const PointSet& K,
                                     const GroupPoint& a, const Weight& w,
                                     const YoungFunction& phi,
                                     std::span<const std::int64_t> schedule,
                                     const CertifyConfig& cfg = {});

/// Identical criterion on the full sequence 1..N (mixing needs decay along
/// every n, not a subsequence).
Certificate mixing_certificate(const GroupSpace& G, const PointSet& K,
                               const GroupPoint& a, const Weight& w,
                               const YoungFunction& phi, std::int64_t N,
                               const CertifyConfig& cfg = {});

Certificate chaos_certificate(const GroupSpace& G, const PointSet& K,
                              const GroupPoint& a, const Weight& w,
                              const YoungFunction& phi,
                              std::span<const std::int64_t> schedule,
                              const CertifyConfig& cfg = {});

struct BlowupProbe {
  bool found = false;
  std::int64_t n_k = 0;
  PointSet E;
  double dist_f = 0.0;    // || f - f chi_{E_k} ||
  double norm_Tf = 0.0;   // || T^{n_k} (f chi_{E_k}) ||
  double dist_g = 0.0;    // || g - g chi_{E_k} ||
  double norm_Sg = 0.0;   // || S^{n_k} (g chi_{E_k}) ||
};

/// Searches the schedule for a step witnessing the blow-up/collapse
/// construction: all four norms below eps.  On failure returns the best
/// quadruple found (smallest maximum).
BlowupProbe blowup_collapse_probe(const SimpleFunction& f, const SimpleFunction& g,
                                  double eps, const GroupPoint& a, const Weight& w,
                                  const YoungFunction& phi,
                                  std::span<const std::int64_t> schedule,
                                  const EkStrategy& strategy = {});

}  // namespace ordyn
