#include "ordyn/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "ordyn/scalar.hpp"

namespace ordyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> abs_amplitudes(const SimpleFunction& f) {
  std::vector<double> a;
  a.reserve(f.size());
  for (const auto& [p, amp] : f.support()) a.push_back(std::abs(amp));
  return a;
}

}  // namespace

std::string to_string(NormResult::Method m) {
  switch (m) {
    case NormResult::Method::luxemburg_bisection: return "luxemburg-bisection";
    case NormResult::Method::amemiya: return "amemiya";
    case NormResult::Method::dual_oracle: return "dual-oracle";
  }
  return "?";
}

double modular(const SimpleFunction& f, const YoungFunction& phi) {
  const double mass = f.carrier().haar_mass();
  double s = 0.0;
  for (const auto& [p, amp] : f.support()) s += phi(std::abs(amp)) * mass;
  return s;
}

NormResult luxemburg_norm(const SimpleFunction& f, const YoungFunction& phi,
                          double tol) {
  NormResult r;
  r.method = NormResult::Method::luxemburg_bisection;
  if (f.is_zero()) return r;

  const std::vector<double> amps = abs_amplitudes(f);
  const double mass = f.carrier().haar_mass();
  const auto mod_at = [&](double k) {
    double s = 0.0;
    for (double a : amps) s += phi(a / k) * mass;
    return s;
  };

  double hi = std::max(f.max_abs(), 1e-300);
  while (mod_at(hi) > 1.0) {
    hi *= 2.0;
    if (hi > 1e300) throw divergence_error("luxemburg bisection: no feasible scale");
  }
  double lo = hi;
  while (mod_at(lo) <= 1.0) {
    lo *= 0.5;
    if (lo < 1e-300) break;  // modular jumps straight past 1: k* ~ 0
  }
  while (hi - lo > tol * std::min(1.0, hi) + 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (mod_at(mid) <= 1.0 ? hi : lo) = mid;
  }
  r.value = hi;  // smallest bracketed k with modular <= 1
  r.certified_gap = hi - lo;
  return r;
}

NormResult orlicz_norm(const SimpleFunction& f, const YoungFunction& phi,
                       double tol) {
  NormResult r;
  r.method = NormResult::Method::amemiya;
  if (f.is_zero()) return r;

  const std::vector<double> amps = abs_amplitudes(f);
  const double mass = f.carrier().haar_mass();
  // Amemiya functional in s = 1/k: s + s * modular(f/s); convex in s
  // (perspective of the convex modular), so a dyadic bracket plus golden
  // section is exact up to tolerance.
  const auto h = [&](double s) {
    double m = 0.0;
    for (double a : amps) m += phi(a / s) * mass;
    return s * (1.0 + m);
  };

  const double s0 = std::max(f.max_abs(), 1e-290);
  const auto [lo, hi] = bracket_min_positive(h, s0);
  // Relative tolerance keeps full significance when the norm itself is far
  // below 1 (deep-decay certificate tails).
  const ScalarMin m = golden_min(h, lo, hi, 1e-300, std::max(tol * 0.1, 1e-11));
  r.value = m.value;
  // Convexity bound: the true minimum lies within one final-bracket width
  // of the returned point, so twice the local spread bounds the error.
  const double w = std::max(m.width, 1e-300);
  const double spread =
      std::max(h(std::max(m.x - w, lo * 0.5)), h(m.x + w)) - m.value;
  r.certified_gap = 2.0 * std::max(spread, 0.0) + 1e-15;
  return r;
}

NormResult weighted_norm(const SimpleFunction& f, const Weight& w,
                         const YoungFunction& phi, double tol) {
  return orlicz_norm(f.times_weight(w), phi, tol);
}

namespace {

// Exact extremal for Psi(t) = t^q / q: the optimal v is proportional to
// g^{p-1} and the pairing evaluates to q^{1/q} (sum m g^p)^{1/p}.
double oracle_power(const std::vector<double>& g, double mass, double q) {
  const double p = q / (q - 1.0);
  double s = 0.0;
  for (double x : g) s += mass * std::pow(x, p);
  if (s == 0.0) return 0.0;
  return std::pow(q, 1.0 / q) * std::pow(s, 1.0 / p);
}

struct OracleWork {
  const std::vector<double>& g;
  double mass;
  const YoungFunction& psi;

  // argmax over v >= 0 of g_i v - mu Psi(v): concave, bracket + golden.
  double coordinate_argmax(double gi, double mu) const {
    if (gi <= 0.0) return 0.0;
    const auto neg = [&](double v) { return -(gi * v - mu * psi(v)); };
    double x_prev = 0.0, x_cur = 1.0;
    double f_prev = 0.0, f_cur = -neg(x_cur);
    double lo = 0.0, hi = x_cur;
    if (f_cur > f_prev) {
      for (;;) {
        const double x_next = x_cur * 2.0;
        if (x_next > 1e12) { lo = x_cur; hi = x_next; break; }
        const double f_next = -neg(x_next);
        if (f_next <= f_cur) { lo = x_prev; hi = x_next; break; }
        x_prev = x_cur; f_prev = f_cur; x_cur = x_next; f_cur = f_next;
      }
    }
    return golden_min(neg, lo, hi, 1e-9, 1e-11).x;
  }

  double budget_used(const std::vector<double>& v) const {
    double s = 0.0;
    for (double x : v) s += mass * psi(x);
    return s;
  }

  double pairing(const std::vector<double>& v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += mass * g[i] * v[i];
    return s;
  }
};

}  // namespace

double dual_ball_oracle(const SimpleFunction& gf, const YoungFunction& psi,
                        const OracleConfig& cfg) {
  if (gf.is_zero()) return 0.0;
  const std::vector<double> g = abs_amplitudes(gf);
  const double mass = gf.carrier().haar_mass();

  if (psi.is_indicator()) {
    // Psi-ball = { 0 <= v <= cap }: the pairing is maximized at v == cap.
    double s = 0.0;
    for (double x : g) s += mass * x;
    return psi.indicator_cap() * s;
  }
  if (!cfg.force_numeric && psi.family() == YoungFunction::Family::power &&
      psi.param() > 1.0) {
    return oracle_power(g, mass, psi.param());
  }
  if (g.size() > cfg.max_support) {
    std::ostringstream os;
    os << "dual ball oracle: support " << g.size() << " exceeds the cap "
       << cfg.max_support << " for a non-power conjugate";
    throw capacity_error(os.str());
  }

  const OracleWork work{g, mass, psi};

  // Multiplier search: per coordinate the KKT point is
  // argmax_v (g_i v - mu Psi(v)); the total Psi-budget C(mu) is
  // nonincreasing in mu, so bisect it onto the unit ball boundary.
  const auto spent = [&](double mu, std::vector<double>* vs) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = work.coordinate_argmax(g[i], mu);
    const double c = work.budget_used(v);
    if (vs) *vs = std::move(v);
    return c;
  };

  const double g_max = *std::max_element(g.begin(), g.end());
  double mu_hi = std::max(g_max, 1e-12);
  while (spent(mu_hi, nullptr) > 1.0) {
    mu_hi *= 2.0;
    if (mu_hi > 1e18 * g_max) break;
  }
  double mu_lo = mu_hi * 0.5;
  while (spent(mu_lo, nullptr) < 1.0) {
    mu_lo *= 0.5;
    if (mu_lo < 1e-18 * g_max) break;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = std::sqrt(mu_lo * mu_hi);
    (spent(mid, nullptr) > 1.0 ? mu_lo : mu_hi) = mid;
  }

  std::vector<double> base;
  spent(mu_hi, &base);  // feasible side of the bracket

  // When the optimal multiplier coincides with some g_i the coordinate
  // map jumps across the ball boundary (flat segment of Psi'): the true
  // optimum then tops up exactly that coordinate with the leftover
  // budget.  Try the top-up on every coordinate and keep the best.
  const auto topped_up = [&](std::vector<double> v, std::size_t i) {
    double others = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (j != i) others += mass * psi(v[j]);
    const double budget = (1.0 - others) / mass;
    if (budget > psi(v[i])) v[i] = std::max(v[i], psi.inverse(budget, 1e-12));
    return v;
  };

  double best = work.pairing(base);
  std::vector<double> winner = base;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (g[i] <= 0.0) continue;
    const auto cand = topped_up(base, i);
    const double val = work.pairing(cand);
    if (val > best) {
      best = val;
      winner = cand;
    }
  }
  // residual slack sweeps (no-ops away from the jump case)
  for (int sweep = 0; sweep < 2; ++sweep)
    for (std::size_t i = 0; i < winner.size(); ++i)
      if (g[i] > 0.0) winner = topped_up(std::move(winner), i);
  best = std::max(best, work.pairing(winner));

  // Uniform-level fallback candidate, useful when the multiplier bracket
  // collapsed at an extreme.
  {
    const double level = psi.inverse(1.0 / (mass * static_cast<double>(g.size())), 1e-12);
    std::vector<double> u(g.size(), level);
    for (std::size_t i = 0; i < u.size(); ++i)
      if (g[i] <= 0.0) u[i] = 0.0;
    if (work.budget_used(u) <= 1.0 + 1e-12) best = std::max(best, work.pairing(u));
  }
  return best;
}

EquivalenceCheck norm_equivalence_check(const SimpleFunction& f,
                                        const YoungFunction& phi) {
  EquivalenceCheck ec;
  if (f.is_zero()) return ec;
  ec.luxemburg = luxemburg_norm(f, phi).value;
  ec.orlicz = orlicz_norm(f, phi).value;
  ec.ratio = ec.orlicz / ec.luxemburg;
  return ec;
}

}  // namespace ordyn
