#include "ordyn/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "ordyn/scalar.hpp"

namespace ordyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this alpha the raw |t|^a (1 + |log|t||) has a concave dip left of
// t = 1 (second derivative (a-1)^2 - a < 0 at t -> 1-).
const double kPowerLogConvexAlpha = (3.0 + std::sqrt(5.0)) / 2.0;

double power_log_raw(double a, double t) {
  if (t == 0.0) return 0.0;
  return std::pow(t, a) * (1.0 + std::fabs(std::log(t)));
}

// d/dt of the raw formula, one-sided at the kink t = 1.
double power_log_raw_deriv_left(double a, double t) {  // 0 < t <= 1
  return std::pow(t, a - 1.0) * (a - 1.0 - a * std::log(t));
}
double power_log_raw_deriv_right(double a, double t) {  // t >= 1
  return std::pow(t, a - 1.0) * (a + 1.0 + a * std::log(t));
}

struct Chord {
  bool active = false;
  double t1 = 0, t2 = 0, slope = 0, phi_t1 = 0;
};

// Common tangent bridging the concave dip of the raw power-log formula:
// touches the convex left branch at t1 and either the kink point (1, 1)
// or the right branch at t2 with matching slope.
Chord power_log_chord(double a) {
  Chord ch;
  if (a >= kPowerLogConvexAlpha) return ch;
  const double t_star = std::exp(((a - 1.0) * (a - 1.0) - a) / (a * (a - 1.0)));
  const double s_hi = power_log_raw_deriv_left(a, t_star);
  const double s_lo = a - 1.0;  // slope at t -> 1-

  auto left_touch = [&](double s) {
    double lo = 1e-300, hi = t_star;
    for (int i = 0; i < 300 && hi - lo > 1e-16 * (1.0 + hi); ++i) {
      double mid = 0.5 * (lo + hi);
      (power_log_raw_deriv_left(a, mid) < s ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  auto right_touch = [&](double s) {
    if (s <= a + 1.0) return 1.0;  // absorbed by the kink
    double lo = 1.0, hi = 2.0;
    while (power_log_raw_deriv_right(a, hi) < s) hi *= 2.0;
    for (int i = 0; i < 300 && hi - lo > 1e-15 * hi; ++i) {
      double mid = 0.5 * (lo + hi);
      (power_log_raw_deriv_right(a, mid) < s ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  auto gap = [&](double s) {
    const double t1 = left_touch(s), t2 = right_touch(s);
    return power_log_raw(a, t2) - power_log_raw(a, t1) - s * (t2 - t1);
  };

  double s_a = s_lo * (1.0 + 1e-12) + 1e-14, s_b = s_hi * (1.0 - 1e-12);
  if (!(gap(s_a) > 0.0) || !(gap(s_b) < 0.0)) return ch;  // dip numerically gone
  for (int i = 0; i < 200 && s_b - s_a > 1e-14 * (1.0 + s_b); ++i) {
    double mid = 0.5 * (s_a + s_b);
    (gap(mid) > 0.0 ? s_a : s_b) = mid;
  }
  ch.slope = 0.5 * (s_a + s_b);
  ch.t1 = left_touch(ch.slope);
  ch.t2 = right_touch(ch.slope);
  ch.phi_t1 = power_log_raw(a, ch.t1);
  ch.active = true;
  return ch;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw domain_error(std::string(what) + ": non-finite input");
}

}  // namespace

struct YoungFunction::State {
  Family family = Family::custom;
  double param = 0.0;
  std::string name;
  std::function<double(double)> eval;   // on t >= 0
  std::function<double(double)> deriv;  // optional, on t >= 0
  std::function<double(double)> hint;   // optional closed-form conjugate, y >= 0
  Delta2Domain dom = Delta2Domain::all_t;
  double dom_t0 = 0.0;
  bool indicator = false;
  double cap = 0.0;
};

YoungFunction YoungFunction::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw domain_error("power family requires 1 <= p < inf");
  auto s = std::make_shared<State>();
  s->family = Family::power;
  s->param = p;
  std::ostringstream os;
  os << "power(p=" << p << ")";
  s->name = os.str();
  s->eval = [p](double t) { return std::pow(t, p) / p; };
  s->deriv = [p](double t) { return std::pow(t, p - 1.0); };
  if (p > 1.0) {
    const double q = p / (p - 1.0);
    s->hint = [q](double y) { return std::pow(y, q) / q; };
  }
  return YoungFunction(std::move(s));
}

YoungFunction YoungFunction::power_log(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha))
    throw domain_error("power_log family requires alpha > 1");
  auto s = std::make_shared<State>();
  s->family = Family::power_log;
  s->param = alpha;
  std::ostringstream os;
  os << "power_log(alpha=" << alpha << ")";
  s->name = os.str();
  const Chord ch = power_log_chord(alpha);
  s->eval = [alpha, ch](double t) {
    if (ch.active && t > ch.t1 && t < ch.t2)
      return ch.phi_t1 + ch.slope * (t - ch.t1);
    return power_log_raw(alpha, t);
  };
  s->deriv = [alpha, ch](double t) {
    if (t == 0.0) return 0.0;
    if (ch.active && t > ch.t1 && t < ch.t2) return ch.slope;
    return t < 1.0 ? power_log_raw_deriv_left(alpha, t)
                   : power_log_raw_deriv_right(alpha, t);
  };
  return YoungFunction(std::move(s));
}

YoungFunction YoungFunction::custom(std::string name,
                                    std::function<double(double)> eval,
                                    std::function<double(double)> deriv,
                                    std::function<double(double)> conjugate_hint,
                                    Delta2Domain dom, double dom_t0) {
  auto s = std::make_shared<State>();
  s->family = Family::custom;
  s->name = std::move(name);
  s->eval = std::move(eval);
  s->deriv = std::move(deriv);
  s->hint = std::move(conjugate_hint);
  s->dom = dom;
  s->dom_t0 = dom_t0;
  return YoungFunction(std::move(s));
}

YoungFunction YoungFunction::from_table(std::vector<std::pair<double, double>> pts) {
  if (pts.empty()) throw parse_error("custom table: empty");
  std::sort(pts.begin(), pts.end());
  for (const auto& [t, v] : pts)
    if (!std::isfinite(t) || !std::isfinite(v) || t < 0.0 || v < 0.0)
      throw parse_error("custom table: entries must be finite and nonnegative");
  if (pts.front().first > 0.0) pts.insert(pts.begin(), {0.0, 0.0});
  if (pts.size() < 2)
    throw parse_error("custom table: need at least one breakpoint with t > 0");
  auto s = std::make_shared<State>();
  s->family = Family::custom;
  s->name = "table";
  s->eval = [pts](double t) {
    auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(t, -1.0));
    if (it != pts.end() && it->first == t) return it->second;
    if (it == pts.begin()) return 0.0;
    // linear between neighbors, extrapolating with the last segment slope
    auto hi = (it == pts.end()) ? pts.end() - 1 : it;
    auto lo = hi - 1;
    if (hi == lo) return hi->second;
    const double slope = (hi->second - lo->second) / (hi->first - lo->first);
    return lo->second + slope * (t - lo->first);
  };
  return YoungFunction(std::move(s));
}

double YoungFunction::operator()(double t) const {
  require_finite(t, "Young evaluate");
  const double a = std::fabs(t);
  if (s_->indicator) return a <= s_->cap ? 0.0 : kInf;
  if (a == 0.0) return 0.0;
  return s_->eval(a);
}

bool YoungFunction::has_derivative() const { return static_cast<bool>(s_->deriv); }

double YoungFunction::derivative(double t) const {
  if (!s_->deriv) throw domain_error("Young function has no derivative attached");
  require_finite(t, "Young derivative");
  return s_->deriv(std::fabs(t));
}

YoungFunction::Family YoungFunction::family() const { return s_->family; }
double YoungFunction::param() const { return s_->param; }
const std::string& YoungFunction::name() const { return s_->name; }
YoungFunction::Delta2Domain YoungFunction::delta2_domain() const { return s_->dom; }
double YoungFunction::delta2_threshold() const { return s_->dom_t0; }
bool YoungFunction::has_conjugate_hint() const { return static_cast<bool>(s_->hint); }
bool YoungFunction::is_indicator() const { return s_->indicator; }
double YoungFunction::indicator_cap() const { return s_->cap; }

double YoungFunction::conjugate(double y, const ConjugateConfig& cfg) const {
  require_finite(y, "conjugate");
  const double ay = std::fabs(y);
  if (ay == 0.0) return 0.0;
  if (s_->indicator) {
    // sup over [0, cap] of x|y| (the modular is 0 there, +inf beyond)
    return s_->cap * ay;
  }

  const auto objective = [&](double x) { return x * ay - (*this)(x); };

  // Expand a bracket geometrically until the objective decreases.
  double x_prev = 0.0, f_prev = 0.0;
  double x_cur = 1.0;
  double f_cur = objective(x_cur);
  double lo = 0.0, hi = x_cur;
  if (f_cur > f_prev) {
    for (;;) {
      const double x_next = x_cur * cfg.bracket_growth;
      if (x_next > cfg.bracket_limit) {
        std::ostringstream os;
        os << "conjugate diverges: objective still increasing on bracket ["
           << x_cur << ", " << x_next << "] at y=" << y
           << " (generator is not superlinear)";
        throw divergence_error(os.str());
      }
      const double f_next = objective(x_next);
      if (f_next <= f_cur) {
        lo = x_prev;
        hi = x_next;
        break;
      }
      x_prev = x_cur;
      f_prev = f_cur;
      x_cur = x_next;
      f_cur = f_next;
    }
  }
  const auto neg = [&](double x) { return -objective(x); };
  const ScalarMin m = golden_min(neg, lo, hi, cfg.tol, 1e-13);
  double value = std::max(0.0, -m.value);  // sup >= value at x = 0

  if (s_->hint) {
    const double h = s_->hint(ay);
    if (std::fabs(value - h) > 1e-7 * std::max(1.0, std::fabs(h)) + 1e-9) {
      std::ostringstream os;
      os << "conjugate cross-check failed for " << s_->name << " at y=" << y
         << ": numeric=" << value << " closed-form=" << h;
      throw domain_error(os.str());
    }
  }
  return value;
}

YoungFunction YoungFunction::conjugate_function(const ConjugateConfig& cfg) const {
  if (s_->family == Family::power) {
    const double p = s_->param;
    if (p > 1.0) return power(p / (p - 1.0));
    // p = 1: the complementary function is the indicator of [0, 1].
    auto st = std::make_shared<State>();
    st->family = Family::custom;
    st->name = "indicator(cap=1)";
    st->indicator = true;
    st->cap = 1.0;
    st->eval = [](double) { return 0.0; };
    return YoungFunction(std::move(st));
  }
  YoungFunction self = *this;
  auto st = std::make_shared<State>();
  st->family = Family::custom;
  st->name = s_->name + "*";
  st->eval = [self, cfg](double y) { return self.conjugate(y, cfg); };
  return YoungFunction(std::move(st));
}

double YoungFunction::young_gap(double x, double y, const ConjugateConfig& cfg) const {
  require_finite(x, "young_gap");
  require_finite(y, "young_gap");
  return (*this)(x) + conjugate(y, cfg) - std::fabs(x) * std::fabs(y);
}

YoungFunction::Delta2Report YoungFunction::delta2_probe(std::span<const double> t_grid,
                                                        double blowup_factor) const {
  Delta2Report rep;
  std::map<int, double> per_decade;  // decade -> max ratio
  bool any = false;
  for (double t : t_grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw domain_error("delta2 grid must be strictly positive");
    if (s_->dom == Delta2Domain::t_above && t < s_->dom_t0) continue;
    const double base = (*this)(t);
    if (base <= 0.0) throw domain_error("delta2 grid hit Phi(t) = 0");
    const double doubled = (*this)(2.0 * t);
    if (!std::isfinite(base)) continue;  // evaluator overflowed at t already
    // A finite Phi(t) with an overflowing Phi(2t) is blow-up evidence.
    const double ratio = std::isfinite(doubled)
                             ? doubled / base
                             : std::numeric_limits<double>::infinity();
    rep.constant = std::max(rep.constant, ratio);
    const int dec = static_cast<int>(std::floor(std::log10(t)));
    auto [it, fresh] = per_decade.try_emplace(dec, ratio);
    if (!fresh) it->second = std::max(it->second, ratio);
    any = true;
  }
  if (!any) throw domain_error("delta2 grid empty after domain restriction");

  // Unbounded growth heuristic: per-decade maxima nondecreasing and the top
  // decade exceeding the bottom one by the blowup factor.
  bool monotone = true;
  double prev = -1.0;
  for (const auto& [dec, r] : per_decade) {
    if (prev >= 0.0 && r < prev * (1.0 - 1e-9)) monotone = false;
    prev = r;
  }
  const double first = per_decade.begin()->second;
  const double last = per_decade.rbegin()->second;
  rep.pass = !(monotone && last > blowup_factor * first);
  return rep;
}

double YoungFunction::inverse(double y, double tol) const {
  if (!std::isfinite(y) || y < 0.0) throw domain_error("Young inverse requires y >= 0");
  if (y == 0.0) return 0.0;
  double hi = 1.0;
  while ((*this)(hi) < y) {
    hi *= 2.0;
    if (hi > 1e300) throw divergence_error("Young inverse: evaluator never reaches target");
  }
  const auto f = [&](double t) { return (*this)(t); };
  return bisect_nondecreasing(f, 0.0, hi, y, tol);
}

bool ConjugateTable::well_formed(double tol) const {
  if (breakpoints.size() != values.size() || breakpoints.empty()) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0) return false;
    if (i > 0 && breakpoints[i] <= breakpoints[i - 1]) return false;
    if (i > 0 && breakpoints[i - 1] >= 0.0 && values[i] < values[i - 1] - tol) return false;
  }
  for (std::size_t i = 2; i < values.size(); ++i) {
    const double a = values[i - 2], b = values[i - 1], c = values[i];
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) continue;
    const double x0 = breakpoints[i - 2], x1 = breakpoints[i - 1], x2 = breakpoints[i];
    const double lam = (x1 - x0) / (x2 - x0);
    if (b > (1.0 - lam) * a + lam * c + tol) return false;
  }
  return true;
}

ConjugateTable tabulate_conjugate(const YoungFunction& phi, double y_lo, double y_hi,
                                  int n, const ConjugateConfig& cfg) {
  if (n < 2 || !(y_hi > y_lo)) throw domain_error("conjugate table: need y_hi > y_lo and n >= 2");
  ConjugateTable tab;
  tab.refinement = cfg.tol;
  tab.breakpoints.reserve(n);
  tab.values.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double y = y_lo + (y_hi - y_lo) * i / (n - 1);
    tab.breakpoints.push_back(y);
    try {
      tab.values.push_back(phi.conjugate(y, cfg));
    } catch (const divergence_error&) {
      tab.values.push_back(kInf);  // +inf sentinel (p = 1 style endpoints)
    }
  }
  return tab;
}

}  // namespace ordyn
