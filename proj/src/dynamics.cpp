#include "ordyn/dynamics.hpp"

#include <algorithm>
#include <sstream>

namespace ordyn {

SimpleFunction TranslationOp::apply(const SimpleFunction& f, std::int64_t steps) const {
  return translate(f, a, forward ? steps : -steps);
}

SimpleFunction translate(const SimpleFunction& f, const GroupPoint& a,
                         std::int64_t n) {
  return f.right_translated(f.carrier().pow(a, n));
}

OrbitTrace orbit(const SimpleFunction& f, const GroupPoint& a, std::int64_t N,
                 const Weight& w, const YoungFunction& phi) {
  if (N < 1) throw precondition_error("orbit: N must be >= 1");
  OrbitTrace trace;
  trace.entries.reserve(N);
  std::vector<SimpleFunction> seen;
  SimpleFunction cur = f;
  for (std::int64_t n = 0; n < N; ++n) {
    if (n > 0) cur = translate(cur, a, 1);
    if (std::find(seen.begin(), seen.end(), cur) == seen.end()) seen.push_back(cur);
    OrbitEntry e;
    e.n = n;
    e.fn = cur;
    e.norm = weighted_norm(cur, w, phi).value;
    e.distinct_so_far = seen.size();
    trace.entries.push_back(e);
  }
  trace.distinct = seen.size();
  return trace;
}

double operator_norm_bound(const GroupSpace& G, const GroupPoint& a,
                           const Weight& w, const PointSet& sample) {
  if (sample.empty()) throw precondition_error("operator_norm_bound: empty sample");
  double c = 0.0;
  for (const auto& x : sample.points()) c = std::max(c, w(G, G.mul(x, a)) / w(G, x));
  return c;
}

PeriodicCandidate periodic_point(const SimpleFunction& f, const PointSet& E,
                                 const GroupPoint& a, std::int64_t n_k,
                                 std::int64_t L_max, const Weight& w,
                                 const YoungFunction& phi) {
  if (n_k < 1) throw precondition_error("periodic_point: n_k must be >= 1");
  if (L_max < 0) throw precondition_error("periodic_point: L_max must be >= 0");
  const GroupSpace& G = f.carrier();

  // The construction needs E a^{r n_k} disjoint from E a^{s n_k} for all
  // r != s with |r|, |s| <= L_max + 1.
  std::vector<PointSet> translates;
  for (std::int64_t l = -(L_max + 1); l <= L_max + 1; ++l)
    translates.push_back(E.translated(G, G.pow(a, l * n_k)));
  for (std::size_t i = 0; i < translates.size(); ++i)
    for (std::size_t j = i + 1; j < translates.size(); ++j)
      if (translates[i].intersects(translates[j])) {
        const std::int64_t r = static_cast<std::int64_t>(i) - (L_max + 1);
        const std::int64_t s = static_cast<std::int64_t>(j) - (L_max + 1);
        std::ostringstream os;
        os << "periodic_point: translates E a^{r n_k} and E a^{s n_k} collide for (r, s) = ("
           << r << ", " << s << ")";
        throw precondition_error(os.str());
      }

  const SimpleFunction core = f.restricted(E);
  SimpleFunction v = SimpleFunction::zero(G);
  for (std::int64_t l = -L_max; l <= L_max; ++l)
    v = v.plus(translate(core, a, l * n_k));

  PeriodicCandidate cand{std::move(v), n_k, L_max, 0.0};
  const double head = weighted_norm(translate(core, a, (L_max + 1) * n_k), w, phi).value;
  const double tail = weighted_norm(translate(core, a, -L_max * n_k), w, phi).value;
  cand.residual_bound = head + tail;
  return cand;
}

std::optional<std::int64_t> orbit_hit(const SimpleFunction& f,
                                      const SimpleFunction& g,
                                      const GroupPoint& a, double eps,
                                      std::int64_t N, const Weight& w,
                                      const YoungFunction& phi) {
  if (!(eps > 0.0)) throw precondition_error("orbit_hit: eps must be positive");
  if (!(f.carrier() == g.carrier())) throw domain_error("orbit_hit: carrier mismatch");
  // The search starts at n = 1: the trivial hit T^0 f = g is not counted.
  SimpleFunction cur = f;
  for (std::int64_t n = 1; n <= N; ++n) {
    cur = translate(cur, a, 1);
    if (weighted_norm(cur.minus(g), w, phi).value < eps) return n;
  }
  return std::nullopt;
}

}  // namespace ordyn
