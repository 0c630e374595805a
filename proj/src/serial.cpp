#include "ordyn/serial.hpp"

#include <cmath>
#include <limits>

namespace ordyn {

namespace {

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw parse_error(std::string("missing key '") + key + "'");
  return *it;
}

double need_number(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number()) throw parse_error(std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<std::int64_t> coords_from_json(const json& j) {
  if (!j.is_array()) throw parse_error("point must be an array of integers");
  std::vector<std::int64_t> c;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw parse_error("point coordinates must be integers");
    c.push_back(v.get<std::int64_t>());
  }
  return c;
}

}  // namespace

json young_to_json(const YoungFunction& phi) {
  json j;
  switch (phi.family()) {
    case YoungFunction::Family::power:
      j["family"] = "power";
      j["p"] = phi.param();
      break;
    case YoungFunction::Family::power_log:
      j["family"] = "power_log";
      j["alpha"] = phi.param();
      break;
    case YoungFunction::Family::custom: {
      j["family"] = "custom";
      // Sample the evaluator so the object round-trips as a table.
      json table = json::array();
      for (int i = 0; i <= 64; ++i) {
        const double t = 16.0 * i / 64.0;
        table.push_back(json::array({t, phi(t)}));
      }
      j["table"] = std::move(table);
      break;
    }
  }
  return j;
}

YoungFunction young_from_json(const json& j) {
  const json& fam = need(j, "family");
  if (fam == "power") return YoungFunction::power(need_number(j, "p"));
  if (fam == "power_log") return YoungFunction::power_log(need_number(j, "alpha"));
  if (fam == "custom") {
    const json& table = need(j, "table");
    if (!table.is_array() || table.empty()) throw parse_error("custom family: 'table' must be a nonempty array");
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : table) {
      if (!row.is_array() || row.size() != 2) throw parse_error("custom table rows are [t, phi]");
      pts.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return YoungFunction::from_table(std::move(pts));
  }
  throw parse_error("unknown Young family '" + fam.dump() + "'");
}

json group_to_json(const GroupSpace& G) {
  json j;
  switch (G.kind()) {
    case GroupKind::IntegerLine: j["group"] = "integer_line"; break;
    case GroupKind::Cyclic:
      j["group"] = "cyclic";
      j["d"] = G.modulus();
      break;
    case GroupKind::LatticeLine:
      j["group"] = "lattice_line";
      j["h"] = G.step();
      break;
    case GroupKind::DiscreteHeisenberg: j["group"] = "heisenberg_z"; break;
  }
  return j;
}

GroupSpace group_from_json(const json& j) {
  const json& g = need(j, "group");
  if (g == "integer_line") return GroupSpace::integer_line();
  if (g == "cyclic") return GroupSpace::cyclic(need(j, "d").get<std::int64_t>());
  if (g == "lattice_line") return GroupSpace::lattice_line(need_number(j, "h"));
  if (g == "heisenberg_z") return GroupSpace::heisenberg();
  throw parse_error("unknown group '" + g.dump() + "'");
}

json point_to_json(const GroupPoint& p) {
  json j = json::array();
  for (int i = 0; i < p.arity; ++i) j.push_back(p.c[i]);
  return j;
}

GroupPoint point_from_json(const GroupSpace& G, const json& j) {
  const auto c = coords_from_json(j);
  return G.make(c);
}

json weight_to_json(const Weight& w) {
  json j;
  switch (w.family()) {
    case Weight::Family::constant:
      j["weight"] = "constant";
      j["value"] = w.constant_value();
      break;
    case Weight::Family::exp_abs:
      j["weight"] = "exp_abs";
      j["c"] = w.rate();
      break;
    case Weight::Family::table: {
      j["weight"] = "custom";
      json pts = json::array(), vals = json::array();
      for (const auto& [p, v] : w.entries()) {
        pts.push_back(point_to_json(p));
        vals.push_back(v);
      }
      j["points"] = std::move(pts);
      j["values"] = std::move(vals);
      j["default"] = w.default_value();
      break;
    }
  }
  return j;
}

Weight weight_from_json(const json& j) {
  const json& w = need(j, "weight");
  if (w == "constant") return Weight::constant(need_number(j, "value"));
  if (w == "exp_abs") return Weight::exp_abs(need_number(j, "c"));
  if (w == "custom") {
    const json& pts = need(j, "points");
    const json& vals = need(j, "values");
    if (!pts.is_array() || !vals.is_array() || pts.size() != vals.size())
      throw parse_error("custom weight: 'points' and 'values' must be arrays of equal length");
    std::vector<std::pair<GroupPoint, double>> entries;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto c = coords_from_json(pts[i]);
      GroupPoint p;
      p.arity = static_cast<std::uint8_t>(c.size());
      for (std::size_t k = 0; k < c.size() && k < 3; ++k) p.c[k] = c[k];
      entries.emplace_back(p, vals[i].get<double>());
    }
    const double def = j.contains("default") ? j["default"].get<double>() : 1.0;
    return Weight::table(std::move(entries), def);
  }
  throw parse_error("unknown weight family '" + w.dump() + "'");
}

json function_to_json(const SimpleFunction& f) {
  json pts = json::array(), amps = json::array();
  for (const auto& [p, amp] : f.support()) {
    pts.push_back(point_to_json(p));
    amps.push_back(json::array({amp.real(), amp.imag()}));
  }
  json j;
  j["points"] = std::move(pts);
  j["amps"] = std::move(amps);
  return j;
}

SimpleFunction function_from_json(const GroupSpace& G, const json& j) {
  const json& pts = need(j, "points");
  const json& amps = need(j, "amps");
  if (!pts.is_array() || !amps.is_array() || pts.size() != amps.size())
    throw parse_error("function: 'points' and 'amps' must be arrays of equal length");
  std::vector<SimpleFunction::Atom> atoms;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const GroupPoint p = point_from_json(G, pts[i]);
    const json& a = amps[i];
    std::complex<double> amp;
    if (a.is_number()) {
      amp = a.get<double>();
    } else if (a.is_array() && a.size() == 2) {
      amp = {a[0].get<double>(), a[1].get<double>()};
    } else {
      throw parse_error("function amplitudes are numbers or [re, im] pairs");
    }
    atoms.emplace_back(p, amp);
  }
  return SimpleFunction(G, std::move(atoms));
}

json pointset_to_json(const PointSet& s) {
  json j = json::array();
  for (const auto& p : s.points()) j.push_back(point_to_json(p));
  return j;
}

PointSet pointset_from_json(const GroupSpace& G, const json& j) {
  if (j.is_object() && j.contains("box")) {
    const json& b = j["box"];
    const auto lo = coords_from_json(need(b, "lo"));
    const auto hi = coords_from_json(need(b, "hi"));
    return PointSet::box(G, lo, hi);
  }
  if (!j.is_array()) throw parse_error("point set: expected a point array or {\"box\":{...}}");
  std::vector<GroupPoint> pts;
  for (const auto& pj : j) pts.push_back(point_from_json(G, pj));
  return PointSet(std::move(pts));
}

json norm_result_to_json(const NormResult& r) {
  json j;
  j["value"] = r.value;
  j["method"] = to_string(r.method);
  j["gap"] = r.certified_gap;
  return j;
}

json equivalence_to_json(const EquivalenceCheck& e) {
  json j;
  j["luxemburg"] = e.luxemburg;
  j["orlicz"] = e.orlicz;
  j["ratio"] = e.ratio;
  return j;
}

json conjugate_table_to_json(const ConjugateTable& t) {
  json j;
  j["breakpoints"] = t.breakpoints;
  json vals = json::array();
  for (double v : t.values) {
    if (std::isinf(v))
      vals.push_back("inf");
    else
      vals.push_back(v);
  }
  j["values"] = std::move(vals);
  j["refinement"] = t.refinement;
  return j;
}

json validation_to_json(const WeightValidation& v) {
  json j;
  switch (v.verdict) {
    case SubmultVerdict::unchecked: j["verdict"] = "unchecked"; break;
    case SubmultVerdict::verified_on_sample: j["verdict"] = "verified-on-sample"; break;
    case SubmultVerdict::refuted: j["verdict"] = "refuted"; break;
  }
  if (v.counterexample) {
    j["counterexample"] = json::array(
        {point_to_json(v.counterexample->first), point_to_json(v.counterexample->second)});
  } else {
    j["counterexample"] = nullptr;
  }
  j["worst_ratio"] = v.worst_ratio;
  json bc = json::array();
  for (const auto& [a, c] : v.bound_constants) {
    json e;
    e["a"] = point_to_json(a);
    e["C"] = c;
    bc.push_back(std::move(e));
  }
  j["bound_constants"] = std::move(bc);
  j["pairs_checked"] = v.pairs_checked;
  return j;
}

json aperiodicity_to_json(const AperiodicityReport& r) {
  json j;
  j["ok"] = r.ok;
  if (r.ok) {
    j["M"] = r.M;
    j["verified_to"] = r.verified_to;
  } else {
    j["witness"] = r.witness;
    j["verified_to"] = r.verified_to;
  }
  return j;
}

json orbit_to_json(const OrbitTrace& t) {
  json rows = json::array();
  for (const auto& e : t.entries) {
    json r;
    r["n"] = e.n;
    r["norm"] = e.norm;
    r["distinct_count"] = e.distinct_so_far;
    rows.push_back(std::move(r));
  }
  json j;
  j["entries"] = std::move(rows);
  j["distinct"] = t.distinct;
  return j;
}

json periodic_to_json(const PeriodicCandidate& c, double recomputed_residual) {
  json j;
  j["period"] = c.period;
  j["truncation"] = c.truncation;
  j["residual_bound"] = c.residual_bound;
  j["recomputed_residual"] = recomputed_residual;
  j["support_size"] = c.v.size();
  j["v"] = function_to_json(c.v);
  return j;
}

json certificate_to_json(const Certificate& c) {
  json j;
  j["version"] = 1;
  j["mode"] = to_string(c.mode);
  j["verdict"] = to_string(c.verdict);
  if (c.verdict == CertVerdict::obstructed) {
    j["obstruction"] = {{"bound", c.obstruction_bound}, {"detail", c.obstruction_reason}};
  }
  json steps = json::array();
  for (const auto& s : c.steps) {
    json e;
    e["k"] = s.k;
    e["n_k"] = s.n_k;
    e["E_size"] = s.E_size;
    e["q0"] = s.q0;
    e["q_plus"] = s.q_plus;
    e["q_minus"] = s.q_minus;
    if (s.has_series) {
      e["series_plus"] = s.series_plus;
      e["tail_plus"] = std::isinf(s.tail_plus) ? json("unbounded") : json(s.tail_plus);
      e["series_minus"] = s.series_minus;
      e["tail_minus"] = std::isinf(s.tail_minus) ? json("unbounded") : json(s.tail_minus);
    }
    e["a_pow"] = point_to_json(s.a_pow);
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  j["decay_ratio"] = c.decay_ratio;
  j["tol"] = c.tol;
  return j;
}

json blowup_to_json(const BlowupProbe& p) {
  json j;
  j["found"] = p.found;
  j["n_k"] = p.n_k;
  j["E_size"] = p.E.size();
  j["E"] = pointset_to_json(p.E);
  j["dist_f"] = p.dist_f;
  j["norm_Tf"] = p.norm_Tf;
  j["dist_g"] = p.dist_g;
  j["norm_Sg"] = p.norm_Sg;
  return j;
}

json obstruction_to_json(const ObstructionReport& r) {
  json j;
  switch (r.status) {
    case ObstructionReport::Status::holds: j["status"] = "holds"; break;
    case ObstructionReport::Status::fails: j["status"] = "fails"; break;
    case ObstructionReport::Status::not_applicable: j["status"] = "not-applicable"; break;
  }
  j["bound"] = r.bound;
  j["detail"] = r.detail;
  return j;
}

}  // namespace ordyn
