#include "ordyn/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace ordyn {

namespace {

const std::vector<std::string> kModes = {
    "norm",          "conjugate",      "validate-weight",
    "certify-transitive", "certify-mixing", "certify-chaotic",
    "orbit",         "periodic",       "probe-blowup"};

std::vector<std::int64_t> resolve_schedule(const json& j) {
  std::vector<std::int64_t> out;
  if (j.contains("list")) {
    for (const auto& v : j["list"]) out.push_back(v.get<std::int64_t>());
    return out;
  }
  const std::int64_t k_max = j.value("k_max", std::int64_t{30});
  const std::int64_t n0 = j.value("n0", std::int64_t{1});
  const std::int64_t step = j.value("step", std::int64_t{1});
  if (k_max < 1) throw parse_error("schedule: k_max must be >= 1");
  for (std::int64_t k = 1; k <= k_max; ++k) out.push_back(n0 + step * (k - 1));
  return out;
}

EkStrategy parse_strategy(const json& j) {
  EkStrategy st;
  if (j.is_string()) {
    if (j == "full") return st;
    throw parse_error("strategy: expected \"full\" or {\"greedy\": {...}}");
  }
  if (j.is_object() && j.contains("greedy")) {
    st.kind = EkStrategy::Kind::greedy;
    const json& g = j["greedy"];
    st.delta0 = g.value("delta0", 1.0);
    st.delta_ratio = g.value("ratio", 0.5);
    if (!(st.delta0 > 0.0) || !(st.delta_ratio > 0.0) || !(st.delta_ratio < 1.0))
      throw parse_error("greedy strategy: need delta0 > 0 and 0 < ratio < 1");
    return st;
  }
  throw parse_error("strategy: expected \"full\" or {\"greedy\": {...}}");
}

json strategy_to_json(const EkStrategy& st) {
  if (st.kind == EkStrategy::Kind::full) return json("full");
  json g;
  g["delta0"] = st.delta0;
  g["ratio"] = st.delta_ratio;
  json j;
  j["greedy"] = std::move(g);
  return j;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const json& j) {
  if (!j.is_object()) throw parse_error("config must be a JSON object");
  static const std::vector<std::string> known = {
      "mode", "group",  "weight",  "young",   "a",        "K",      "schedule",
      "strategy", "L_max", "tol",  "workers", "seed",     "f",      "g",
      "eps",  "N",      "n_k",     "E",       "y_values", "y_grid", "oracle",
      "sample", "generators"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw parse_error("config: unknown key '" + it.key() + "'");
  ExperimentConfig c;
  c.mode = j.value("mode", std::string{});
  if (std::find(kModes.begin(), kModes.end(), c.mode) == kModes.end())
    throw parse_error("config: unknown or missing mode '" + c.mode + "'");

  if (j.contains("group")) c.G = group_from_json(j["group"]);
  if (j.contains("weight")) c.w = weight_from_json(j["weight"]);
  if (j.contains("young")) c.phi = young_from_json(j["young"]);
  if (j.contains("a")) c.a = point_from_json(c.G, j["a"]);
  if (j.contains("K")) c.K = pointset_from_json(c.G, j["K"]);
  c.schedule_raw = j.contains("schedule") ? j["schedule"] : json{{"k_max", 30}};
  c.schedule = resolve_schedule(c.schedule_raw);
  if (j.contains("strategy")) c.strategy = parse_strategy(j["strategy"]);
  c.L_max = j.value("L_max", std::int64_t{8});
  c.tol = j.value("tol", 1e-9);
  c.workers = j.value("workers", 1);
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("f")) c.f = function_from_json(c.G, j["f"]);
  if (j.contains("g")) c.g = function_from_json(c.G, j["g"]);
  c.eps = j.value("eps", 0.01);
  c.N = j.value("N", std::int64_t{30});
  c.n_k = j.value("n_k", std::int64_t{5});
  if (j.contains("E")) c.E = pointset_from_json(c.G, j["E"]);
  if (j.contains("y_values"))
    for (const auto& v : j["y_values"]) c.y_values.push_back(v.get<double>());
  if (j.contains("y_grid")) {
    const json& g = j["y_grid"];
    const double lo = g.value("lo", 0.0), hi = g.value("hi", 4.0);
    const int n = g.value("n", 41);
    if (n < 2 || !(hi > lo)) throw parse_error("y_grid: need hi > lo and n >= 2");
    for (int i = 0; i < n; ++i) c.y_values.push_back(lo + (hi - lo) * i / (n - 1));
  }
  c.with_oracle = j.value("oracle", false);
  if (j.contains("sample")) {
    const json& s = j["sample"];
    if (!s.contains("box")) throw parse_error("sample: expected {\"box\":{...}}");
    std::vector<std::int64_t> lo, hi;
    for (const auto& v : s["box"]["lo"]) lo.push_back(v.get<std::int64_t>());
    for (const auto& v : s["box"]["hi"]) hi.push_back(v.get<std::int64_t>());
    c.sample_box = {lo, hi};
    c.sample_pairs = s.value("pairs", std::int64_t{200});
  }
  if (j.contains("generators"))
    for (const auto& v : j["generators"]) c.generators.push_back(point_from_json(c.G, v));
  return c;
}

json ExperimentConfig::canonical() const {
  json j;
  j["mode"] = mode;
  j["group"] = group_to_json(G);
  j["weight"] = weight_to_json(w);
  j["young"] = young_to_json(phi);
  if (a) j["a"] = point_to_json(*a);
  if (K) j["K"] = pointset_to_json(*K);
  j["schedule"] = schedule_raw;
  j["strategy"] = strategy_to_json(strategy);
  j["L_max"] = L_max;
  j["tol"] = tol;
  j["workers"] = workers;
  j["seed"] = seed;
  if (f) j["f"] = function_to_json(*f);
  if (g) j["g"] = function_to_json(*g);
  j["eps"] = eps;
  j["N"] = N;
  j["n_k"] = n_k;
  if (E) j["E"] = pointset_to_json(*E);
  if (!y_values.empty()) j["y_values"] = y_values;
  j["oracle"] = with_oracle;
  if (sample_box) {
    json b;
    b["lo"] = sample_box->first;
    b["hi"] = sample_box->second;
    json s;
    s["box"] = std::move(b);
    s["pairs"] = sample_pairs;
    j["sample"] = std::move(s);
  }
  if (!generators.empty()) {
    json g2 = json::array();
    for (const auto& gp : generators) g2.push_back(point_to_json(gp));
    j["generators"] = std::move(g2);
  }
  return j;
}

namespace {

const GroupPoint& require_a(const ExperimentConfig& c) {
  if (!c.a) throw parse_error("config: mode '" + c.mode + "' requires \"a\"");
  return *c.a;
}
const PointSet& require_K(const ExperimentConfig& c) {
  if (!c.K) throw parse_error("config: mode '" + c.mode + "' requires \"K\"");
  return *c.K;
}
const SimpleFunction& require_f(const ExperimentConfig& c) {
  if (!c.f) throw parse_error("config: mode '" + c.mode + "' requires \"f\"");
  return *c.f;
}

json run_norm(const ExperimentConfig& c) {
  const SimpleFunction& f = require_f(c);
  json p;
  p["modular"] = modular(f, c.phi);
  p["luxemburg"] = norm_result_to_json(luxemburg_norm(f, c.phi));
  p["orlicz"] = norm_result_to_json(orlicz_norm(f, c.phi));
  p["weighted"] = norm_result_to_json(weighted_norm(f, c.w, c.phi));
  p["equivalence"] = equivalence_to_json(norm_equivalence_check(f, c.phi));
  if (c.with_oracle) {
    const SimpleFunction fw = f.times_weight(c.w);
    const double oracle = dual_ball_oracle(fw, c.phi.conjugate_function());
    p["oracle"] = oracle;
    p["oracle_vs_amemiya"] = std::fabs(oracle - p["weighted"]["value"].get<double>());
  }
  return p;
}

json run_conjugate(const ExperimentConfig& c) {
  std::vector<double> ys = c.y_values;
  if (ys.empty())
    for (int i = 0; i <= 40; ++i) ys.push_back(4.0 * i / 40.0);
  ConjugateTable tab;
  tab.refinement = ConjugateConfig{}.tol;
  for (double y : ys) {
    tab.breakpoints.push_back(y);
    try {
      tab.values.push_back(c.phi.conjugate(y));
    } catch (const divergence_error&) {
      tab.values.push_back(std::numeric_limits<double>::infinity());
    }
  }
  json p;
  p["table"] = conjugate_table_to_json(tab);
  p["well_formed"] = tab.well_formed();
  return p;
}

json run_validate_weight(const ExperimentConfig& c) {
  std::vector<std::pair<GroupPoint, GroupPoint>> sample;
  PointSet pool;
  if (c.sample_box) {
    pool = PointSet::box(c.G, c.sample_box->first, c.sample_box->second);
  } else if (c.K) {
    pool = *c.K;
  } else {
    throw parse_error("validate-weight: provide \"sample\" {box, pairs} or \"K\"");
  }
  const auto& pts = pool.points();
  if (pts.empty()) throw precondition_error("validate-weight: empty sample pool");
  std::mt19937_64 rng(c.seed);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  for (std::int64_t i = 0; i < c.sample_pairs; ++i)
    sample.emplace_back(pts[pick(rng)], pts[pick(rng)]);
  // Systematic pairs sharpen refutation: (x, x^{-1}) probes w(e) <= w(x) w(x^{-1}).
  for (std::size_t i = 0; i < pts.size() && i < 64; ++i)
    sample.emplace_back(pts[i], c.G.inv(pts[i]));

  std::vector<GroupPoint> gens = c.generators;
  if (gens.empty()) {
    if (c.a) {
      gens.push_back(*c.a);
    } else if (c.G.arity() == 1) {
      gens.push_back(c.G.make(std::vector<std::int64_t>{1}));
    } else {
      gens.push_back(c.G.make(std::vector<std::int64_t>{1, 0, 0}));
      gens.push_back(c.G.make(std::vector<std::int64_t>{0, 1, 0}));
      gens.push_back(c.G.make(std::vector<std::int64_t>{0, 0, 1}));
    }
  }
  const auto rep = validate_weight(c.G, c.w, sample, gens);
  return validation_to_json(rep);
}

json run_certify(const ExperimentConfig& c) {
  const GroupPoint& a = require_a(c);
  const PointSet& K = require_K(c);
  CertifyConfig cc;
  cc.tol = c.tol;
  cc.workers = c.workers;
  cc.L_max = c.L_max;
  cc.strategy = c.strategy;

  Certificate cert;
  std::int64_t horizon = 0;
  if (c.mode == "certify-transitive") {
    cert = transitivity_certificate(c.G, K, a, c.w, c.phi, c.schedule, cc);
    horizon = c.schedule.back();
  } else if (c.mode == "certify-mixing") {
    cert = mixing_certificate(c.G, K, a, c.w, c.phi, c.N, cc);
    horizon = c.N;
  } else {
    cert = chaos_certificate(c.G, K, a, c.w, c.phi, c.schedule, cc);
    horizon = c.schedule.back();
  }
  json p;
  p["certificate"] = certificate_to_json(cert);
  p["aperiodicity"] = aperiodicity_to_json(aperiodicity_window(c.G, a, K, horizon));
  return p;
}

json run_orbit(const ExperimentConfig& c) {
  const auto trace = orbit(require_f(c), require_a(c), c.N, c.w, c.phi);
  json p;
  p["orbit"] = orbit_to_json(trace);
  return p;
}

json run_periodic(const ExperimentConfig& c) {
  const SimpleFunction& f = require_f(c);
  const GroupPoint& a = require_a(c);
  if (!c.E) throw parse_error("periodic: requires \"E\"");
  const auto cand = periodic_point(f, *c.E, a, c.n_k, c.L_max, c.w, c.phi);
  const SimpleFunction drift = translate(cand.v, a, c.n_k).minus(cand.v);
  const double recomputed = weighted_norm(drift, c.w, c.phi).value;
  return periodic_to_json(cand, recomputed);
}

json run_probe(const ExperimentConfig& c) {
  const SimpleFunction& f = require_f(c);
  if (!c.g) throw parse_error("probe-blowup: requires \"g\"");
  const auto probe = blowup_collapse_probe(f, *c.g, c.eps, require_a(c), c.w,
                                           c.phi, c.schedule, c.strategy);
  return blowup_to_json(probe);
}

}  // namespace

RunReport run(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.mode = cfg.mode;
  rep.config_echo = cfg.canonical();
  if (cfg.mode == "norm")
    rep.payload = run_norm(cfg);
  else if (cfg.mode == "conjugate")
    rep.payload = run_conjugate(cfg);
  else if (cfg.mode == "validate-weight")
    rep.payload = run_validate_weight(cfg);
  else if (cfg.mode.rfind("certify-", 0) == 0)
    rep.payload = run_certify(cfg);
  else if (cfg.mode == "orbit")
    rep.payload = run_orbit(cfg);
  else if (cfg.mode == "periodic")
    rep.payload = run_periodic(cfg);
  else if (cfg.mode == "probe-blowup")
    rep.payload = run_probe(cfg);
  else
    throw parse_error("unknown mode '" + cfg.mode + "'");
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

json RunReport::to_json() const {
  json j;
  j["artifact_version"] = artifact_version;
  j["mode"] = mode;
  j["config"] = config_echo;
  j["payload"] = payload;
  j["wall_time_ms"] = wall_ms;
  return j;
}

std::string render_csv(const RunReport& report) {
  std::ostringstream os;
  if (report.payload.contains("certificate")) {
    const json& steps = report.payload["certificate"]["steps"];
    const bool series = !steps.empty() && steps.front().contains("series_plus");
    os << "k,n_k,E_size,q0,q_plus,q_minus";
    if (series) os << ",series_plus,tail_plus,series_minus,tail_minus";
    os << "\n";
    for (const auto& s : steps) {
      os << s["k"].get<std::int64_t>() << ',' << s["n_k"].get<std::int64_t>() << ','
         << s["E_size"].get<std::int64_t>() << ',' << format_double(s["q0"].get<double>())
         << ',' << format_double(s["q_plus"].get<double>()) << ','
         << format_double(s["q_minus"].get<double>());
      if (series) {
        const auto tail = [](const json& v) {
          return v.is_string() ? v.get<std::string>() : format_double(v.get<double>());
        };
        os << ',' << format_double(s["series_plus"].get<double>()) << ','
           << tail(s["tail_plus"]) << ',' << format_double(s["series_minus"].get<double>())
           << ',' << tail(s["tail_minus"]);
      }
      os << "\n";
    }
    return os.str();
  }
  if (report.payload.contains("orbit")) {
    os << "n,norm,distinct_count\n";
    for (const auto& e : report.payload["orbit"]["entries"]) {
      os << e["n"].get<std::int64_t>() << ',' << format_double(e["norm"].get<double>())
         << ',' << e["distinct_count"].get<std::int64_t>() << "\n";
    }
    return os.str();
  }
  throw csv_error("CSV export needs a series payload (certificate steps or an orbit trace)");
}

void emit_csv(const RunReport& report, const std::string& path) {
  write_text_atomic(path, render_csv(report));
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw domain_error("cannot open output file " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw domain_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

const std::map<std::string, json>& presets() {
  static const std::map<std::string, json> table = [] {
    std::map<std::string, json> m;
    m["reals-a5"] = json{
        {"mode", "certify-transitive"},
        {"group", {{"group", "lattice_line"}, {"h", 0.25}}},
        {"weight", {{"weight", "exp_abs"}, {"c", -1.0}}},
        {"young", {{"family", "power"}, {"p", 2.0}}},
        {"a", {20}},
        {"K", {{"box", {{"lo", {-12}}, {"hi", {12}}}}}},
        {"schedule", {{"k_max", 30}, {"n0", 1}, {"step", 1}}},
        {"strategy", "full"},
        {"tol", 1e-9}};
    m["heisenberg-a103"] = json{
        {"mode", "certify-chaotic"},
        {"group", {{"group", "heisenberg_z"}}},
        {"weight", {{"weight", "exp_abs"}, {"c", -1.0}}},
        {"young", {{"family", "power"}, {"p", 2.0}}},
        {"a", {1, 0, 3}},
        {"K", {{"box", {{"lo", {-2, -2, -2}}, {"hi", {2, 2, 2}}}}}},
        {"schedule", {{"k_max", 3}, {"n0", 5}, {"step", 5}}},
        {"strategy", "full"},
        {"L_max", 8},
        {"tol", 1e-9}};
    m["integers-decay"] = json{
        {"mode", "certify-transitive"},
        {"group", {{"group", "integer_line"}}},
        {"weight", {{"weight", "exp_abs"}, {"c", -1.0}}},
        {"young", {{"family", "power"}, {"p", 2.0}}},
        {"a", {1}},
        {"K", {{"box", {{"lo", {-3}}, {"hi", {3}}}}}},
        {"schedule", {{"k_max", 30}, {"n0", 1}, {"step", 1}}},
        {"strategy", "full"},
        {"tol", 1e-9}};
    m["integers-flat"] = json{
        {"mode", "certify-transitive"},
        {"group", {{"group", "integer_line"}}},
        {"weight", {{"weight", "constant"}, {"value", 1.0}}},
        {"young", {{"family", "power"}, {"p", 2.0}}},
        {"a", {1}},
        {"K", {{"box", {{"lo", {-3}}, {"hi", {3}}}}}},
        {"schedule", {{"k_max", 30}, {"n0", 1}, {"step", 1}}},
        {"strategy", "full"},
        {"tol", 1e-9}};
    m["integers-growth"] = json{
        {"mode", "certify-transitive"},
        {"group", {{"group", "integer_line"}}},
        {"weight", {{"weight", "exp_abs"}, {"c", 1.0}}},
        {"young", {{"family", "power"}, {"p", 2.0}}},
        {"a", {1}},
        {"K", {{"box", {{"lo", {-3}}, {"hi", {3}}}}}},
        {"schedule", {{"k_max", 30}, {"n0", 1}, {"step", 1}}},
        {"strategy", "full"},
        {"tol", 1e-9}};
    return m;
  }();
  return table;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const parse_error*>(&e)) return 2;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return 2;
  if (dynamic_cast<const csv_error*>(&e)) return 5;
  if (dynamic_cast<const capacity_error*>(&e)) return 4;
  if (dynamic_cast<const precondition_error*>(&e)) return 3;
  if (dynamic_cast<const domain_error*>(&e)) return 3;
  if (dynamic_cast<const divergence_error*>(&e)) return 3;
  return 1;
}

}  // namespace ordyn
