#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ordyn/runner.hpp"

using namespace ordyn;
namespace fs = std::filesystem;

namespace {

json strip_wall_time(json j) {
  j.erase("wall_time_ms");
  return j;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ordyn_test_" + std::to_string(static_cast<unsigned>(::getpid())));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run_cli(const std::string& args, std::string* out = nullptr) {
  const std::string cmd = std::string(ORDYN_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string buf;
  char chunk[4096];
  while (std::size_t n = std::fread(chunk, 1, sizeof(chunk), pipe)) buf.append(chunk, n);
  const int status = ::pclose(pipe);
  if (out) *out = buf;
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("config parses, echoes, and re-parses to an equal document") {
  const json doc = presets().at("integers-decay");
  const auto cfg = ExperimentConfig::parse(doc);
  const auto echo = cfg.canonical();
  const auto cfg2 = ExperimentConfig::parse(echo);
  CHECK(cfg == cfg2);
  CHECK(cfg2.canonical() == echo);
  CHECK(cfg.mode == "certify-transitive");
  CHECK(cfg.schedule.size() == 30);
  CHECK(cfg.schedule.front() == 1);
  CHECK(cfg.schedule.back() == 30);
}

TEST_CASE("config parse errors") {
  CHECK_THROWS_AS(ExperimentConfig::parse(json{{"mode", "dance"}}), parse_error);
  CHECK_THROWS_AS(ExperimentConfig::parse(json::array()), parse_error);
  json bad = presets().at("integers-decay");
  bad["strategy"] = "lazy";
  CHECK_THROWS_AS(ExperimentConfig::parse(bad), parse_error);
  json bad2 = presets().at("integers-decay");
  bad2["group"] = json{{"group", "???"}};
  CHECK_THROWS_AS(ExperimentConfig::parse(bad2), parse_error);
  // typos in keys are rejected, not silently ignored
  json bad3 = presets().at("integers-decay");
  bad3["scheduel"] = json{{"k_max", 5}};
  CHECK_THROWS_WITH_AS(ExperimentConfig::parse(bad3), doctest::Contains("scheduel"),
                       parse_error);
}

TEST_CASE("norm mode, including the zero function") {
  json doc;
  doc["mode"] = "norm";
  doc["group"] = {{"group", "integer_line"}};
  doc["young"] = {{"family", "power"}, {"p", 2.0}};
  doc["f"] = {{"points", json::array()}, {"amps", json::array()}};
  auto rep = run(ExperimentConfig::parse(doc));
  CHECK(rep.payload["luxemburg"]["value"] == 0.0);
  CHECK(rep.payload["orlicz"]["value"] == 0.0);

  doc["f"] = {{"points", {{0}, {1}}}, {"amps", {1.0, 1.0}}};
  doc["oracle"] = true;
  rep = run(ExperimentConfig::parse(doc));
  CHECK(rep.payload["orlicz"]["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(rep.payload["oracle_vs_amemiya"].get<double>() <= 1e-4);
  CHECK(rep.payload["equivalence"]["ratio"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("conjugate mode tabulates with inf sentinels") {
  json doc;
  doc["mode"] = "conjugate";
  doc["young"] = {{"family", "power"}, {"p", 1.0}};
  doc["y_grid"] = {{"lo", 0.0}, {"hi", 2.0}, {"n", 9}};
  const auto rep = run(ExperimentConfig::parse(doc));
  CHECK(rep.payload["table"]["values"].back() == "inf");
  CHECK(rep.payload["well_formed"] == true);
}

TEST_CASE("validate-weight mode is deterministic under a seed") {
  json doc;
  doc["mode"] = "validate-weight";
  doc["group"] = {{"group", "integer_line"}};
  doc["weight"] = {{"weight", "exp_abs"}, {"c", -1.0}};
  doc["sample"] = {{"box", {{"lo", {-10}}, {"hi", {10}}}}, {"pairs", 100}};
  doc["seed"] = 7;
  const auto r1 = run(ExperimentConfig::parse(doc));
  const auto r2 = run(ExperimentConfig::parse(doc));
  CHECK(r1.payload == r2.payload);
  CHECK(r1.payload["verdict"] == "refuted");

  doc["weight"] = {{"weight", "exp_abs"}, {"c", 1.0}};
  const auto r3 = run(ExperimentConfig::parse(doc));
  CHECK(r3.payload["verdict"] == "verified-on-sample");
}

TEST_CASE("certify modes produce certificates and aperiodicity windows") {
  auto rep = run(ExperimentConfig::parse(presets().at("integers-decay")));
  CHECK(rep.payload["certificate"]["verdict"] == "certified-decaying");
  CHECK(rep.payload["aperiodicity"]["ok"] == true);
  CHECK(rep.payload["aperiodicity"]["M"] == 6);

  rep = run(ExperimentConfig::parse(presets().at("integers-growth")));
  CHECK(rep.payload["certificate"]["verdict"] == "obstructed");
  CHECK(rep.payload["certificate"]["obstruction"]["bound"].get<double>() >= 1.0);

  // lattice realization of translation by 5: the step stream decays by
  // exactly e^{-5} once the shifted window clears the origin
  rep = run(ExperimentConfig::parse(presets().at("reals-a5")));
  CHECK(rep.payload["certificate"]["verdict"] == "certified-decaying");
  CHECK(rep.payload["certificate"]["decay_ratio"].get<double>() ==
        doctest::Approx(std::exp(-5.0)).epsilon(1e-9));

  rep = run(ExperimentConfig::parse(presets().at("heisenberg-a103")));
  CHECK(rep.payload["certificate"]["mode"] == "chaotic");
  const auto& steps = rep.payload["certificate"]["steps"];
  REQUIRE(steps.size() == 3);
  // the step log echoes a^{n_k} = (n_k, 0, 3 n_k)
  for (const auto& s : steps) {
    const std::int64_t n = s["n_k"].get<std::int64_t>();
    CHECK(s["a_pow"] == json::array({n, 0, 3 * n}));
  }
}

TEST_CASE("orbit, periodic and probe modes") {
  json doc;
  doc["mode"] = "orbit";
  doc["group"] = {{"group", "cyclic"}, {"d", 4}};
  doc["a"] = {1};
  doc["N"] = 100;
  doc["f"] = {{"points", {{0}}}, {"amps", {1.0}}};
  auto rep = run(ExperimentConfig::parse(doc));
  CHECK(rep.payload["orbit"]["distinct"] == 4);
  CHECK(rep.payload["orbit"]["entries"].size() == 100);

  json pdoc;
  pdoc["mode"] = "periodic";
  pdoc["group"] = {{"group", "integer_line"}};
  pdoc["weight"] = {{"weight", "exp_abs"}, {"c", -1.0}};
  pdoc["a"] = {1};
  pdoc["f"] = {{"points", {{0}}}, {"amps", {1.0}}};
  pdoc["E"] = json::array({{0}});
  pdoc["n_k"] = 5;
  pdoc["L_max"] = 3;
  rep = run(ExperimentConfig::parse(pdoc));
  CHECK(rep.payload["residual_bound"].get<double>() < 1e-6);
  CHECK(rep.payload["recomputed_residual"].get<double>() <=
        rep.payload["residual_bound"].get<double>() + 1e-8);

  json bdoc;
  bdoc["mode"] = "probe-blowup";
  bdoc["group"] = {{"group", "integer_line"}};
  bdoc["weight"] = {{"weight", "exp_abs"}, {"c", -1.0}};
  bdoc["a"] = {1};
  bdoc["eps"] = 0.01;
  bdoc["f"] = {{"points", {{0}}}, {"amps", {1.0}}};
  bdoc["g"] = {{"points", {{0}}}, {"amps", {1.0}}};
  rep = run(ExperimentConfig::parse(bdoc));
  CHECK(rep.payload["found"] == true);
  CHECK(rep.payload["n_k"] == 5);
}

TEST_CASE("custom young tables and weight tables run end to end") {
  json doc;
  doc["mode"] = "norm";
  doc["group"] = {{"group", "integer_line"}};
  // piecewise-linear Young function approximating t^2/2 near the nodes
  doc["young"] = {{"family", "custom"},
                  {"table", {{0.0, 0.0}, {1.0, 0.5}, {2.0, 2.0}, {4.0, 8.0}, {8.0, 32.0}}}};
  doc["weight"] = {{"weight", "custom"},
                   {"points", {{0}, {1}}},
                   {"values", {2.0, 3.0}},
                   {"default", 1.0}};
  doc["f"] = {{"points", {{0}}}, {"amps", {1.0}}};
  const auto rep = run(ExperimentConfig::parse(doc));
  CHECK(rep.payload["weighted"]["value"].get<double>() > 0.0);
  // piecewise-linear table: Phi(x) = 0.5 + 1.5 (x - 1) hits 1 at x = 4/3,
  // so the unit-amplitude atom has Luxemburg norm 3/4
  CHECK(rep.payload["luxemburg"]["value"].get<double>() ==
        doctest::Approx(0.75).epsilon(1e-9));
  // echo re-parses and is a canonical fixed point: the custom young
  // round-trips through its sampled table exactly at the sample nodes
  CHECK(ExperimentConfig::parse(rep.config_echo).canonical() == rep.config_echo);
}

TEST_CASE("reports are byte-identical aside from wall time") {
  const auto cfg = ExperimentConfig::parse(presets().at("integers-decay"));
  const auto r1 = run(cfg);
  const auto r2 = run(cfg);
  CHECK(strip_wall_time(r1.to_json()).dump() == strip_wall_time(r2.to_json()).dump());
  // config echo round-trips
  CHECK(ExperimentConfig::parse(r1.config_echo) == cfg);
}

TEST_CASE("csv export: row counts and the series contract") {
  const auto rep = run(ExperimentConfig::parse(presets().at("integers-decay")));
  const std::string csv = render_csv(rep);
  std::istringstream is(csv);
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 31);  // header + 30 steps
  CHECK(csv.substr(0, csv.find('\n')) == "k,n_k,E_size,q0,q_plus,q_minus");
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.find(',') != std::string::npos);

  json odoc;
  odoc["mode"] = "orbit";
  odoc["group"] = {{"group", "integer_line"}};
  odoc["a"] = {1};
  odoc["N"] = 100;
  odoc["f"] = {{"points", {{0}}}, {"amps", {1.0}}};
  const auto orep = run(ExperimentConfig::parse(odoc));
  const std::string ocsv = render_csv(orep);
  std::istringstream ois(ocsv);
  rows = 0;
  while (std::getline(ois, line)) ++rows;
  CHECK(rows == 101);
  CHECK(ocsv.rfind("n,norm,distinct_count\n", 0) == 0);

  // a norm report has no series payload
  json ndoc;
  ndoc["mode"] = "norm";
  ndoc["group"] = {{"group", "integer_line"}};
  ndoc["f"] = {{"points", {{0}}}, {"amps", {1.0}}};
  const auto nrep = run(ExperimentConfig::parse(ndoc));
  CHECK_THROWS_AS(render_csv(nrep), csv_error);
}

TEST_CASE("exit codes partition the error classes") {
  CHECK(exit_code_for(parse_error("x")) == 2);
  CHECK(exit_code_for(precondition_error("x")) == 3);
  CHECK(exit_code_for(ordyn::domain_error("x")) == 3);
  CHECK(exit_code_for(divergence_error("x")) == 3);
  CHECK(exit_code_for(capacity_error("x")) == 4);
  CHECK(exit_code_for(csv_error("x")) == 5);
  CHECK(exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("presets are all runnable") {
  for (const auto& [name, doc] : presets()) {
    const auto rep = run(ExperimentConfig::parse(doc));
    CHECK(rep.payload.contains("certificate"));
    CHECK(!rep.mode.empty());
  }
}

TEST_CASE("cli: preset run writes report and csv atomically") {
  TempDir tmp;
  const auto out = (tmp.path / "report.json").string();
  const auto csv = (tmp.path / "steps.csv").string();
  const int rc = run_cli("preset integers-decay --out " + out + " --csv " + csv);
  CHECK(rc == 0);
  REQUIRE(fs::exists(out));
  REQUIRE(fs::exists(csv));
  std::ifstream in(out);
  json report;
  in >> report;
  CHECK(report["payload"]["certificate"]["verdict"] == "certified-decaying");
  CHECK(report["artifact_version"] == "0.1.0");
  CHECK(!fs::exists(out + ".tmp"));
}

TEST_CASE("cli: exit codes surface through the binary") {
  TempDir tmp;

  // parse error: malformed config file
  const auto bad = (tmp.path / "bad.json").string();
  std::ofstream(bad) << "{ not json";
  CHECK(run_cli("norm --config " + bad) == 2);

  // parse error: unknown preset
  CHECK(run_cli("preset nonexistent") == 2);

  // precondition: empty K
  const auto pre = (tmp.path / "pre.json").string();
  std::ofstream(pre) << R"({"group":{"group":"integer_line"},
    "weight":{"weight":"exp_abs","c":-1.0},
    "a":[1], "K":[], "schedule":{"k_max":5}})";
  CHECK(run_cli("certify transitive --config " + pre) == 3);

  // capacity: oversized support with a non-power conjugate in oracle mode
  const auto cap = (tmp.path / "cap.json").string();
  {
    json doc;
    doc["young"] = {{"family", "power_log"}, {"alpha", 2.0}};
    json pts = json::array(), amps = json::array();
    for (int i = 0; i < 14; ++i) {
      pts.push_back({i});
      amps.push_back(1.0);
    }
    doc["f"] = {{"points", pts}, {"amps", amps}};
    doc["oracle"] = true;
    std::ofstream(cap) << doc.dump();
  }
  CHECK(run_cli("norm --config " + cap) == 4);

  // csv misuse: norm payload has no series
  const auto nj = (tmp.path / "n.json").string();
  std::ofstream(nj) << R"({"f":{"points":[[0]],"amps":[1.0]}})";
  CHECK(run_cli("norm --config " + nj + " --csv " + (tmp.path / "x.csv").string()) == 5);

  // subcommand/mode conflict
  const auto conf = (tmp.path / "c.json").string();
  std::ofstream(conf) << R"({"mode":"orbit","f":{"points":[[0]],"amps":[1.0]},"a":[1]})";
  CHECK(run_cli("norm --config " + conf) == 2);
}

TEST_CASE("cli: repeated runs are byte-identical aside from wall time") {
  TempDir tmp;
  const auto o1 = (tmp.path / "r1.json").string();
  const auto o2 = (tmp.path / "r2.json").string();
  REQUIRE(run_cli("preset integers-decay --seed 5 --out " + o1) == 0);
  REQUIRE(run_cli("preset integers-decay --seed 5 --out " + o2) == 0);
  json j1, j2;
  std::ifstream(o1) >> j1;
  std::ifstream(o2) >> j2;
  CHECK(strip_wall_time(j1).dump() == strip_wall_time(j2).dump());
}

TEST_CASE("cli: stdout report when --out is omitted") {
  TempDir tmp;
  const auto nj = (tmp.path / "n.json").string();
  std::ofstream(nj) << R"({"f":{"points":[[0]],"amps":[1.0]}})";
  std::string out;
  const int rc = run_cli("norm --config " + nj, &out);
  CHECK(rc == 0);
  const auto j = json::parse(out);
  CHECK(j["payload"]["orlicz"]["value"].get<double>() ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

}  // TEST_SUITE
