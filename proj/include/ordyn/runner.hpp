#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ordyn/serial.hpp"

namespace ordyn {

/// CSV export was asked of a report without a series payload.
struct csv_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Declarative single-experiment document.  Parsing materializes defaults,
/// so canonical() re-parses to an equal config.
struct ExperimentConfig {
  std::string mode;  // norm | conjugate | validate-weight | certify-transitive
                     // | certify-mixing | certify-chaotic | orbit | periodic
                     // | probe-blowup
  GroupSpace G = GroupSpace::integer_line();
  Weight w = Weight::constant(1.0);
  YoungFunction phi = YoungFunction::power(2.0);
  std::optional<GroupPoint> a;
  std::optional<PointSet> K;
  std::vector<std::int64_t> schedule;  // resolved n_k list
  json schedule_raw;                   // as written (echoed back)
  EkStrategy strategy;
  std::int64_t L_max = 8;
  double tol = 1e-9;
  int workers = 1;
  std::uint64_t seed = 0;

  std::optional<SimpleFunction> f, g;
  double eps = 0.01;
  std::int64_t N = 30;
  std::int64_t n_k = 5;
  std::optional<PointSet> E;
  std::vector<double> y_values;
  bool with_oracle = false;

  std::optional<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> sample_box;
  std::int64_t sample_pairs = 200;
  std::vector<GroupPoint> generators;

  static ExperimentConfig parse(const json& j);
  json canonical() const;

  friend bool operator==(const ExperimentConfig& x, const ExperimentConfig& y) {
    return x.canonical() == y.canonical();
  }
};

struct RunReport {
  static constexpr const char* artifact_version = "0.1.0";
  std::string mode;
  json config_echo;
  json payload;
  double wall_ms = 0.0;

  json to_json() const;  // deterministic except the wall_time_ms field
};

/// Dispatches the config to the named module operation.
RunReport run(const ExperimentConfig& cfg);

/// One row per certificate step or orbit entry; stable column order, UTF-8,
/// LF endings, '.' decimal separator.  Throws csv_error for other payloads.
std::string render_csv(const RunReport& report);
void emit_csv(const RunReport& report, const std::string& path);

/// Atomic write-then-rename with binary (LF) semantics.
void write_text_atomic(const std::string& path, const std::string& content);

/// Built-in experiment documents, keyed by preset name.
const std::map<std::string, json>& presets();

/// Maps the error taxonomy onto the CLI exit codes:
/// parse 2, precondition/domain/divergence 3, capacity 4, csv misuse 5.
int exit_code_for(const std::exception& e);

}  // namespace ordyn
