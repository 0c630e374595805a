#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ordyn/runner.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string csv_path;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonOpts* opt, bool config_required) {
  auto* c = cmd->add_option("--config", opt->config_path, "experiment config (JSON)");
  if (config_required) c->required();
  cmd->add_option("--out", opt->out_path, "write the run report (JSON) here");
  cmd->add_option("--csv", opt->csv_path, "write the step/orbit series (CSV) here");
  cmd->add_option("--workers", opt->workers, "schedule-step worker threads");
  cmd->add_option("--seed", opt->seed, "sampling seed");
  cmd->add_option("--tol", opt->tol, "certificate tolerance override");
}

ordyn::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ordyn::parse_error("cannot open config file " + path);
  ordyn::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ordyn::parse_error(std::string("config parse failed: ") + e.what());
  }
  return j;
}

int execute(ordyn::json doc, const CommonOpts& opt, const std::string& forced_mode) {
  if (!forced_mode.empty()) {
    if (doc.contains("mode") && doc["mode"] != forced_mode)
      throw ordyn::parse_error("config mode '" + doc["mode"].get<std::string>() +
                               "' conflicts with the subcommand '" + forced_mode + "'");
    doc["mode"] = forced_mode;
  }
  if (opt.workers) doc["workers"] = *opt.workers;
  if (opt.seed) doc["seed"] = *opt.seed;
  if (opt.tol) doc["tol"] = *opt.tol;

  const auto cfg = ordyn::ExperimentConfig::parse(doc);
  const auto report = ordyn::run(cfg);

  const std::string rendered = report.to_json().dump(2) + "\n";
  if (!opt.out_path.empty())
    ordyn::write_text_atomic(opt.out_path, rendered);
  else
    std::cout << rendered;
  if (!opt.csv_path.empty()) ordyn::emit_csv(report, opt.csv_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordyn: translation dynamics on weighted Orlicz spaces"};
  app.require_subcommand(1);

  CommonOpts opt;

  struct Sub {
    const char* name;
    const char* mode;
    const char* help;
  };
  const Sub plain_subs[] = {
      {"norm", "norm", "Luxemburg / Orlicz / weighted norms of a function"},
      {"conjugate", "conjugate", "tabulate the numerical convex conjugate"},
      {"validate-weight", "validate-weight", "sample-check weight submultiplicativity"},
      {"orbit", "orbit", "orbit trace with weighted norms"},
      {"periodic", "periodic", "truncated periodic-point construction"},
      {"probe-blowup", "probe-blowup", "search for a blow-up/collapse witness"},
  };
  std::map<const CLI::App*, std::string> forced;
  for (const auto& s : plain_subs) {
    auto* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, &opt, /*config_required=*/true);
    forced[cmd] = s.mode;
  }

  auto* certify = app.add_subcommand("certify", "decay certificates");
  certify->require_subcommand(1);
  for (const char* kind : {"transitive", "mixing", "chaotic"}) {
    auto* cmd = certify->add_subcommand(kind);
    add_common(cmd, &opt, /*config_required=*/true);
    forced[cmd] = std::string("certify-") + kind;
  }

  std::string preset_name;
  auto* preset = app.add_subcommand("preset", "run a built-in experiment");
  preset->add_option("name", preset_name, "preset name (or 'list')")->required();
  add_common(preset, &opt, /*config_required=*/false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (preset->parsed()) {
      if (preset_name == "list") {
        for (const auto& [name, doc] : ordyn::presets())
          std::cout << name << "  (" << doc["mode"].get<std::string>() << ")\n";
        return 0;
      }
      const auto& table = ordyn::presets();
      auto it = table.find(preset_name);
      if (it == table.end())
        throw ordyn::parse_error("unknown preset '" + preset_name + "'");
      ordyn::json doc = it->second;
      if (!opt.config_path.empty()) {
        // config file overlays the preset document
        const ordyn::json overlay = load_config(opt.config_path);
        if (!overlay.is_object())
          throw ordyn::parse_error("preset overlay config must be a JSON object");
        for (auto itv = overlay.begin(); itv != overlay.end(); ++itv)
          doc[itv.key()] = itv.value();
      }
      return execute(std::move(doc), opt, "");
    }
    for (const auto& [cmd, mode] : forced)
      if (cmd->parsed()) return execute(load_config(opt.config_path), opt, mode);
    throw ordyn::parse_error("no subcommand matched");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ordyn::exit_code_for(e);
  }
}
