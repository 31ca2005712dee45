// idmap: extract common/unique identifier maps from Java product variants.
//
//   idmap parse  --variant R1=src/r1 -o out
//   idmap map    --variant R1=src/r1 --variant R2=src/r2 -o out [--timing]
//   idmap evolve --variant R1=... --variant R2=... --initial R1 --current R2 -o out
//   idmap eval   --variant R1=... --variant R2=... --truth classes=truth.txt -o out

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idmap/commands.hpp"

namespace {

struct RawOptions {
  std::vector<std::string> variants;
  std::vector<std::string> kinds;
  std::vector<std::string> truth;
  std::size_t max_labels = idmap::kDefaultMaxLabels;
};

void add_common(CLI::App* cmd, idmap::RunConfig& cfg, RawOptions& raw) {
  cmd->add_option("--variant", raw.variants,
                  "Variant as NAME=PATH (source directory or .codemodel.xml); repeatable")
      ->required();
  cmd->add_option("-o,--output", cfg.output_dir, "Output directory")
      ->capture_default_str();
}

void add_render(CLI::App* cmd, idmap::RunConfig& cfg, RawOptions& raw) {
  cmd->add_option("--kinds", raw.kinds,
                  "Maps to build: packages, classes, attributes, methods, all")
      ->delimiter(',');
  cmd->add_flag("--qualified", cfg.render.show_qualified_names,
                "Show qualified identifier names");
  cmd->add_option("--max-labels", raw.max_labels,
                  "Labels shown per concept in DOT output (0 = unlimited)")
      ->capture_default_str();
}

idmap::RunConfig finish(idmap::RunConfig cfg, const RawOptions& raw) {
  for (const auto& v : raw.variants) cfg.variants.push_back(idmap::parse_variant_spec(v));
  if (!raw.kinds.empty()) {
    cfg.kinds.clear();
    for (const auto& k : raw.kinds) {
      auto kind = idmap::map_kind_from_name(k);
      if (!kind) throw idmap::UsageError("unknown map kind '" + k + "'");
      cfg.kinds.push_back(*kind);
    }
  }
  for (const auto& t : raw.truth) {
    auto eq = t.find('=');
    auto kind = eq == std::string::npos ? std::nullopt
                                        : idmap::map_kind_from_name(t.substr(0, eq));
    if (!kind) throw idmap::UsageError("--truth expects KIND=FILE, got '" + t + "'");
    cfg.truth.emplace_back(*kind, t.substr(eq + 1));
  }
  if (raw.max_labels == 0) cfg.render.max_labels_per_concept.reset();
  else cfg.render.max_labels_per_concept = raw.max_labels;
  cfg.color = isatty(STDERR_FILENO) && std::getenv("NO_COLOR") == nullptr;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extract software identifier maps from Java product variants"};
  app.require_subcommand(1);

  idmap::RunConfig cfg;
  RawOptions raw;

  auto* parse = app.add_subcommand("parse", "Extract code-model XML for each variant");
  add_common(parse, cfg, raw);

  auto* map = app.add_subcommand("map", "Build identifier maps (DOT, JSON) and report.txt");
  add_common(map, cfg, raw);
  add_render(map, cfg, raw);
  map->add_option("--initial", cfg.initial, "Initial release for the evolution summary");
  map->add_option("--current", cfg.current, "Current release for the evolution summary");
  map->add_option("--truth", raw.truth, "Ground truth as KIND=FILE; repeatable");
  map->add_flag("--timing", cfg.timing, "Print per-map wall-clock time");

  auto* evolve = app.add_subcommand("evolve", "Classify identifiers as added/removed/unchanged");
  add_common(evolve, cfg, raw);
  evolve->add_option("--kinds", raw.kinds, "Maps to classify")->delimiter(',');
  evolve->add_option("--initial", cfg.initial, "Initial release")->required();
  evolve->add_option("--current", cfg.current, "Current release")->required();

  auto* eval = app.add_subcommand("eval", "Score maps against ground-truth files");
  add_common(eval, cfg, raw);
  eval->add_option("--truth", raw.truth, "Ground truth as KIND=FILE; repeatable")->required();
  eval->add_option("--min", cfg.min_metric, "Fail when any metric is below this value")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return idmap::kExitUsage;
  }

  idmap::RunConfig run;
  try {
    run = finish(cfg, raw);
  } catch (const idmap::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return idmap::kExitUsage;
  }

  if (parse->parsed()) return idmap::cmd_parse(run, std::cout, std::cerr);
  if (map->parsed()) return idmap::cmd_map(run, std::cout, std::cerr);
  if (evolve->parsed()) return idmap::cmd_evolve(run, std::cout, std::cerr);
  return idmap::cmd_eval(run, std::cout, std::cerr);
}
