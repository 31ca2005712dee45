#pragma once

// Subcommand implementations behind the `idmap` executable. Each returns a
// process exit code: 0 success, 1 runtime or input error, 2 usage error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "idmap/code_model.hpp"
#include "idmap/error.hpp"
#include "idmap/evaluation.hpp"
#include "idmap/maps.hpp"
#include "idmap/parser.hpp"
#include "idmap/report.hpp"
#include "idmap/xml.hpp"

namespace idmap {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// NAME=PATH; PATH is a source directory or a `.codemodel.xml` file.
struct VariantSpec {
  std::string name;
  std::filesystem::path path;
};

inline VariantSpec parse_variant_spec(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
    throw UsageError("variant must be given as NAME=PATH, got '" + text + "'");
  VariantSpec spec{text.substr(0, eq), text.substr(eq + 1)};
  if (spec.name.find_first_of("/\\") != std::string::npos)
    throw UsageError("variant name '" + spec.name + "' may not contain path separators");
  return spec;
}

struct RunConfig {
  std::vector<VariantSpec> variants;
  std::filesystem::path output_dir = ".";
  std::vector<MapKind> kinds{kAllMapKinds.begin(), kAllMapKinds.end()};
  RenderOptions render;
  std::optional<std::string> initial;
  std::optional<std::string> current;
  std::vector<std::pair<MapKind, std::filesystem::path>> truth;
  double min_metric = 0.0;
  bool timing = false;
  bool color = false;  // colorize diagnostics
};

namespace command_detail {

inline void check_variants(const RunConfig& cfg, std::size_t minimum) {
  if (cfg.variants.size() < minimum)
    throw UsageError("at least " + std::to_string(minimum) + " --variant " +
                     (minimum == 1 ? "option is" : "options are") + " required, got " +
                     std::to_string(cfg.variants.size()));
  std::set<std::string> names;
  for (const auto& v : cfg.variants)
    if (!names.insert(v.name).second)
      throw UsageError("duplicate variant name '" + v.name + "'");
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

inline void prepare_output(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.output_dir))
    throw Error("cannot create output directory '" + cfg.output_dir.string() + "'");
}

inline void report(std::ostream& err, const RunConfig& cfg, const ParseDiagnostic& d) {
  const bool is_error = d.severity == Severity::Error;
  if (cfg.color) err << (is_error ? "\x1b[31m" : "\x1b[33m");
  err << format_diagnostic(d);
  if (cfg.color) err << "\x1b[0m";
  err << "\n";
}

inline void warn(std::ostream& err, const RunConfig& cfg, const std::string& message) {
  report(err, cfg, {Severity::Warning, message, {}, 0, 0});
}

inline CodeModel load_model(const VariantSpec& spec, const RunConfig& cfg,
                            std::ostream& err) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec.path, ec)) {
    try {
      CodeModel model = read_xml(read_file(spec.path));
      model.variant_name = spec.name;
      return model;
    } catch (const Error& e) {
      throw Error(spec.path.string() + ": " + e.what());
    }
  }
  auto extraction = extract_variant(spec.path, spec.name);
  for (const auto& d : extraction.diagnostics) report(err, cfg, d);
  if (extraction.model.identifiers.empty())
    warn(err, cfg, "variant '" + spec.name + "': no identifiers found under '" +
                       spec.path.string() + "'");
  return std::move(extraction.model);
}

inline std::vector<CodeModel> load_models(const RunConfig& cfg, std::ostream& err) {
  std::vector<CodeModel> models;
  for (const auto& spec : cfg.variants) models.push_back(load_model(spec, cfg, err));
  return models;
}

inline std::pair<std::string, std::string> evolution_order(const RunConfig& cfg,
                                                           bool required) {
  if (!cfg.initial && !cfg.current && !required && cfg.variants.size() == 2)
    return {cfg.variants[0].name, cfg.variants[1].name};
  if (!cfg.initial || !cfg.current)
    throw UsageError("both --initial and --current must name a variant");
  auto known = [&](const std::string& n) {
    for (const auto& v : cfg.variants)
      if (v.name == n) return true;
    return false;
  };
  if (!known(*cfg.initial) || !known(*cfg.current))
    throw UsageError("--initial/--current must name variants given with --variant");
  if (*cfg.initial == *cfg.current)
    throw UsageError("--initial and --current must differ");
  return {*cfg.initial, *cfg.current};
}

inline const CodeModel& by_name(const std::vector<CodeModel>& models, const std::string& name) {
  for (const auto& m : models)
    if (m.variant_name == name) return m;
  throw UsageError("unknown variant '" + name + "'");
}

inline std::vector<EvolutionReport> evolve(const std::vector<CodeModel>& models,
                                           const std::string& initial,
                                           const std::string& current,
                                           const std::vector<MapKind>& kinds) {
  std::vector<EvolutionReport> out;
  for (auto kind : kinds)
    out.push_back(classify_evolution(by_name(models, initial), by_name(models, current), kind));
  return out;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace command_detail

/// Writes `<name>.codemodel.xml` for every variant.
inline int cmd_parse(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace command_detail;
  return guarded(err, [&] {
    check_variants(cfg, 1);
    prepare_output(cfg);
    for (const auto& spec : cfg.variants) {
      auto model = load_model(spec, cfg, err);
      auto path = cfg.output_dir / (spec.name + ".codemodel.xml");
      write_file(path, write_xml(model));
      out << spec.name << ": " << model.source_stats.nop << " packages, "
          << model.source_stats.noc << " classes, " << model.source_stats.loc
          << " LOC -> " << path.generic_string() << "\n";
    }
    return int{kExitOk};
  });
}

/// Writes `<kind>.dot`, `<kind>.json` per requested map and `report.txt`.
inline int cmd_map(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace command_detail;
  return guarded(err, [&] {
    check_variants(cfg, 2);
    cfg.render.check();
    std::optional<std::pair<std::string, std::string>> order;
    if (cfg.variants.size() == 2 || cfg.initial || cfg.current)
      order = evolution_order(cfg, false);
    prepare_output(cfg);
    auto models = load_models(cfg, err);

    std::vector<IdentifiersMap> maps;
    for (auto kind : cfg.kinds) {
      const auto start = std::chrono::steady_clock::now();
      auto analysis = analyze(models, kind);
      const auto elapsed = std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start);
      const std::string stem(map_kind_name(kind));
      write_file(cfg.output_dir / (stem + ".dot"), to_dot(analysis.poset, cfg.render));
      write_file(cfg.output_dir / (stem + ".json"), to_json(analysis.map));
      if (cfg.timing)
        out << "timing " << stem << " " << std::fixed << std::setprecision(3)
            << elapsed.count() << " ms\n";
      maps.push_back(std::move(analysis.map));
    }

    std::vector<EvolutionReport> evolution;
    if (order) evolution = evolve(models, order->first, order->second, cfg.kinds);
    std::vector<MetricsReport> metrics;
    for (const auto& [kind, path] : cfg.truth) {
      auto truth = parse_ground_truth(read_file(path));
      for (const auto& map : maps)
        if (map.kind == kind) metrics.push_back(evaluate_map(map, truth));
    }
    ReportInputs inputs{maps, evolution, corpus_stats(models, maps), metrics};
    write_file(cfg.output_dir / "report.txt", to_text_report(inputs, cfg.render));
    out << "wrote " << maps.size() << " maps to " << cfg.output_dir.generic_string() << "\n";
    return int{kExitOk};
  });
}

/// Writes `evolution.json` and `evolution.txt` for --initial -> --current.
inline int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace command_detail;
  return guarded(err, [&] {
    check_variants(cfg, 2);
    if (cfg.variants.size() != 2)
      throw UsageError("evolve takes exactly 2 variants");
    auto [initial, current] = evolution_order(cfg, true);
    prepare_output(cfg);
    auto models = load_models(cfg, err);
    auto reports = evolve(models, initial, current, cfg.kinds);
    write_file(cfg.output_dir / "evolution.json", to_json(std::span<const EvolutionReport>(reports)));
    ReportInputs inputs{{}, reports, corpus_stats(models, {}), {}};
    write_file(cfg.output_dir / "evolution.txt", to_text_report(inputs, cfg.render));
    for (const auto& r : reports)
      out << map_kind_name(r.kind) << ": added " << r.added.size() << ", removed "
          << r.removed.size() << ", unchanged " << r.unchanged.size() << "\n";
    return int{kExitOk};
  });
}

/// Evaluates maps against ground-truth files and writes `metrics.json`.
/// Fails (exit 1) when any aggregate metric is below `min_metric`.
inline int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace command_detail;
  return guarded(err, [&] {
    check_variants(cfg, 2);
    if (cfg.truth.empty()) throw UsageError("at least one --truth KIND=FILE is required");
    std::vector<GroundTruth> truths;
    for (const auto& [kind, path] : cfg.truth) {
      GroundTruth truth;
      try {
        truth = parse_ground_truth(read_file(path));
      } catch (const ParseError& e) {
        throw Error(path.generic_string() + ":" + std::to_string(e.line()) + ": " + e.what());
      }
      if (truth.kind != kind)
        throw Error(path.generic_string() + ": declares kind '" +
                    std::string(map_kind_name(truth.kind)) + "' but was given for '" +
                    std::string(map_kind_name(kind)) + "'");
      truths.push_back(std::move(truth));
    }
    prepare_output(cfg);
    auto models = load_models(cfg, err);
    std::vector<MetricsReport> reports;
    for (const auto& truth : truths)
      reports.push_back(evaluate_map(analyze(models, truth.kind).map, truth));
    write_file(cfg.output_dir / "metrics.json", to_json(std::span<const MetricsReport>(reports)));

    bool below = false;
    for (const auto& r : reports) {
      out << map_kind_name(r.kind) << ": precision " << std::fixed << std::setprecision(4)
          << r.precision << ", recall " << r.recall << ", f-measure " << r.f_measure << "\n";
      if (r.precision < cfg.min_metric || r.recall < cfg.min_metric ||
          r.f_measure < cfg.min_metric)
        below = true;
    }
    if (below) {
      err << "error: a metric is below the --min threshold " << cfg.min_metric << "\n";
      return int{kExitFailure};
    }
    return int{kExitOk};
  });
}

}  // namespace idmap
