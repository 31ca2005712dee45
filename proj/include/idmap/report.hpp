#pragma once

// Renderers: AOC-posets as DOT, maps/evolution/metrics as JSON (sorted keys),
// and a consolidated plain-text report.

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "idmap/error.hpp"
#include "idmap/evaluation.hpp"
#include "idmap/fca.hpp"
#include "idmap/identifier.hpp"
#include "idmap/maps.hpp"

namespace idmap {

inline constexpr std::size_t kDefaultMaxLabels = 20;

struct RenderOptions {
  bool show_qualified_names = false;
  std::optional<std::size_t> max_labels_per_concept = kDefaultMaxLabels;  // nullopt: unlimited
  std::optional<MapKind> kind_filter;  // text report: only this map

  void check() const {
    if (max_labels_per_concept && *max_labels_per_concept == 0)
      throw UsageError("max labels per concept must be at least 1");
  }
};

/// Labels for one block of identifiers: simple names unless two of them
/// collide, in which case the colliding entries fall back to qualified (and,
/// across kinds, tagged) names. Sorted by label.
inline std::vector<std::string> block_labels(const IdentifierSet& ids,
                                             bool qualified = false) {
  std::vector<std::string> first;
  std::map<std::string, int> uses;
  for (const auto& id : ids) {
    first.push_back(qualified ? id.qualified_name() : id.display_name());
    ++uses[first.back()];
  }
  std::vector<std::string> labels;
  std::map<std::string, int> second_uses;
  std::size_t i = 0;
  for (const auto& id : ids) {
    labels.push_back(uses[first[i]] > 1 ? id.qualified_name() : first[i]);
    ++second_uses[labels.back()];
    ++i;
  }
  i = 0;
  for (const auto& id : ids) {
    if (second_uses[labels[i]] > 1) labels[i] = tagged_name(id);
    ++i;
  }
  std::sort(labels.begin(), labels.end());
  return labels;
}

namespace report_detail {

inline std::string dot_record_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '{' || c == '}' || c == '|' || c == '<' || c == '>' || c == '"' ||
        c == '\\')
      out += '\\';
    out += c;
  }
  return out;
}

inline std::string dot_compartment(const std::vector<std::string>& labels,
                                   const std::optional<std::size_t>& limit) {
  std::string out;
  const std::size_t shown =
      limit ? std::min(*limit, labels.size()) : labels.size();
  for (std::size_t i = 0; i < shown; ++i) out += dot_record_escape(labels[i]) + "\\l";
  if (shown < labels.size())
    out += "... (+" + std::to_string(labels.size() - shown) + " more)\\l";
  return out;
}

inline std::string json_name(const Identifier& id, MapKind kind) {
  return kind == MapKind::All ? tagged_name(id) : id.qualified_name();
}

inline nlohmann::json sorted_names(const IdentifierSet& ids, MapKind kind) {
  std::vector<std::string> names;
  for (const auto& id : ids) names.push_back(json_name(id, kind));
  std::sort(names.begin(), names.end());
  return names;
}

inline Identifier identifier_from_json(const std::string& text, MapKind kind) {
  if (kind == MapKind::All) return parse_tagged_name(text);
  return {static_cast<IdentifierKind>(static_cast<int>(kind)), text};
}

}  // namespace report_detail

/// One record node per concept (name | reduced intent | reduced extent) and
/// one edge per covering pair, pointing from child to parent.
inline std::string to_dot(const AOCPoset& poset, const RenderOptions& opts = {}) {
  using namespace report_detail;
  opts.check();
  std::ostringstream out;
  out << "digraph \"" << map_kind_name(poset.kind) << "\" {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=record, fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < poset.concepts.size(); ++i) {
    const auto& c = poset.concepts[i];
    auto intent = block_labels(poset.identifiers(c.reduced_intent),
                               opts.show_qualified_names);
    auto extent = poset.names(c.reduced_extent);
    out << "  c" << i << " [label=\"{Concept_" << i << "|"
        << dot_compartment(intent, opts.max_labels_per_concept) << "|"
        << dot_compartment(extent, opts.max_labels_per_concept) << "}\"];\n";
  }
  for (const auto& [child, parent] : poset.hasse_edges)
    out << "  c" << child << " -> c" << parent << ";\n";
  out << "}\n";
  return out.str();
}

inline nlohmann::json map_to_json_value(const IdentifiersMap& map) {
  using namespace report_detail;
  nlohmann::json j;
  j["kind"] = map_kind_name(map.kind);
  j["variants"] = map.variant_names;
  j["common"] = sorted_names(map.common, map.kind);
  j["unique"] = nlohmann::json::object();
  nlohmann::json counts;
  counts["common"] = map.common.size();
  counts["unique"] = nlohmann::json::object();
  for (const auto& [v, ids] : map.unique) {
    j["unique"][v] = sorted_names(ids, map.kind);
    counts["unique"][v] = ids.size();
  }
  if (map.variant_names.size() > 2) {
    nlohmann::json shared = nlohmann::json::array();
    std::size_t shared_count = 0;
    for (const auto& [vs, ids] : map.shared) {
      shared.push_back({{"variants", vs}, {"identifiers", sorted_names(ids, map.kind)}});
      shared_count += ids.size();
    }
    j["shared"] = std::move(shared);
    counts["shared"] = shared_count;
  }
  counts["total"] = map.total();
  j["counts"] = std::move(counts);
  return j;
}

inline std::string to_json(const IdentifiersMap& map) {
  return map_to_json_value(map).dump(2) + "\n";
}

/// Inverse of to_json. Throws Error on malformed documents.
inline IdentifiersMap map_from_json(const std::string& text) {
  using namespace report_detail;
  try {
    auto j = nlohmann::json::parse(text);
    IdentifiersMap map;
    auto kind = map_kind_from_name(j.at("kind").get<std::string>());
    if (!kind) throw Error("unknown map kind in JSON document");
    map.kind = *kind;
    map.variant_names = j.at("variants").get<std::vector<std::string>>();
    for (const auto& name : j.at("common"))
      map.common.insert(identifier_from_json(name.get<std::string>(), map.kind));
    for (const auto& [v, names] : j.at("unique").items()) {
      auto& block = map.unique[v];
      for (const auto& name : names)
        block.insert(identifier_from_json(name.get<std::string>(), map.kind));
    }
    if (j.contains("shared")) {
      for (const auto& entry : j.at("shared")) {
        auto& block = map.shared[entry.at("variants").get<std::vector<std::string>>()];
        for (const auto& name : entry.at("identifiers"))
          block.insert(identifier_from_json(name.get<std::string>(), map.kind));
      }
    }
    return map;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed map JSON: ") + e.what());
  }
}

inline std::string to_json(std::span<const EvolutionReport> reports) {
  using namespace report_detail;
  nlohmann::json j;
  j["maps"] = nlohmann::json::object();
  for (const auto& r : reports) {
    j["initial"] = r.initial_variant;
    j["current"] = r.current_variant;
    j["maps"][std::string(map_kind_name(r.kind))] = {
        {"added", sorted_names(r.added, r.kind)},
        {"removed", sorted_names(r.removed, r.kind)},
        {"unchanged", sorted_names(r.unchanged, r.kind)},
        {"counts",
         {{"added", r.added.size()},
          {"removed", r.removed.size()},
          {"unchanged", r.unchanged.size()}}}};
  }
  return j.dump(2) + "\n";
}

inline std::string to_json(std::span<const MetricsReport> reports) {
  nlohmann::json j;
  j["maps"] = nlohmann::json::object();
  for (const auto& r : reports) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : r.blocks)
      blocks.push_back({{"block", b.block},
                        {"retrieved", b.retrieved},
                        {"relevant", b.relevant},
                        {"hits", b.hits},
                        {"precision", b.precision},
                        {"recall", b.recall},
                        {"f_measure", b.f_measure}});
    j["maps"][std::string(map_kind_name(r.kind))] = {{"precision", r.precision},
                                                     {"recall", r.recall},
                                                     {"f_measure", r.f_measure},
                                                     {"blocks", std::move(blocks)}};
  }
  return j.dump(2) + "\n";
}

struct ReportInputs {
  std::span<const IdentifiersMap> maps;
  std::span<const EvolutionReport> evolution;
  CorpusStats stats;
  std::span<const MetricsReport> metrics;
};

namespace report_detail {

inline void heading(std::ostringstream& out, const std::string& title, char rule) {
  out << title << "\n" << std::string(title.size(), rule) << "\n";
}

inline void block(std::ostringstream& out, const std::string& title,
                  const IdentifierSet& ids, bool qualified) {
  out << title << " (" << ids.size() << ")";
  if (ids.empty()) {
    out << ": none\n";
    return;
  }
  out << ":\n";
  for (const auto& label : block_labels(ids, qualified)) out << "  " << label << "\n";
}

inline std::string fixed(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

inline void table(std::ostringstream& out,
                  const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (widths.size() <= c) widths.push_back(0);
      widths[c] = std::max(widths[c], row[c].size());
    }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      if (c + 1 < row.size()) cell += std::string(widths[c] - cell.size() + 2, ' ');
      line += cell;
    }
    out << line << "\n";
  }
}

}  // namespace report_detail

inline std::string to_text_report(const ReportInputs& in, const RenderOptions& opts = {}) {
  using namespace report_detail;
  std::ostringstream out;
  std::vector<std::string> variants;
  for (const auto& v : in.stats.variants) variants.push_back(v.name);
  if (variants.empty() && !in.maps.empty()) variants = in.maps.front().variant_names;

  heading(out, "Software identifiers map", '=');
  out << "Variants:";
  for (std::size_t i = 0; i < variants.size(); ++i)
    out << (i ? ", " : " ") << variants[i];
  out << "\nLOC counts non-blank source lines, comments included.\n\n";

  heading(out, "Source statistics", '-');
  std::vector<std::vector<std::string>> rows{{"variant", "LOC", "NoP", "NoC"}};
  for (const auto& v : in.stats.variants)
    rows.push_back({v.name, std::to_string(v.loc), std::to_string(v.nop),
                    std::to_string(v.noc)});
  table(out, rows);
  out << "\n";

  auto wanted = [&](MapKind k) { return !opts.kind_filter || *opts.kind_filter == k; };

  for (const auto& map : in.maps) {
    if (!wanted(map.kind)) continue;
    heading(out, "Map: " + std::string(map_kind_name(map.kind)), '-');
    block(out, "common", map.common, opts.show_qualified_names);
    for (const auto& v : map.variant_names)
      block(out, "unique " + v, map.unique.count(v) ? map.unique.at(v) : IdentifierSet{},
            opts.show_qualified_names);
    for (const auto& [vs, ids] : map.shared) {
      std::string title = "shared";
      for (std::size_t i = 0; i < vs.size(); ++i) title += (i ? "," : " ") + vs[i];
      block(out, title, ids, opts.show_qualified_names);
    }
    out << "\n";
  }

  if (!in.evolution.empty()) {
    const auto& first = in.evolution.front();
    heading(out, "Evolution: " + first.initial_variant + " -> " + first.current_variant, '-');
    bool any_change = false;
    for (const auto& r : in.evolution) {
      if (!wanted(r.kind)) continue;
      if (r.no_changes()) {
        out << map_kind_name(r.kind) << ": unchanged (" << r.unchanged.size()
            << " identifiers)\n";
        continue;
      }
      any_change = true;
      out << map_kind_name(r.kind) << ": added: " << r.added.size()
          << ", removed: " << r.removed.size() << ", unchanged: " << r.unchanged.size()
          << "\n";
      for (const auto& label : block_labels(r.added, opts.show_qualified_names))
        out << "  + " << label << "\n";
      for (const auto& label : block_labels(r.removed, opts.show_qualified_names))
        out << "  - " << label << "\n";
    }
    if (!any_change) out << "no changes detected\n";
    out << "\n";
  }

  if (!in.stats.maps.empty()) {
    heading(out, "Identifier counts", '-');
    std::vector<std::string> header{"map", "common"};
    for (const auto& v : variants) header.push_back("unique " + v);
    const bool has_shared = variants.size() > 2;
    if (has_shared) header.push_back("shared");
    header.push_back("total");
    std::vector<std::vector<std::string>> count_rows{header};
    for (const auto& c : in.stats.maps) {
      if (!wanted(c.kind)) continue;
      std::vector<std::string> row{std::string(map_kind_name(c.kind)),
                                   std::to_string(c.common)};
      for (const auto& v : variants)
        row.push_back(std::to_string(c.unique.count(v) ? c.unique.at(v) : 0));
      if (has_shared) row.push_back(std::to_string(c.shared));
      row.push_back(std::to_string(c.total));
      count_rows.push_back(std::move(row));
    }
    table(out, count_rows);
    out << "\n";
  }

  if (!in.metrics.empty()) {
    heading(out, "Evaluation", '-');
    std::vector<std::vector<std::string>> metric_rows{
        {"map", "precision", "recall", "f-measure"}};
    for (const auto& m : in.metrics) {
      if (!wanted(m.kind)) continue;
      metric_rows.push_back({std::string(map_kind_name(m.kind)), fixed(m.precision),
                             fixed(m.recall), fixed(m.f_measure)});
    }
    table(out, metric_rows);
    out << "\n";
  }
  return out.str();
}

}  // namespace idmap
