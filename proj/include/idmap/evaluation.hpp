#pragma once

// Precision / recall / F-measure of extracted maps against ground truth,
// plus descriptive corpus statistics.
//
// Ground-truth text format (UTF-8):
//
//   # comment
//   kind: classes
//   common:
//   shapes.MyLine
//   unique Release 1:
//   shapes.MyOval
//   shared A,B:          (three or more variants only)
//   shapes.Foo
//
// Identifier lines may carry a kind tag ("class shapes.MyLine"); the tag is
// required when the kind is "all".

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "idmap/code_model.hpp"
#include "idmap/error.hpp"
#include "idmap/identifier.hpp"
#include "idmap/maps.hpp"

namespace idmap {

// Empty retrieved (or relevant) sets count as perfect: nothing wrong was
// returned (or nothing was missed).

template <class T>
double precision(const std::set<T>& retrieved, const std::set<T>& relevant) {
  if (retrieved.empty()) return 1.0;
  std::size_t hits = 0;
  for (const auto& x : retrieved) hits += relevant.contains(x);
  return static_cast<double>(hits) / static_cast<double>(retrieved.size());
}

template <class T>
double recall(const std::set<T>& retrieved, const std::set<T>& relevant) {
  if (relevant.empty()) return 1.0;
  std::size_t hits = 0;
  for (const auto& x : relevant) hits += retrieved.contains(x);
  return static_cast<double>(hits) / static_cast<double>(relevant.size());
}

inline double f_measure(double p, double r) {
  return p + r > 0.0 ? 2.0 * (p * r) / (p + r) : 0.0;
}

struct GroundTruth {
  MapKind kind = MapKind::All;
  IdentifierSet relevant_common;
  std::map<std::string, IdentifierSet> relevant_unique;
  std::map<std::vector<std::string>, IdentifierSet> relevant_shared;
};

/// Truth computed by plain set algebra over the models (no FCA involved).
inline GroundTruth ground_truth_from_models(std::span<const CodeModel> models,
                                            MapKind kind) {
  GroundTruth truth;
  truth.kind = kind;
  std::map<Identifier, std::vector<std::string>> holders;
  for (const auto& m : models) {
    truth.relevant_unique[m.variant_name];
    for (const auto& id : filter_by_map_kind(m, kind))
      holders[id].push_back(m.variant_name);
  }
  for (auto& [id, names] : holders) {
    if (names.size() == models.size()) truth.relevant_common.insert(id);
    else if (names.size() == 1) truth.relevant_unique[names.front()].insert(id);
    else truth.relevant_shared[names].insert(id);
  }
  return truth;
}

namespace truth_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split_names(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = text.find(',', start);
    auto piece = trim(text.substr(start, comma == std::string_view::npos
                                             ? std::string_view::npos
                                             : comma - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

}  // namespace truth_detail

/// Throws ParseError (with the offending line) on malformed input.
inline GroundTruth parse_ground_truth(std::string_view text) {
  using truth_detail::trim;
  GroundTruth truth;
  bool have_kind = false;
  IdentifierSet* block = nullptr;
  std::map<Identifier, std::size_t> first_seen;
  std::size_t line_no = 0;

  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    auto raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                               : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line_no == 1 && raw.substr(0, 3) == "\xEF\xBB\xBF") raw.remove_prefix(3);
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& message) -> void {
      throw ParseError("ground truth: " + message, line_no, 1);
    };

    if (line.back() == ':' || line.substr(0, 5) == "kind:") {
      auto header = line.back() == ':' ? trim(line.substr(0, line.size() - 1)) : line;
      if (header.substr(0, 5) == "kind:" || header == "kind") {
        auto name = trim(header.substr(std::min<std::size_t>(5, header.size())));
        auto kind = map_kind_from_name(name);
        if (!kind) fail("unknown map kind '" + std::string(name) + "'");
        if (have_kind) fail("duplicate kind header");
        truth.kind = *kind;
        have_kind = true;
      } else if (header == "common") {
        block = &truth.relevant_common;
      } else if (header.substr(0, 7) == "unique ") {
        auto name = trim(header.substr(7));
        if (name.empty()) fail("'unique' header without a variant name");
        block = &truth.relevant_unique[std::string(name)];
      } else if (header.substr(0, 7) == "shared ") {
        auto names = truth_detail::split_names(header.substr(7));
        if (names.size() < 2) fail("'shared' header needs at least two variants");
        block = &truth.relevant_shared[names];
      } else {
        fail("unknown section header '" + std::string(header) + "'");
      }
      continue;
    }

    if (!have_kind) fail("expected 'kind: <packages|classes|attributes|methods|all>' first");
    if (!block) fail("identifier outside of a section");

    std::string_view tag, name = line;
    if (auto space = line.find_first_of(" \t"); space != std::string_view::npos) {
      tag = line.substr(0, space);
      name = trim(line.substr(space));
    }
    std::optional<IdentifierKind> kind;
    if (!tag.empty()) {
      kind = kind_from_tag(tag);
      if (!kind) fail("unknown identifier kind '" + std::string(tag) + "'");
      if (!map_kind_admits(truth.kind, *kind))
        fail("a " + std::string(tag) + " identifier in a " +
             std::string(map_kind_name(truth.kind)) + " truth file");
    } else if (truth.kind == MapKind::All) {
      fail("identifier needs a kind tag in an 'all' truth file");
    } else {
      kind = static_cast<IdentifierKind>(static_cast<int>(truth.kind));
    }
    try {
      Identifier id(*kind, std::string(name));
      if (auto [it, fresh] = first_seen.emplace(id, line_no); !fresh) {
        if (!block->contains(id))
          fail("identifier already listed in another block on line " +
               std::to_string(it->second));
        continue;
      }
      block->insert(std::move(id));
    } catch (const ConsistencyError& e) {
      fail(e.what());
    }
  }
  if (!have_kind)
    throw ParseError("ground truth: missing 'kind:' header", std::max<std::size_t>(line_no, 1), 1);
  return truth;
}

inline std::string write_ground_truth(const GroundTruth& truth) {
  std::ostringstream out;
  out << "kind: " << map_kind_name(truth.kind) << "\n";
  auto write_ids = [&](const IdentifierSet& ids) {
    for (const auto& id : ids) {
      if (truth.kind == MapKind::All) out << kind_tag(id.kind()) << ' ';
      out << id.qualified_name() << "\n";
    }
  };
  out << "common:\n";
  write_ids(truth.relevant_common);
  for (const auto& [variant, ids] : truth.relevant_unique) {
    out << "unique " << variant << ":\n";
    write_ids(ids);
  }
  for (const auto& [variants, ids] : truth.relevant_shared) {
    out << "shared ";
    for (std::size_t i = 0; i < variants.size(); ++i)
      out << (i ? "," : "") << variants[i];
    out << ":\n";
    write_ids(ids);
  }
  return out.str();
}

struct BlockMetrics {
  std::string block;  // "common", "unique <v>", "shared <a,b>"
  std::size_t retrieved = 0;
  std::size_t relevant = 0;
  std::size_t hits = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f_measure = 1.0;
};

struct MetricsReport {
  MapKind kind = MapKind::All;
  double precision = 1.0;
  double recall = 1.0;
  double f_measure = 1.0;
  std::vector<BlockMetrics> blocks;
};

/// Per-block metrics plus an aggregate over (block, identifier) pairs, so an
/// identifier reported in the wrong block counts as both a false positive
/// and a miss.
inline MetricsReport evaluate_map(const IdentifiersMap& map, const GroundTruth& truth) {
  if (map.kind != truth.kind)
    throw UsageError("cannot evaluate a " + std::string(map_kind_name(map.kind)) +
                     " map against " + std::string(map_kind_name(truth.kind)) +
                     " ground truth");
  using Labeled = std::pair<std::string, Identifier>;
  std::set<Labeled> retrieved_all, relevant_all;
  std::map<std::string, std::pair<const IdentifierSet*, const IdentifierSet*>> blocks;
  static const IdentifierSet kEmpty;

  auto shared_label = [](const std::vector<std::string>& names) {
    std::string label = "shared ";
    for (std::size_t i = 0; i < names.size(); ++i) label += (i ? "," : "") + names[i];
    return label;
  };
  blocks["common"] = {&map.common, &truth.relevant_common};
  for (const auto& [v, ids] : map.unique) blocks["unique " + v].first = &ids;
  for (const auto& [v, ids] : truth.relevant_unique) blocks["unique " + v].second = &ids;
  for (const auto& [vs, ids] : map.shared) blocks[shared_label(vs)].first = &ids;
  for (const auto& [vs, ids] : truth.relevant_shared) blocks[shared_label(vs)].second = &ids;

  MetricsReport report;
  report.kind = map.kind;
  for (const auto& [label, sets] : blocks) {
    const auto& got = sets.first ? *sets.first : kEmpty;
    const auto& want = sets.second ? *sets.second : kEmpty;
    BlockMetrics b;
    b.block = label;
    b.retrieved = got.size();
    b.relevant = want.size();
    for (const auto& id : got) b.hits += want.contains(id);
    b.precision = precision(got, want);
    b.recall = recall(got, want);
    b.f_measure = f_measure(b.precision, b.recall);
    report.blocks.push_back(std::move(b));
    for (const auto& id : got) retrieved_all.emplace(label, id);
    for (const auto& id : want) relevant_all.emplace(label, id);
  }
  report.precision = precision(retrieved_all, relevant_all);
  report.recall = recall(retrieved_all, relevant_all);
  report.f_measure = f_measure(report.precision, report.recall);
  return report;
}

struct VariantStats {
  std::string name;
  std::size_t loc = 0;
  std::size_t nop = 0;
  std::size_t noc = 0;
};

struct MapCounts {
  MapKind kind = MapKind::All;
  std::size_t common = 0;
  std::map<std::string, std::size_t> unique;
  std::size_t shared = 0;
  std::size_t total = 0;
};

struct CorpusStats {
  std::vector<VariantStats> variants;
  std::vector<MapCounts> maps;
};

inline CorpusStats corpus_stats(std::span<const CodeModel> models,
                                std::span<const IdentifiersMap> maps) {
  CorpusStats stats;
  for (const auto& m : models)
    stats.variants.push_back({m.variant_name, m.source_stats.loc,
                              m.source_stats.nop, m.source_stats.noc});
  for (const auto& map : maps) {
    MapCounts c;
    c.kind = map.kind;
    c.common = map.common.size();
    for (const auto& [v, ids] : map.unique) c.unique[v] = ids.size();
    for (const auto& [vs, ids] : map.shared) c.shared += ids.size();
    c.total = map.total();
    stats.maps.push_back(std::move(c));
  }
  return stats;
}

}  // namespace idmap
