#pragma once

#include <array>
#include <future>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "idmap/code_model.hpp"
#include "idmap/error.hpp"
#include "idmap/fca.hpp"
#include "idmap/identifier.hpp"

namespace idmap {

/// Common and unique identifiers of a set of variants. `shared` is only
/// populated with three or more variants: identifiers held by a proper
/// subset of at least two variants, keyed by that subset (in variant order).
struct IdentifiersMap {
  MapKind kind = MapKind::All;
  std::vector<std::string> variant_names;
  IdentifierSet common;
  std::map<std::string, IdentifierSet> unique;
  std::map<std::vector<std::string>, IdentifierSet> shared;

  std::size_t total() const {
    std::size_t n = common.size();
    for (const auto& [v, ids] : unique) n += ids.size();
    for (const auto& [vs, ids] : shared) n += ids.size();
    return n;
  }

  friend bool operator==(const IdentifiersMap&, const IdentifiersMap&) = default;
};

/// Reads the map off an AOC-poset: the top concept's reduced intent is the
/// common block, single-variant concepts give the unique blocks.
inline IdentifiersMap extract_map(const AOCPoset& poset, MapKind kind,
                                  const std::vector<std::string>& variant_names) {
  if (poset.kind != kind)
    throw UsageError("poset was built for the " +
                     std::string(map_kind_name(poset.kind)) +
                     " map, not the " + std::string(map_kind_name(kind)) + " map");
  if (poset.objects != variant_names)
    throw UsageError("poset objects do not match the requested variants");

  IdentifiersMap map;
  map.kind = kind;
  map.variant_names = variant_names;
  for (const auto& v : variant_names) map.unique[v];
  for (const auto& c : poset.concepts) {
    if (c.reduced_intent.none()) continue;
    auto ids = poset.identifiers(c.reduced_intent);
    const auto extent = poset.names(c.extent);
    if (extent.size() == variant_names.size()) {
      map.common.merge(ids);
    } else if (extent.size() == 1) {
      map.unique[extent.front()].merge(ids);
    } else {
      map.shared[extent].merge(ids);
    }
  }
  return map;
}

/// Everything computed for one map kind.
struct MapAnalysis {
  FormalContext context;
  AOCPoset poset;
  IdentifiersMap map;
};

inline MapAnalysis analyze(std::span<const CodeModel> models, MapKind kind) {
  auto context = build_context(models, kind);
  auto poset = build_aoc_poset(context);
  auto map = extract_map(poset, kind, context.objects());
  return {std::move(context), std::move(poset), std::move(map)};
}

/// The five maps (packages, classes, attributes, methods, all), computed
/// concurrently and returned in that order.
inline std::array<IdentifiersMap, 5> build_all_maps(std::span<const CodeModel> models) {
  std::array<std::future<IdentifiersMap>, 5> jobs;
  for (std::size_t i = 0; i < kAllMapKinds.size(); ++i)
    jobs[i] = std::async(std::launch::async, [models, kind = kAllMapKinds[i]] {
      return analyze(models, kind).map;
    });
  std::array<IdentifiersMap, 5> out;
  for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = jobs[i].get();
  return out;
}

inline std::array<IdentifiersMap, 5> build_all_maps(const CodeModel& first,
                                                    const CodeModel& second) {
  const std::array<CodeModel, 2> pair{first, second};
  return build_all_maps(std::span<const CodeModel>(pair));
}

struct EvolutionReport {
  MapKind kind = MapKind::All;
  std::string initial_variant;
  std::string current_variant;
  IdentifierSet added;      // current \ initial
  IdentifierSet removed;    // initial \ current
  IdentifierSet unchanged;  // initial ∩ current

  bool no_changes() const { return added.empty() && removed.empty(); }

  friend bool operator==(const EvolutionReport&, const EvolutionReport&) = default;
};

/// Classifies identifiers by plain set difference. Renames show up as one
/// removal plus one addition.
inline EvolutionReport classify_evolution(const CodeModel& initial,
                                          const CodeModel& current,
                                          MapKind kind) {
  EvolutionReport report;
  report.kind = kind;
  report.initial_variant = initial.variant_name;
  report.current_variant = current.variant_name;
  const auto before = filter_by_map_kind(initial, kind);
  const auto after = filter_by_map_kind(current, kind);
  for (const auto& id : after)
    (before.contains(id) ? report.unchanged : report.added).insert(id);
  for (const auto& id : before)
    if (!after.contains(id)) report.removed.insert(id);
  return report;
}

/// The same classification read off a two-variant map.
inline EvolutionReport classify_evolution(const IdentifiersMap& map,
                                          const std::string& initial,
                                          const std::string& current) {
  if (map.variant_names.size() != 2 || !map.unique.contains(initial) ||
      !map.unique.contains(current) || initial == current)
    throw UsageError("evolution needs a two-variant map over '" + initial +
                     "' and '" + current + "'");
  EvolutionReport report;
  report.kind = map.kind;
  report.initial_variant = initial;
  report.current_variant = current;
  report.added = map.unique.at(current);
  report.removed = map.unique.at(initial);
  report.unchanged = map.common;
  return report;
}

}  // namespace idmap
