#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <tuple>

#include "idmap/error.hpp"
#include "idmap/identifier.hpp"

namespace idmap {

enum class InheritanceKind { Extends, Implements };

/// A declared supertype, kept exactly as written in the source (no
/// resolution).
struct InheritanceEdge {
  std::string subtype;    // qualified class name
  std::string supertype;  // as written, generic arguments stripped
  InheritanceKind kind = InheritanceKind::Extends;

  friend bool operator==(const InheritanceEdge&,
                         const InheritanceEdge&) = default;
  friend auto operator<=>(const InheritanceEdge&,
                          const InheritanceEdge&) = default;
};

/// LOC counts non-blank lines, comments included.
struct SourceStats {
  std::size_t loc = 0;
  std::size_t nop = 0;
  std::size_t noc = 0;

  friend bool operator==(const SourceStats&, const SourceStats&) = default;
};

/// Identifier inventory of one product variant.
struct CodeModel {
  std::string variant_name;
  IdentifierSet identifiers;
  std::set<InheritanceEdge> inheritance;
  SourceStats source_stats;

  friend bool operator==(const CodeModel&, const CodeModel&) = default;
};

inline IdentifierSet filter_by_kind(const IdentifierSet& ids,
                                    IdentifierKind kind) {
  IdentifierSet out;
  for (const auto& id : ids)
    if (id.kind() == kind) out.insert(out.end(), id);
  return out;
}

inline IdentifierSet filter_by_kind(const CodeModel& model,
                                    IdentifierKind kind) {
  return filter_by_kind(model.identifiers, kind);
}

inline IdentifierSet filter_by_map_kind(const IdentifierSet& ids,
                                        MapKind kind) {
  if (kind == MapKind::All) return ids;
  IdentifierSet out;
  for (const auto& id : ids)
    if (map_kind_admits(kind, id.kind())) out.insert(out.end(), id);
  return out;
}

inline IdentifierSet filter_by_map_kind(const CodeModel& model, MapKind kind) {
  return filter_by_map_kind(model.identifiers, kind);
}

/// Recomputes nop/noc from the identifier set, keeping loc.
inline void refresh_stats(CodeModel& model) {
  model.source_stats.nop = 0;
  model.source_stats.noc = 0;
  for (const auto& id : model.identifiers) {
    if (id.kind() == IdentifierKind::Package) ++model.source_stats.nop;
    if (id.kind() == IdentifierKind::Class) ++model.source_stats.noc;
  }
}

/// Throws ConsistencyError when a containment or stats invariant fails.
inline void validate(const CodeModel& model) {
  auto has = [&](IdentifierKind kind, const std::string& name) {
    return name.empty() ? false : model.identifiers.contains({kind, name});
  };
  std::size_t nop = 0, noc = 0;
  for (const auto& id : model.identifiers) {
    switch (id.kind()) {
      case IdentifierKind::Package:
        ++nop;
        break;
      case IdentifierKind::Class:
        ++noc;
        if (!has(IdentifierKind::Package, id.owner()) &&
            !has(IdentifierKind::Class, id.owner()))
          throw ConsistencyError("class '" + id.qualified_name() +
                                 "' has no enclosing package or class");
        break;
      case IdentifierKind::Attribute:
      case IdentifierKind::Method:
        if (!has(IdentifierKind::Class, id.owner()))
          throw ConsistencyError(std::string(kind_tag(id.kind())) + " '" +
                                 id.qualified_name() +
                                 "' has no enclosing class");
        break;
    }
  }
  for (const auto& edge : model.inheritance)
    if (!has(IdentifierKind::Class, edge.subtype))
      throw ConsistencyError("inheritance edge from unknown class '" +
                             edge.subtype + "'");
  if (model.source_stats.nop != nop || model.source_stats.noc != noc)
    throw ConsistencyError("source stats disagree with identifier counts for '" +
                           model.variant_name + "'");
}

}  // namespace idmap
