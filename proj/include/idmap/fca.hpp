#pragma once

// Formal contexts over (variants x identifiers) and their Galois
// sub-hierarchy (AOC-poset).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "idmap/code_model.hpp"
#include "idmap/error.hpp"
#include "idmap/identifier.hpp"

namespace idmap {

/// Membership bits over objects (extents) or attributes (intents).
using Bits = boost::dynamic_bitset<>;

inline std::vector<std::size_t> indices(const Bits& bits) {
  std::vector<std::size_t> out;
  out.reserve(bits.count());
  for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i))
    out.push_back(i);
  return out;
}

/// Objects are variant names, attributes are identifiers; a cross at (g, m)
/// means variant g contains identifier m.
class FormalContext {
 public:
  FormalContext(MapKind kind, std::vector<std::string> objects,
                std::vector<Identifier> attributes, std::vector<Bits> rows)
      : kind_(kind),
        objects_(std::move(objects)),
        attributes_(std::move(attributes)),
        rows_(std::move(rows)) {
    if (rows_.size() != objects_.size())
      throw ConsistencyError("incidence has " + std::to_string(rows_.size()) +
                             " rows for " + std::to_string(objects_.size()) +
                             " objects");
    if (std::set<std::string>(objects_.begin(), objects_.end()).size() !=
        objects_.size())
      throw UsageError("duplicate object (variant) names in context");
    if (std::set<Identifier>(attributes_.begin(), attributes_.end()).size() !=
        attributes_.size())
      throw ConsistencyError("duplicate attributes in context");
    columns_.assign(attributes_.size(), Bits(objects_.size()));
    for (std::size_t g = 0; g < rows_.size(); ++g) {
      if (rows_[g].size() != attributes_.size())
        throw ConsistencyError("incidence row width does not match attributes");
      for (auto m : indices(rows_[g])) columns_[m].set(g);
    }
    for (std::size_t m = 0; m < columns_.size(); ++m)
      if (columns_[m].none())
        throw ConsistencyError("attribute '" + attributes_[m].qualified_name() +
                               "' has no incident object");
  }

  MapKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<Identifier>& attributes() const noexcept { return attributes_; }
  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t attribute_count() const noexcept { return attributes_.size(); }

  bool incident(std::size_t g, std::size_t m) const { return rows_[g].test(m); }
  const Bits& row(std::size_t g) const { return rows_[g]; }
  const Bits& column(std::size_t m) const { return columns_[m]; }

  Bits no_objects() const { return Bits(objects_.size()); }
  Bits no_attributes() const { return Bits(attributes_.size()); }
  Bits all_objects() const { return ~no_objects(); }
  Bits all_attributes() const { return ~no_attributes(); }

  std::optional<std::size_t> object_index(const std::string& name) const {
    auto it = std::find(objects_.begin(), objects_.end(), name);
    if (it == objects_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - objects_.begin());
  }

  std::optional<std::size_t> attribute_index(const Identifier& id) const {
    auto it = std::lower_bound(attributes_.begin(), attributes_.end(), id);
    if (it == attributes_.end() || *it != id) {
      // Hand-built contexts need not be sorted.
      it = std::find(attributes_.begin(), attributes_.end(), id);
      if (it == attributes_.end()) return std::nullopt;
    }
    return static_cast<std::size_t>(it - attributes_.begin());
  }

  Bits object_bits(const std::vector<std::string>& names) const {
    Bits out = no_objects();
    for (const auto& n : names)
      if (auto i = object_index(n)) out.set(*i);
    return out;
  }

  Bits attribute_bits(const IdentifierSet& ids) const {
    Bits out = no_attributes();
    for (const auto& id : ids)
      if (auto i = attribute_index(id)) out.set(*i);
    return out;
  }

  std::vector<std::string> object_names(const Bits& bits) const {
    std::vector<std::string> out;
    for (auto i : indices(bits)) out.push_back(objects_[i]);
    return out;
  }

  IdentifierSet attribute_set(const Bits& bits) const {
    IdentifierSet out;
    for (auto i : indices(bits)) out.insert(attributes_[i]);
    return out;
  }

 private:
  MapKind kind_;
  std::vector<std::string> objects_;
  std::vector<Identifier> attributes_;
  std::vector<Bits> rows_;
  std::vector<Bits> columns_;
};

/// Builds the context of the given variants restricted to `kind`.
/// Attributes are sorted by (kind, qualified name).
inline FormalContext build_context(std::span<const CodeModel> models,
                                   MapKind kind) {
  if (models.size() < 2)
    throw UsageError("a formal context needs at least 2 variants, got " +
                     std::to_string(models.size()));
  std::vector<std::string> objects;
  IdentifierSet all;
  for (const auto& model : models) {
    objects.push_back(model.variant_name);
    for (const auto& id : model.identifiers)
      if (map_kind_admits(kind, id.kind())) all.insert(all.end(), id);
  }
  if (std::set<std::string>(objects.begin(), objects.end()).size() !=
      objects.size())
    throw UsageError("variant names must be pairwise distinct");

  std::vector<Identifier> attributes(all.begin(), all.end());
  std::vector<Bits> rows;
  for (const auto& model : models) {
    Bits row(attributes.size());
    std::size_t m = 0;
    // Both sequences are sorted: a single merge pass fills the row.
    auto it = model.identifiers.begin();
    for (const auto& attr : attributes) {
      while (it != model.identifiers.end() && *it < attr) ++it;
      if (it != model.identifiers.end() && *it == attr) row.set(m);
      ++m;
    }
    rows.push_back(std::move(row));
  }
  return {kind, std::move(objects), std::move(attributes), std::move(rows)};
}

/// Objects having every attribute in `attrs`.
inline Bits derive_objects(const FormalContext& ctx, const Bits& attrs) {
  Bits out = ctx.all_objects();
  for (auto m : indices(attrs)) out &= ctx.column(m);
  return out;
}

/// Attributes shared by every object in `objs`.
inline Bits derive_attributes(const FormalContext& ctx, const Bits& objs) {
  Bits out = ctx.all_attributes();
  for (auto g : indices(objs)) out &= ctx.row(g);
  return out;
}

struct Concept {
  Bits extent;
  Bits intent;
  Bits reduced_extent;  // objects whose object-concept this is
  Bits reduced_intent;  // attributes whose attribute-concept this is
};

inline bool is_formal_concept(const FormalContext& ctx, const Concept& c) {
  return derive_attributes(ctx, c.extent) == c.intent &&
         derive_objects(ctx, c.intent) == c.extent;
}

/// Attribute- and object-concepts of a context ordered by extent inclusion.
/// Every attribute and every object labels exactly one concept.
struct AOCPoset {
  MapKind kind = MapKind::All;
  std::vector<std::string> objects;
  std::vector<Identifier> attributes;
  std::vector<Concept> concepts;
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges;  // (child, parent)

  /// Index of the concept whose extent holds every object, if any.
  std::optional<std::size_t> top() const {
    for (std::size_t i = 0; i < concepts.size(); ++i)
      if (concepts[i].extent.all()) return i;
    return std::nullopt;
  }

  std::vector<std::string> names(const Bits& objs) const {
    std::vector<std::string> out;
    for (auto g : indices(objs)) out.push_back(objects[g]);
    return out;
  }

  IdentifierSet identifiers(const Bits& attrs) const {
    IdentifierSet out;
    for (auto m : indices(attrs)) out.insert(attributes[m]);
    return out;
  }
};

namespace fca_detail {

// Descending extent size, then extent members, then smallest intent member.
inline bool concept_order(const Concept& a, const Concept& b) {
  auto ca = a.extent.count(), cb = b.extent.count();
  if (ca != cb) return ca > cb;
  auto ea = indices(a.extent), eb = indices(b.extent);
  if (ea != eb) return ea < eb;
  return a.intent.find_first() < b.intent.find_first();
}

inline std::vector<std::pair<std::size_t, std::size_t>> covering_pairs(
    const std::vector<Concept>& concepts) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  const std::size_t n = concepts.size();
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t p = 0; p < n; ++p) {
      const auto& ec = concepts[c].extent;
      const auto& ep = concepts[p].extent;
      if (!ec.is_proper_subset_of(ep)) continue;
      bool covered = true;
      for (std::size_t q = 0; q < n && covered; ++q) {
        const auto& eq = concepts[q].extent;
        if (ec.is_proper_subset_of(eq) && eq.is_proper_subset_of(ep))
          covered = false;
      }
      if (covered) edges.emplace_back(c, p);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace fca_detail

/// Computes the attribute-concepts (m', m'') and object-concepts (g'', g')
/// directly, merges equal ones, and links covering pairs. The bottom concept
/// appears only when it introduces an attribute or an object.
inline AOCPoset build_aoc_poset(const FormalContext& ctx) {
  std::map<Bits, std::size_t> by_extent;
  std::vector<Concept> concepts;
  auto concept_for = [&](const Bits& extent, auto&& intent_of) -> Concept& {
    auto [it, inserted] = by_extent.try_emplace(extent, concepts.size());
    if (inserted)
      concepts.push_back({extent, intent_of(), ctx.no_objects(),
                          ctx.no_attributes()});
    return concepts[it->second];
  };

  for (std::size_t m = 0; m < ctx.attribute_count(); ++m) {
    const Bits& extent = ctx.column(m);
    concept_for(extent, [&] { return derive_attributes(ctx, extent); })
        .reduced_intent.set(m);
  }
  for (std::size_t g = 0; g < ctx.object_count(); ++g) {
    Bits extent = derive_objects(ctx, ctx.row(g));
    concept_for(extent, [&] { return ctx.row(g); }).reduced_extent.set(g);
  }

  std::sort(concepts.begin(), concepts.end(), fca_detail::concept_order);

  AOCPoset poset;
  poset.kind = ctx.kind();
  poset.objects = ctx.objects();
  poset.attributes = ctx.attributes();
  poset.hasse_edges = fca_detail::covering_pairs(concepts);
  poset.concepts = std::move(concepts);
  return poset;
}

/// Largest context the brute-force enumeration accepts.
inline constexpr std::size_t kBruteForceMaxObjects = 16;

/// Every formal concept of `ctx`, found by closing all object subsets. Uses
/// plain incidence lookups only, so it shares no code path with
/// build_aoc_poset. Intended as a test oracle.
inline std::vector<Concept> brute_force_lattice(const FormalContext& ctx) {
  const std::size_t g_count = ctx.object_count();
  const std::size_t m_count = ctx.attribute_count();
  if (g_count > kBruteForceMaxObjects)
    throw UsageError("brute_force_lattice enumerates 2^" +
                     std::to_string(g_count) +
                     " subsets; it is a test oracle limited to " +
                     std::to_string(kBruteForceMaxObjects) + " objects");

  std::set<std::vector<bool>> seen;
  std::vector<Concept> out;
  for (unsigned long mask = 0; mask < (1UL << g_count); ++mask) {
    std::vector<bool> intent(m_count, true);
    for (std::size_t g = 0; g < g_count; ++g)
      if (mask & (1UL << g))
        for (std::size_t m = 0; m < m_count; ++m)
          if (!ctx.incident(g, m)) intent[m] = false;
    std::vector<bool> extent(g_count, true);
    for (std::size_t g = 0; g < g_count; ++g)
      for (std::size_t m = 0; m < m_count; ++m)
        if (intent[m] && !ctx.incident(g, m)) extent[g] = false;
    if (!seen.insert(extent).second) continue;

    Concept c{Bits(g_count), Bits(m_count), Bits(g_count), Bits(m_count)};
    for (std::size_t g = 0; g < g_count; ++g) c.extent[g] = extent[g];
    for (std::size_t m = 0; m < m_count; ++m) c.intent[m] = intent[m];
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), fca_detail::concept_order);
  return out;
}

}  // namespace idmap
