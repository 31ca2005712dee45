#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "idmap/error.hpp"

namespace idmap {

enum class IdentifierKind { Package, Class, Attribute, Method };

inline constexpr std::array<IdentifierKind, 4> kAllKinds = {
    IdentifierKind::Package, IdentifierKind::Class, IdentifierKind::Attribute,
    IdentifierKind::Method};

/// Singular tag used in XML-free text formats ("package", "class", ...).
inline constexpr std::string_view kind_tag(IdentifierKind kind) {
  switch (kind) {
    case IdentifierKind::Package: return "package";
    case IdentifierKind::Class: return "class";
    case IdentifierKind::Attribute: return "attribute";
    case IdentifierKind::Method: return "method";
  }
  return "?";
}

inline std::optional<IdentifierKind> kind_from_tag(std::string_view tag) {
  for (auto k : kAllKinds)
    if (kind_tag(k) == tag) return k;
  return std::nullopt;
}

/// Scope of a map or context: one identifier kind, or all of them.
enum class MapKind { Packages, Classes, Attributes, Methods, All };

inline constexpr std::array<MapKind, 5> kAllMapKinds = {
    MapKind::Packages, MapKind::Classes, MapKind::Attributes, MapKind::Methods,
    MapKind::All};

inline constexpr std::string_view map_kind_name(MapKind kind) {
  switch (kind) {
    case MapKind::Packages: return "packages";
    case MapKind::Classes: return "classes";
    case MapKind::Attributes: return "attributes";
    case MapKind::Methods: return "methods";
    case MapKind::All: return "all";
  }
  return "?";
}

inline std::optional<MapKind> map_kind_from_name(std::string_view name) {
  for (auto k : kAllMapKinds)
    if (map_kind_name(k) == name) return k;
  return std::nullopt;
}

inline constexpr MapKind map_kind_of(IdentifierKind kind) {
  return static_cast<MapKind>(static_cast<int>(kind));
}

inline constexpr bool map_kind_admits(MapKind map_kind, IdentifierKind kind) {
  return map_kind == MapKind::All || map_kind == map_kind_of(kind);
}

/// Package that holds types declared without a package clause.
inline constexpr std::string_view kDefaultPackage = "(default)";

/// A named program entity. Identity is (kind, qualified_name).
///
/// Qualified names:
///   Package    a.b.c
///   Class      <package>.<Outer>.<Inner>
///   Attribute  <class>.<field>
///   Method     <class>.<name>(<T1>,<T2>)
class Identifier {
 public:
  Identifier(IdentifierKind kind, std::string qualified_name)
      : kind_(kind), qualified_name_(std::move(qualified_name)) {
    if (qualified_name_.empty())
      throw ConsistencyError("identifier name is empty");
    if (std::any_of(qualified_name_.begin(), qualified_name_.end(),
                    [](unsigned char c) { return std::isspace(c); }))
      throw ConsistencyError("identifier name contains whitespace: '" +
                             qualified_name_ + "'");
    if (kind_ == IdentifierKind::Method &&
        (qualified_name_.back() != ')' ||
         qualified_name_.rfind('(') == std::string::npos))
      throw ConsistencyError("method identifier lacks a signature: '" +
                             qualified_name_ + "'");
    if (kind_ != IdentifierKind::Package && owner().empty())
      throw ConsistencyError("member identifier has no owner: '" +
                             qualified_name_ + "'");
  }

  IdentifierKind kind() const noexcept { return kind_; }
  const std::string& qualified_name() const noexcept { return qualified_name_; }

  /// Last dotted segment; for methods the signature is dropped.
  std::string simple_name() const {
    auto path = path_part();
    auto dot = path.rfind('.');
    return std::string(dot == std::string_view::npos ? path
                                                     : path.substr(dot + 1));
  }

  /// Qualified name of the enclosing package or class ("" for top-level
  /// packages).
  std::string owner() const {
    if (kind_ == IdentifierKind::Package) {
      auto dot = qualified_name_.rfind('.');
      return dot == std::string::npos ? std::string()
                                      : qualified_name_.substr(0, dot);
    }
    auto path = path_part();
    auto dot = path.rfind('.');
    return dot == std::string_view::npos ? std::string()
                                         : std::string(path.substr(0, dot));
  }

  /// Method parameter list without the parentheses; empty for other kinds.
  std::string parameters() const {
    if (kind_ != IdentifierKind::Method) return {};
    auto open = qualified_name_.rfind('(');
    if (open == std::string::npos) return {};
    auto close = qualified_name_.rfind(')');
    if (close == std::string::npos || close < open) return {};
    return qualified_name_.substr(open + 1, close - open - 1);
  }

  /// simple_name() plus the signature for methods. Packages keep their full
  /// dotted path since a package's last segment says little on its own.
  std::string display_name() const {
    if (kind_ == IdentifierKind::Package) return qualified_name_;
    if (kind_ == IdentifierKind::Method)
      return simple_name() + "(" + parameters() + ")";
    return simple_name();
  }

  friend bool operator==(const Identifier&, const Identifier&) = default;
  friend auto operator<=>(const Identifier&, const Identifier&) = default;

 private:
  std::string_view path_part() const {
    std::string_view name = qualified_name_;
    if (kind_ == IdentifierKind::Method) {
      // "(default)" may start the name, so look for the signature paren from
      // the right.
      auto open = name.rfind('(');
      if (open != std::string_view::npos && open > 0 && name.back() == ')')
        name = name.substr(0, open);
    }
    return name;
  }

  IdentifierKind kind_;
  std::string qualified_name_;
};

using IdentifierSet = std::set<Identifier>;

inline Identifier package_id(std::string name) {
  return {IdentifierKind::Package, std::move(name)};
}
inline Identifier class_id(std::string name) {
  return {IdentifierKind::Class, std::move(name)};
}
inline Identifier attribute_id(std::string name) {
  return {IdentifierKind::Attribute, std::move(name)};
}
inline Identifier method_id(std::string name) {
  return {IdentifierKind::Method, std::move(name)};
}

/// Tagged text form "kind:qualified.name", used where kinds are mixed.
inline std::string tagged_name(const Identifier& id) {
  return std::string(kind_tag(id.kind())) + ":" + id.qualified_name();
}

inline Identifier parse_tagged_name(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ConsistencyError("untagged identifier '" + std::string(text) + "'");
  auto kind = kind_from_tag(text.substr(0, colon));
  if (!kind)
    throw ConsistencyError("unknown identifier kind in '" + std::string(text) +
                           "'");
  return {*kind, std::string(text.substr(colon + 1))};
}

}  // namespace idmap
