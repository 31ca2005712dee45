#pragma once

// Code-model interchange format, one document per variant:
//
//   <variant name="..." loc="N">
//     <package name="...">
//       <class name="Simple" extends="A" implements="B,C">
//         <attribute name="..."/>
//         <method name="..." params="T1,T2"/>
//         <class .../>
//       </package>
//   </variant>

#include <expat.h>

#include <charconv>
#include <exception>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "idmap/code_model.hpp"
#include "idmap/error.hpp"

namespace idmap {

namespace xml_detail {

inline std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ',';
    out += p;
  }
  return out;
}

inline std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos
                                        ? std::string_view::npos
                                        : comma - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    if (!piece.empty()) out.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct ModelIndex {
  std::map<std::string, std::vector<const Identifier*>> classes_by_owner;
  std::map<std::string, std::vector<const Identifier*>> attributes_by_owner;
  std::map<std::string, std::vector<const Identifier*>> methods_by_owner;
  std::map<std::string, std::vector<std::string>> extends;
  std::map<std::string, std::vector<std::string>> implements;
};

inline void write_class(std::ostringstream& out, const ModelIndex& index,
                        const Identifier& cls, int depth) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  const auto& qname = cls.qualified_name();
  out << indent << "<class name=\"" << escape(cls.simple_name()) << '"';
  if (auto it = index.extends.find(qname); it != index.extends.end())
    out << " extends=\"" << escape(join(it->second)) << '"';
  if (auto it = index.implements.find(qname); it != index.implements.end())
    out << " implements=\"" << escape(join(it->second)) << '"';

  auto attrs = index.attributes_by_owner.find(qname);
  auto methods = index.methods_by_owner.find(qname);
  auto nested = index.classes_by_owner.find(qname);
  if (attrs == index.attributes_by_owner.end() &&
      methods == index.methods_by_owner.end() &&
      nested == index.classes_by_owner.end()) {
    out << "/>\n";
    return;
  }
  out << ">\n";
  if (attrs != index.attributes_by_owner.end())
    for (const auto* a : attrs->second)
      out << indent << "  <attribute name=\"" << escape(a->simple_name())
          << "\"/>\n";
  if (methods != index.methods_by_owner.end())
    for (const auto* m : methods->second)
      out << indent << "  <method name=\"" << escape(m->simple_name())
          << "\" params=\"" << escape(m->parameters()) << "\"/>\n";
  if (nested != index.classes_by_owner.end())
    for (const auto* c : nested->second) write_class(out, index, *c, depth + 1);
  out << indent << "</class>\n";
}

}  // namespace xml_detail

/// Serializes a model. Elements are ordered by qualified name within kind.
inline std::string write_xml(const CodeModel& model) {
  using namespace xml_detail;
  validate(model);

  ModelIndex index;
  std::vector<const Identifier*> packages;
  for (const auto& id : model.identifiers) {
    switch (id.kind()) {
      case IdentifierKind::Package: packages.push_back(&id); break;
      case IdentifierKind::Class:
        index.classes_by_owner[id.owner()].push_back(&id);
        break;
      case IdentifierKind::Attribute:
        index.attributes_by_owner[id.owner()].push_back(&id);
        break;
      case IdentifierKind::Method:
        index.methods_by_owner[id.owner()].push_back(&id);
        break;
    }
  }
  for (const auto& edge : model.inheritance) {
    auto& target = edge.kind == InheritanceKind::Extends
                       ? index.extends[edge.subtype]
                       : index.implements[edge.subtype];
    target.push_back(edge.supertype);
  }

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<variant name=\"" << escape(model.variant_name) << "\" loc=\""
      << model.source_stats.loc << "\">\n";
  for (const auto* pkg : packages) {
    const auto& qname = pkg->qualified_name();
    auto classes = index.classes_by_owner.find(qname);
    if (classes == index.classes_by_owner.end()) {
      out << "  <package name=\"" << escape(qname) << "\"/>\n";
      continue;
    }
    out << "  <package name=\"" << escape(qname) << "\">\n";
    for (const auto* cls : classes->second) write_class(out, index, *cls, 2);
    out << "  </package>\n";
  }
  out << "</variant>\n";
  return out.str();
}

namespace xml_detail {

class Reader {
 public:
  Reader() : parser_(XML_ParserCreate("UTF-8"), &XML_ParserFree) {
    if (!parser_) throw Error("cannot allocate XML parser");
    XML_SetUserData(parser_.get(), this);
    XML_SetElementHandler(parser_.get(), &Reader::on_start, &Reader::on_end);
  }

  CodeModel run(std::string_view document) {
    auto status = XML_Parse(parser_.get(), document.data(),
                            static_cast<int>(document.size()), XML_TRUE);
    if (pending_) std::rethrow_exception(pending_);
    if (status != XML_STATUS_OK) {
      throw ParseError(XML_ErrorString(XML_GetErrorCode(parser_.get())),
                       XML_GetCurrentLineNumber(parser_.get()),
                       XML_GetCurrentColumnNumber(parser_.get()) + 1);
    }
    if (!seen_root_) throw SchemaError("variant", "missing root element");
    refresh_stats(model_);
    validate(model_);
    return std::move(model_);
  }

 private:
  enum class Scope { Variant, Package, Class, Leaf };
  struct Frame {
    Scope scope;
    std::string qualified_name;
  };

  static void XMLCALL on_start(void* self, const XML_Char* name,
                               const XML_Char** attrs) {
    auto* reader = static_cast<Reader*>(self);
    try {
      reader->start(name, attrs);
    } catch (...) {
      reader->pending_ = std::current_exception();
      XML_StopParser(reader->parser_.get(), XML_FALSE);
    }
  }

  static void XMLCALL on_end(void* self, const XML_Char*) {
    auto* reader = static_cast<Reader*>(self);
    if (!reader->stack_.empty()) reader->stack_.pop_back();
  }

  static const char* find_attr(const XML_Char** attrs, std::string_view key) {
    for (auto** a = attrs; *a; a += 2)
      if (key == a[0]) return a[1];
    return nullptr;
  }

  static std::string required(const XML_Char** attrs, const std::string& elem,
                              std::string_view key) {
    const char* value = find_attr(attrs, key);
    if (!value || !*value)
      throw SchemaError(elem, "missing '" + std::string(key) + "' attribute");
    return value;
  }

  void start(const std::string& elem, const XML_Char** attrs) {
    const Frame* parent = stack_.empty() ? nullptr : &stack_.back();
    auto misplaced = [&] {
      throw ConsistencyError("<" + elem + "> at line " +
                             std::to_string(XML_GetCurrentLineNumber(parser_.get())) +
                             " is not inside a valid parent element");
    };

    if (!parent && !seen_root_ && elem != "variant")
      throw SchemaError(elem, "root element must be <variant>");
    if (elem == "variant") {
      if (parent || seen_root_) misplaced();
      seen_root_ = true;
      model_.variant_name = required(attrs, elem, "name");
      if (const char* loc = find_attr(attrs, "loc")) {
        std::string_view text(loc);
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                         model_.source_stats.loc);
        if (ec != std::errc() || ptr != text.data() + text.size())
          throw SchemaError(elem, "'loc' is not a non-negative integer");
      }
      stack_.push_back({Scope::Variant, ""});
    } else if (elem == "package") {
      if (!parent || parent->scope != Scope::Variant) misplaced();
      auto name = required(attrs, elem, "name");
      model_.identifiers.insert(package_id(name));
      stack_.push_back({Scope::Package, name});
    } else if (elem == "class") {
      if (!parent || (parent->scope != Scope::Package &&
                      parent->scope != Scope::Class))
        misplaced();
      auto qname = parent->qualified_name + "." + required(attrs, elem, "name");
      model_.identifiers.insert(class_id(qname));
      if (const char* ext = find_attr(attrs, "extends"))
        for (auto& super : split_list(ext))
          model_.inheritance.insert({qname, super, InheritanceKind::Extends});
      if (const char* impl = find_attr(attrs, "implements"))
        for (auto& super : split_list(impl))
          model_.inheritance.insert({qname, super, InheritanceKind::Implements});
      stack_.push_back({Scope::Class, qname});
    } else if (elem == "attribute") {
      if (!parent || parent->scope != Scope::Class) misplaced();
      model_.identifiers.insert(attribute_id(parent->qualified_name + "." +
                                             required(attrs, elem, "name")));
      stack_.push_back({Scope::Leaf, ""});
    } else if (elem == "method") {
      if (!parent || parent->scope != Scope::Class) misplaced();
      const char* params = find_attr(attrs, "params");
      model_.identifiers.insert(method_id(parent->qualified_name + "." +
                                          required(attrs, elem, "name") + "(" +
                                          (params ? params : "") + ")"));
      stack_.push_back({Scope::Leaf, ""});
    } else {
      throw SchemaError(elem, "unknown element");
    }
  }

  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser_;
  std::vector<Frame> stack_;
  CodeModel model_;
  bool seen_root_ = false;
  std::exception_ptr pending_;
};

}  // namespace xml_detail

/// Parses a code-model document.
///
/// Throws ParseError for malformed XML, SchemaError for unknown elements or
/// missing names, ConsistencyError for misplaced members.
inline CodeModel read_xml(std::string_view document) {
  return xml_detail::Reader().run(document);
}

}  // namespace idmap
