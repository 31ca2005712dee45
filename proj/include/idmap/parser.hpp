#pragma once

// Declaration-level parser for Java sources.
//
// Only declarations are recognized: package clause, type declarations
// (class, interface, enum, record, annotation type) with their supertypes,
// fields, methods and constructors. Method bodies and initializers are
// skipped by bracket matching, so local and anonymous classes are invisible.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <future>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

#include "idmap/code_model.hpp"
#include "idmap/error.hpp"
#include "idmap/lexer.hpp"

namespace idmap {

struct UnitParse {
  CodeModel contribution;  // variant_name and stats left empty
  std::vector<ParseDiagnostic> diagnostics;
};

namespace parser_detail {

inline bool is_primitive(std::string_view word) {
  static constexpr std::string_view kPrimitives[] = {
      "boolean", "byte", "char", "short", "int", "long", "float", "double", "void"};
  return std::find(std::begin(kPrimitives), std::end(kPrimitives), word) !=
         std::end(kPrimitives);
}

inline bool is_modifier_keyword(std::string_view word) {
  static constexpr std::string_view kModifiers[] = {
      "public", "protected", "private", "static", "final", "abstract",
      "native", "synchronized", "transient", "volatile", "strictfp", "default"};
  return std::find(std::begin(kModifiers), std::end(kModifiers), word) !=
         std::end(kModifiers);
}

class UnitParser {
 public:
  UnitParser(const std::vector<Token>& tokens, std::filesystem::path file)
      : file_(std::move(file)) {
    for (const auto& t : tokens)
      if (!t.trivia()) toks_.push_back(&t);
    eof_.kind = TokenKind::Whitespace;
    eof_.line = tokens.empty() ? 1 : tokens.back().line;
    eof_.column = tokens.empty() ? 1 : tokens.back().column;
  }

  UnitParse run() {
    compilation_unit();
    return std::move(result_);
  }

 private:
  // -- token access -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? *toks_[pos_ + ahead] : eof_;
  }
  bool at_end() const { return pos_ >= toks_.size(); }
  void advance() {
    if (!at_end()) ++pos_;
  }
  bool accept(std::string_view punct) {
    if (!peek().is_punct(punct)) return false;
    advance();
    return true;
  }
  bool at_word() const { return peek().kind == TokenKind::Word; }

  void warn(const Token& where, std::string message) {
    diagnose(Severity::Warning, where, std::move(message));
  }
  void error(const Token& where, std::string message) {
    diagnose(Severity::Error, where, std::move(message));
  }
  void diagnose(Severity sev, const Token& where, std::string message) {
    result_.diagnostics.push_back(
        {sev, std::move(message), file_, where.line, where.column});
  }

  void add(IdentifierKind kind, std::string qname) {
    result_.contribution.identifiers.emplace(kind, std::move(qname));
  }

  // -- skipping -----------------------------------------------------------

  // At an opening bracket; moves past its partner. Returns false (and
  // reports) when the file ends first.
  bool skip_balanced() {
    const Token& open = peek();
    std::vector<char> stack;
    do {
      const Token& t = peek();
      if (t.kind == TokenKind::Punct && t.text.size() == 1) {
        char c = t.text[0];
        if (c == '{' || c == '(' || c == '[') {
          stack.push_back(c);
        } else if (c == '}' || c == ')' || c == ']') {
          // Tolerate mismatched kinds: close the nearest bracket of this kind.
          char want = c == '}' ? '{' : c == ')' ? '(' : '[';
          auto it = std::find(stack.rbegin(), stack.rend(), want);
          if (it != stack.rend()) stack.erase(std::next(it).base(), stack.end());
        }
      }
      advance();
    } while (!stack.empty() && !at_end());
    if (!stack.empty()) {
      truncated_ = true;
      error(open, "unbalanced '" + open.text + "': end of file reached before it was closed");
      return false;
    }
    return true;
  }

  // At '<'. Consumes a generic argument/parameter list when the tokens look
  // like one; otherwise leaves the position unchanged and returns false.
  bool skip_type_arguments() {
    if (!peek().is_punct("<")) return false;
    std::size_t i = pos_;
    int depth = 0;
    while (i < toks_.size()) {
      const Token& t = *toks_[i];
      if (t.is_punct("<")) {
        ++depth;
      } else if (t.is_punct("@")) {
        // type annotation, possibly with arguments
        ++i;
        while (i < toks_.size() && (toks_[i]->kind == TokenKind::Word || toks_[i]->is_punct(".")))
          ++i;
        if (i < toks_.size() && toks_[i]->is_punct("(")) {
          int parens = 0;
          for (; i < toks_.size(); ++i) {
            if (toks_[i]->is_punct("(")) ++parens;
            else if (toks_[i]->is_punct(")") && --parens == 0) break;
          }
          ++i;
        }
        continue;
      } else if (t.is_punct(">")) {
        if (--depth == 0) {
          pos_ = i + 1;
          return true;
        }
      } else if (!(t.kind == TokenKind::Word || t.is_punct(".") ||
                   t.is_punct(",") || t.is_punct("?") || t.is_punct("[") ||
                   t.is_punct("]") || t.is_punct("&") ||
                   t.is_keyword("extends") || t.is_keyword("super") ||
                   (t.kind == TokenKind::Keyword && is_primitive(t.text)))) {
        return false;
      }
      ++i;
    }
    return false;
  }

  bool at_annotation() const {
    return peek().is_punct("@") && !peek(1).is_keyword("interface");
  }

  void skip_annotation() {
    advance();  // '@'
    if (at_word() || peek().kind == TokenKind::Keyword) advance();
    while (peek().is_punct(".") && peek(1).kind == TokenKind::Word) {
      advance();
      advance();
    }
    if (peek().is_punct("(")) skip_balanced();
  }

  void skip_annotations() {
    while (at_annotation() && !truncated_) skip_annotation();
  }

  // Skips a declaration that was not understood: up to and including the
  // next ';' or brace block at this level, or up to (not including) a '}'
  // that closes the enclosing body.
  void recover() {
    while (!at_end() && !truncated_) {
      const Token& t = peek();
      if (t.is_punct(";")) {
        advance();
        return;
      }
      if (t.is_punct("}")) return;
      if (t.is_punct("{")) {
        skip_balanced();
        return;
      }
      if (t.is_punct("(") || t.is_punct("[")) {
        skip_balanced();
        continue;
      }
      advance();
    }
  }

  // Skips a field initializer, stopping before ',' or ';' at depth zero.
  void skip_initializer() {
    while (!at_end() && !truncated_) {
      const Token& t = peek();
      if (t.is_punct(",") || t.is_punct(";") || t.is_punct("}")) return;
      if (t.is_punct("{") || t.is_punct("(") || t.is_punct("[")) {
        skip_balanced();
      } else if (t.is_punct("<")) {
        if (!skip_type_arguments()) advance();
      } else {
        advance();
      }
    }
  }

  // -- types --------------------------------------------------------------

  // Reads a type as written with generic arguments removed. Varargs become
  // array types.
  std::optional<std::string> parse_type() {
    skip_annotations();
    const Token& first = peek();
    if (!(first.kind == TokenKind::Word ||
          (first.kind == TokenKind::Keyword && is_primitive(first.text))))
      return std::nullopt;
    std::string name = first.text;
    advance();
    skip_type_arguments();
    while (peek().is_punct(".") &&
           (peek(1).kind == TokenKind::Word || peek(1).is_punct("@"))) {
      advance();
      skip_annotations();
      if (!at_word()) break;
      name += "." + peek().text;
      advance();
      skip_type_arguments();
    }
    for (;;) {
      skip_annotations();
      if (peek().is_punct("[") && peek(1).is_punct("]")) {
        advance();
        advance();
        name += "[]";
      } else {
        break;
      }
    }
    if (accept("...")) name += "[]";
    return name;
  }

  std::vector<std::string> parse_type_list() {
    std::vector<std::string> out;
    do {
      if (auto t = parse_type()) out.push_back(std::move(*t));
      else break;
    } while (accept(","));
    return out;
  }

  // -- declarations -------------------------------------------------------

  void compilation_unit() {
    std::string package;
    bool package_declared = false;
    while (!at_end() && !truncated_) {
      skip_annotations();
      const Token& t = peek();
      if (t.is_keyword("package")) {
        advance();
        std::string name;
        while (!at_end() && !peek().is_punct(";")) {
          if (at_word()) name += peek().text;
          else if (peek().is_punct(".")) name += ".";
          advance();
        }
        accept(";");
        if (name.empty()) {
          warn(t, "package declaration without a name");
          continue;
        }
        package = name;
        package_declared = true;
        add(IdentifierKind::Package, package);
      } else if (t.is_keyword("import")) {
        while (!at_end() && !peek().is_punct(";")) advance();
        accept(";");
      } else if (t.is_punct(";")) {
        advance();
      } else {
        skip_modifiers();
        if (at_type_declaration()) {
          if (!package_declared) {
            package = std::string(kDefaultPackage);
            package_declared = true;
            add(IdentifierKind::Package, package);
          }
          type_declaration(package);
        } else if (!at_end()) {
          warn(peek(), "unexpected '" + peek().text + "' at top level");
          if (peek().is_punct("}")) advance();
          else recover();
        }
      }
    }
  }

  void skip_modifiers() {
    for (;;) {
      skip_annotations();
      const Token& t = peek();
      if (t.kind == TokenKind::Keyword && is_modifier_keyword(t.text)) {
        advance();
      } else if (t.kind == TokenKind::Word && t.text == "sealed" &&
                 (peek(1).kind == TokenKind::Word ||
                  peek(1).kind == TokenKind::Keyword)) {
        advance();
      } else if (t.kind == TokenKind::Word && t.text == "non" &&
                 peek(1).is_punct("-") && peek(2).text == "sealed") {
        advance();
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  bool at_type_declaration() const {
    const Token& t = peek();
    if (t.is_keyword("class") || t.is_keyword("interface") || t.is_keyword("enum"))
      return true;
    if (t.is_punct("@") && peek(1).is_keyword("interface")) return true;
    return t.kind == TokenKind::Word && t.text == "record" &&
           peek(1).kind == TokenKind::Word &&
           (peek(2).is_punct("(") || peek(2).is_punct("<"));
  }

  void type_declaration(const std::string& owner) {
    const Token& keyword = peek();
    const bool is_enum = keyword.is_keyword("enum");
    const bool is_record = keyword.text == "record";
    if (keyword.is_punct("@")) advance();
    advance();

    if (!at_word()) {
      warn(peek(), "expected a type name after '" + keyword.text + "'");
      recover();
      return;
    }
    const std::string simple = peek().text;
    const std::string qname = owner + "." + simple;
    add(IdentifierKind::Class, qname);
    advance();
    skip_type_arguments();

    if (is_record && peek().is_punct("(")) record_components(qname);

    for (;;) {
      if (peek().is_keyword("extends")) {
        advance();
        // "extends" on an interface lists super-interfaces.
        for (auto& super : parse_type_list())
          result_.contribution.inheritance.insert(
              {qname, std::move(super), InheritanceKind::Extends});
      } else if (peek().is_keyword("implements")) {
        advance();
        for (auto& super : parse_type_list())
          result_.contribution.inheritance.insert(
              {qname, std::move(super), InheritanceKind::Implements});
      } else if (at_word() && peek().text == "permits") {
        advance();
        parse_type_list();
      } else {
        break;
      }
    }
    if (!peek().is_punct("{")) {
      warn(peek(), "expected '{' to open the body of " + simple);
      recover();
      return;
    }
    type_body(qname, simple, is_enum);
  }

  void record_components(const std::string& qname) {
    std::size_t close = matching_paren(pos_);
    advance();  // '('
    while (pos_ < close && !truncated_) {
      skip_annotations();
      auto type = parse_type();
      if (type && at_word()) {
        add(IdentifierKind::Attribute, qname + "." + peek().text);
        advance();
      }
      while (pos_ < close && !peek().is_punct(",")) advance();
      if (pos_ < close) advance();
    }
    if (close < toks_.size()) pos_ = close + 1;
  }

  // At '{'. Returns once the matching '}' is consumed or the file ends.
  void type_body(const std::string& qname, const std::string& simple,
                 bool is_enum) {
    const Token& open = peek();
    advance();
    if (is_enum) enum_constants(qname);
    while (!truncated_) {
      if (at_end()) {
        truncated_ = true;
        error(open, "unbalanced '{': body of " + simple +
                        " is not closed before end of file");
        return;
      }
      if (accept("}")) return;
      member(qname, simple);
    }
  }

  void enum_constants(const std::string& qname) {
    for (;;) {
      skip_annotations();
      if (at_word() && (peek(1).is_punct(",") || peek(1).is_punct(";") ||
                        peek(1).is_punct("(") || peek(1).is_punct("{") ||
                        peek(1).is_punct("}"))) {
        add(IdentifierKind::Attribute, qname + "." + peek().text);
        advance();
        if (peek().is_punct("(") && !skip_balanced()) return;
        if (peek().is_punct("{") && !skip_balanced()) return;
        if (accept(",")) continue;
        accept(";");
        return;
      }
      accept(";");
      return;
    }
  }

  void member(const std::string& qname, const std::string& simple) {
    if (accept(";")) return;
    skip_modifiers();
    if (peek().is_punct("{")) {  // initializer block
      skip_balanced();
      return;
    }
    if (at_type_declaration()) {
      type_declaration(qname);
      return;
    }
    if (peek().is_punct("<")) {
      if (!skip_type_arguments()) {
        warn(peek(), "malformed type parameter list");
        recover();
        return;
      }
    }
    // Constructor: a bare name directly followed by its parameter list.
    if (at_word() && peek(1).is_punct("(")) {
      std::string name = peek().text;
      advance();
      method_rest(qname, name);
      return;
    }
    // Compact record constructor.
    if (at_word() && peek().text == simple && peek(1).is_punct("{")) {
      advance();
      skip_balanced();
      return;
    }
    const Token& start = peek();
    auto type = parse_type();
    if (!type || !at_word()) {
      if (!at_end() && !peek().is_punct("}")) {
        warn(start, "unrecognized member declaration starting at '" + start.text + "'");
        recover();
      }
      return;
    }
    std::string name = peek().text;
    advance();
    if (peek().is_punct("(")) {
      method_rest(qname, name);
      return;
    }
    field_declarators(qname, name);
  }

  void field_declarators(const std::string& qname, std::string name) {
    for (;;) {
      add(IdentifierKind::Attribute, qname + "." + name);
      while (peek().is_punct("[") && peek(1).is_punct("]")) {
        advance();
        advance();
      }
      if (accept("=")) skip_initializer();
      if (accept(",")) {
        if (!at_word()) {
          warn(peek(), "expected a field name after ','");
          recover();
          return;
        }
        name = peek().text;
        advance();
        continue;
      }
      if (accept(";")) return;
      if (!peek().is_punct("}")) {
        warn(peek(), "expected ';' after field '" + name + "'");
        recover();
      }
      return;
    }
  }

  std::size_t matching_paren(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < toks_.size(); ++i) {
      if (toks_[i]->is_punct("(")) ++depth;
      else if (toks_[i]->is_punct(")") && --depth == 0) return i;
    }
    return toks_.size();
  }

  // At '(' of a method or constructor.
  void method_rest(const std::string& qname, const std::string& name) {
    const Token& open = peek();
    const std::size_t close = matching_paren(pos_);
    if (close >= toks_.size()) {
      truncated_ = true;
      error(open, "unbalanced '(' in the parameter list of " + name);
      return;
    }
    advance();
    std::vector<std::string> params;
    while (pos_ < close) {
      skip_modifiers();
      auto type = parse_type();
      if (!type) {
        warn(peek(), "unrecognized parameter in " + name);
        break;
      }
      if (peek().is_keyword("this")) {  // receiver parameter
        advance();
      } else {
        if (at_word()) advance();
        while (peek().is_punct("[") && peek(1).is_punct("]")) {
          advance();
          advance();
          *type += "[]";
        }
        params.push_back(std::move(*type));
      }
      if (!accept(",")) break;
    }
    pos_ = close + 1;

    std::string signature;
    for (const auto& p : params) {
      if (!signature.empty()) signature += ',';
      signature += p;
    }
    add(IdentifierKind::Method, qname + "." + name + "(" + signature + ")");

    while (peek().is_punct("[") && peek(1).is_punct("]")) {
      advance();
      advance();
    }
    if (peek().is_keyword("throws")) {
      advance();
      parse_type_list();
    }
    if (peek().is_keyword("default")) {  // annotation element default value
      advance();
      skip_initializer();
    }
    if (accept(";")) return;
    if (peek().is_punct("{")) {
      skip_balanced();
      return;
    }
    if (!peek().is_punct("}")) {
      warn(peek(), "expected a body or ';' after " + name + "(...)");
      recover();
    }
  }

  std::filesystem::path file_;
  std::vector<const Token*> toks_;
  Token eof_{};
  std::size_t pos_ = 0;
  bool truncated_ = false;
  UnitParse result_;
};

inline std::size_t count_nonblank_lines(std::string_view text) {
  std::size_t count = 0;
  bool content = false;
  for (char c : text) {
    if (c == '\n') {
      if (content) ++count;
      content = false;
    } else if (c != ' ' && c != '\t' && c != '\r' && c != '\f') {
      content = true;
    }
  }
  return count + (content ? 1 : 0);
}

}  // namespace parser_detail

/// Extracts the declarations of one source file.
inline UnitParse parse_compilation_unit(const std::vector<Token>& tokens,
                                        const std::filesystem::path& file) {
  return parser_detail::UnitParser(tokens, file).run();
}

/// Non-blank lines; a leading byte-order mark is not content.
inline std::size_t count_loc(std::string_view source) {
  if (source.substr(0, 3) == "\xEF\xBB\xBF") source.remove_prefix(3);
  return parser_detail::count_nonblank_lines(source);
}

struct VariantExtraction {
  CodeModel model;
  std::vector<ParseDiagnostic> diagnostics;
};

/// Parses every `.java` file under `root`, in lexicographic path order.
/// Throws Error when `root` cannot be read.
inline VariantExtraction extract_variant(const std::filesystem::path& root,
                                         const std::string& variant_name) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw Error("cannot read source directory '" + root.string() + "'");

  std::vector<fs::path> files;
  VariantExtraction out;
  out.model.variant_name = variant_name;
  fs::recursive_directory_iterator it(root, fs::directory_options::none, ec);
  if (ec)
    throw Error("cannot read source directory '" + root.string() +
                "': " + ec.message());
  for (fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) {
      out.diagnostics.push_back({Severity::Warning,
                                 "cannot list directory: " + ec.message(),
                                 it->path(), 0, 0});
      ec.clear();
      continue;
    }
    std::error_code file_ec;
    if (it->is_regular_file(file_ec) && it->path().extension() == ".java")
      files.push_back(it->path());
  }
  std::sort(files.begin(), files.end(), [&](const fs::path& a, const fs::path& b) {
    return a.lexically_relative(root).generic_string() <
           b.lexically_relative(root).generic_string();
  });

  struct FileResult {
    bool readable = false;
    std::size_t loc = 0;
    UnitParse unit;
  };
  auto parse_file = [](const fs::path& path) {
    FileResult r;
    std::ifstream in(path, std::ios::binary);
    if (!in) return r;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return r;
    const std::string text = buf.str();
    r.readable = true;
    r.loc = count_loc(text);
    std::vector<ParseDiagnostic> lex_diags;
    auto tokens = tokenize(text, lex_diags);
    r.unit = parse_compilation_unit(tokens, path);
    for (auto& d : lex_diags) d.file = path;
    r.unit.diagnostics.insert(r.unit.diagnostics.begin(), lex_diags.begin(),
                              lex_diags.end());
    return r;
  };

  // Files are split into contiguous chunks; results are merged in path order.
  std::vector<FileResult> results(files.size());
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, 8);
  const std::size_t chunk = (files.size() + workers - 1) / std::max<std::size_t>(workers, 1);
  std::vector<std::future<void>> jobs;
  for (std::size_t begin = 0; begin < files.size(); begin += chunk) {
    const std::size_t end = std::min(files.size(), begin + chunk);
    jobs.push_back(std::async(std::launch::async, [&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) results[i] = parse_file(files[i]);
    }));
  }
  for (auto& job : jobs) job.get();

  for (std::size_t i = 0; i < files.size(); ++i) {
    auto& r = results[i];
    if (!r.readable) {
      out.diagnostics.push_back(
          {Severity::Warning, "cannot read file; skipped", files[i], 0, 0});
      continue;
    }
    out.model.source_stats.loc += r.loc;
    out.model.identifiers.merge(r.unit.contribution.identifiers);
    out.model.inheritance.merge(r.unit.contribution.inheritance);
    std::move(r.unit.diagnostics.begin(), r.unit.diagnostics.end(),
              std::back_inserter(out.diagnostics));
  }
  refresh_stats(out.model);
  validate(out.model);
  return out;
}

}  // namespace idmap
