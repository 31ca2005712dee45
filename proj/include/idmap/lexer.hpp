#pragma once

#include <algorithm>
#include <iterator>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace idmap {

enum class TokenKind { Word, Keyword, Punct, Literal, Number, Comment, Whitespace };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;    // 1-based
  std::size_t column;  // 1-based, in bytes

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
  bool trivia() const {
    return kind == TokenKind::Comment || kind == TokenKind::Whitespace;
  }
};

enum class Severity { Warning, Error };

struct ParseDiagnostic {
  Severity severity;
  std::string message;
  std::filesystem::path file;
  std::size_t line = 0;
  std::size_t column = 0;
};

inline std::string format_diagnostic(const ParseDiagnostic& d) {
  std::string out = d.file.generic_string();
  if (d.line) out += ":" + std::to_string(d.line) + ":" + std::to_string(d.column);
  out += d.severity == Severity::Error ? ": error: " : ": warning: ";
  out += d.message;
  return out;
}

namespace lexer_detail {

inline constexpr std::string_view kKeywords[] = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch",
    "char", "class", "const", "continue", "default", "do", "double",
    "else", "enum", "extends", "final", "finally", "float", "for", "goto",
    "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return",
    "short", "static", "strictfp", "super", "switch", "synchronized", "this",
    "throw", "throws", "transient", "try", "void", "volatile", "while",
    "true", "false", "null"};

inline bool is_keyword(std::string_view word) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), word) !=
         std::end(kKeywords);
}

// Bytes >= 0x80 belong to UTF-8 sequences; Java allows Unicode letters in
// identifiers, so they are treated as word characters.
inline bool word_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || c >= 0x80;
}
inline bool word_char(unsigned char c) {
  return word_start(c) || (c >= '0' && c <= '9');
}
inline bool digit(unsigned char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view src, std::vector<ParseDiagnostic>& diags)
      : src_(src), diags_(diags) {}

  std::vector<Token> run() {
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") emit(TokenKind::Whitespace, 3);
    while (pos_ < src_.size()) step();
    return std::move(tokens_);
  }

 private:
  unsigned char at(std::size_t i) const {
    return i < src_.size() ? static_cast<unsigned char>(src_[i]) : 0;
  }

  std::size_t line_end(std::size_t from) const {
    auto nl = src_.find('\n', from);
    return nl == std::string_view::npos ? src_.size() : nl;
  }

  void step() {
    const unsigned char c = at(pos_);
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
      std::size_t end = pos_;
      while (end < src_.size() && std::string_view(" \t\r\n\f").find(src_[end]) !=
                                      std::string_view::npos)
        ++end;
      emit(TokenKind::Whitespace, end - pos_);
    } else if (c == '/' && at(pos_ + 1) == '/') {
      emit(TokenKind::Comment, line_end(pos_) - pos_);
    } else if (c == '/' && at(pos_ + 1) == '*') {
      auto close = src_.find("*/", pos_ + 2);
      if (close == std::string_view::npos) {
        unterminated("unterminated block comment", TokenKind::Comment);
      } else {
        emit(TokenKind::Comment, close + 2 - pos_);
      }
    } else if (c == '"' && at(pos_ + 1) == '"' && at(pos_ + 2) == '"') {
      auto close = src_.find("\"\"\"", pos_ + 3);
      while (close != std::string_view::npos && escaped(close))
        close = src_.find("\"\"\"", close + 1);
      if (close == std::string_view::npos) {
        unterminated("unterminated text block", TokenKind::Literal);
      } else {
        emit(TokenKind::Literal, close + 3 - pos_);
      }
    } else if (c == '"' || c == '\'') {
      quoted(static_cast<char>(c));
    } else if (word_start(c)) {
      std::size_t end = pos_;
      while (end < src_.size() && word_char(at(end))) ++end;
      auto word = src_.substr(pos_, end - pos_);
      emit(is_keyword(word) ? TokenKind::Keyword : TokenKind::Word, end - pos_);
    } else if (digit(c) || (c == '.' && digit(at(pos_ + 1)))) {
      number();
    } else if (c == '.' && at(pos_ + 1) == '.' && at(pos_ + 2) == '.') {
      emit(TokenKind::Punct, 3);
    } else if (c == ':' && at(pos_ + 1) == ':') {
      emit(TokenKind::Punct, 2);
    } else if (c == '-' && at(pos_ + 1) == '>') {
      emit(TokenKind::Punct, 2);
    } else {
      emit(TokenKind::Punct, 1);
    }
  }

  bool escaped(std::size_t quote_pos) const {
    std::size_t backslashes = 0;
    while (quote_pos > backslashes && src_[quote_pos - backslashes - 1] == '\\')
      ++backslashes;
    return backslashes % 2 == 1;
  }

  void quoted(char quote) {
    std::size_t i = pos_ + 1;
    while (i < src_.size()) {
      char ch = src_[i];
      if (ch == '\\') {
        if (at(i + 1) == '\n') break;
        i += 2;
        continue;
      }
      if (ch == '\n') break;
      if (ch == quote) {
        emit(TokenKind::Literal, i + 1 - pos_);
        return;
      }
      ++i;
    }
    unterminated(quote == '"' ? "unterminated string literal"
                              : "unterminated character literal",
                 TokenKind::Literal);
  }

  void number() {
    std::size_t end = pos_;
    while (end < src_.size()) {
      unsigned char ch = at(end);
      if (word_char(ch) || ch == '.') {
        ++end;
      } else if ((ch == '+' || ch == '-') && end > pos_ &&
                 (at(end - 1) == 'e' || at(end - 1) == 'E' ||
                  at(end - 1) == 'p' || at(end - 1) == 'P') &&
                 !(at(pos_) == '0' && (at(pos_ + 1) == 'x' || at(pos_ + 1) == 'X') &&
                   (at(end - 1) == 'e' || at(end - 1) == 'E'))) {
        ++end;
      } else {
        break;
      }
    }
    emit(TokenKind::Number, end - pos_);
  }

  // The broken token swallows the rest of its line; lexing resumes on the
  // next one.
  void unterminated(const char* message, TokenKind kind) {
    diags_.push_back({Severity::Error, message, {}, line_, column_});
    emit(kind, line_end(pos_) - pos_);
  }

  void emit(TokenKind kind, std::size_t length) {
    auto text = src_.substr(pos_, length);
    tokens_.push_back({kind, std::string(text), line_, column_});
    for (char ch : text) {
      if (ch == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
    pos_ += length;
  }

  std::string_view src_;
  std::vector<ParseDiagnostic>& diags_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace lexer_detail

/// Lossless tokenization: concatenating the token texts reproduces `source`.
/// Comments and literals are single tokens. Diagnostics for unterminated
/// literals and comments are appended to `diagnostics`.
inline std::vector<Token> tokenize(std::string_view source,
                                   std::vector<ParseDiagnostic>& diagnostics) {
  return lexer_detail::Lexer(source, diagnostics).run();
}

inline std::vector<Token> tokenize(std::string_view source) {
  std::vector<ParseDiagnostic> ignored;
  return tokenize(source, ignored);
}

}  // namespace idmap
