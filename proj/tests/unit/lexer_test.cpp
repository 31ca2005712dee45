#include <gtest/gtest.h>

#include "idmap/lexer.hpp"
#include "test_support.hpp"

using namespace idmap;

namespace {

std::string concat(const std::vector<Token>& tokens) {
  std::string out;
  for (const auto& t : tokens) out += t.text;
  return out;
}

std::vector<Token> significant(const std::vector<Token>& tokens) {
  std::vector<Token> out;
  for (const auto& t : tokens)
    if (!t.trivia()) out.push_back(t);
  return out;
}

}  // namespace

TEST(Lexer, ClassifiesTokens) {
  auto toks = significant(tokenize("public class A { int x = 0x1F; }"));
  ASSERT_EQ(toks.size(), 10u);
  EXPECT_TRUE(toks[0].is_keyword("public"));
  EXPECT_TRUE(toks[1].is_keyword("class"));
  EXPECT_EQ(toks[2].kind, TokenKind::Word);
  EXPECT_TRUE(toks[3].is_punct("{"));
  EXPECT_EQ(toks[7].kind, TokenKind::Number);
  EXPECT_EQ(toks[7].text, "0x1F");
}

TEST(Lexer, BracesInsideCommentsAndLiteralsStayInside) {
  auto src = "/* { */ String s = \"}{\"; char c = '{'; // }\n";
  auto toks = tokenize(src);
  for (const auto& t : toks)
    if (t.kind == TokenKind::Punct) {
      EXPECT_NE(t.text, "{");
      EXPECT_NE(t.text, "}");
    }
  EXPECT_EQ(concat(toks), src);
}

TEST(Lexer, EscapedQuotes) {
  auto toks = significant(tokenize(R"(x = "a\"b\\"; y = '\'';)"));
  ASSERT_GE(toks.size(), 7u);
  EXPECT_EQ(toks[2].text, R"("a\"b\\")");
  EXPECT_EQ(toks[6].text, R"('\'')");
}

TEST(Lexer, TextBlockIsOneLiteral) {
  auto src = "s = \"\"\"\n  { \"quoted\" }\n  \"\"\";";
  auto toks = significant(tokenize(src));
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[2].kind, TokenKind::Literal);
  EXPECT_EQ(toks[3].text, ";");
}

TEST(Lexer, MultiCharacterPunctuation) {
  auto toks = significant(tokenize("f(String... a) -> System.out::println"));
  std::vector<std::string> texts;
  for (const auto& t : toks) texts.push_back(t.text);
  EXPECT_NE(std::find(texts.begin(), texts.end(), "..."), texts.end());
  EXPECT_NE(std::find(texts.begin(), texts.end(), "->"), texts.end());
  EXPECT_NE(std::find(texts.begin(), texts.end(), "::"), texts.end());
}

TEST(Lexer, NumbersWithExponents) {
  auto toks = significant(tokenize("3.303e+23 6.67E-11 .5f 0x1.8p-3 1_000L"));
  ASSERT_EQ(toks.size(), 5u);
  for (const auto& t : toks) EXPECT_EQ(t.kind, TokenKind::Number) << t.text;
}

TEST(Lexer, TracksLinesAndColumns) {
  auto toks = significant(tokenize("a\n  bb\n\tc"));
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[1].line, 2u);
  EXPECT_EQ(toks[1].column, 3u);
  EXPECT_EQ(toks[2].line, 3u);
  EXPECT_EQ(toks[2].column, 2u);
}

TEST(Lexer, UnterminatedStringRecoversOnNextLine) {
  std::vector<ParseDiagnostic> diags;
  auto src = "String s = \"open {\nint x;\n";
  auto toks = tokenize(src, diags);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].severity, Severity::Error);
  EXPECT_EQ(diags[0].line, 1u);
  EXPECT_EQ(diags[0].column, 12u);
  EXPECT_EQ(concat(toks), src);
  auto sig = significant(toks);
  ASSERT_GE(sig.size(), 3u);
  EXPECT_TRUE(sig[sig.size() - 3].is_keyword("int"));
}

TEST(Lexer, UnterminatedBlockCommentAndCharLiteral) {
  std::vector<ParseDiagnostic> diags;
  tokenize("/* never closed\nclass A {}", diags);
  tokenize("char c = 'x\n", diags);
  ASSERT_EQ(diags.size(), 2u);
  EXPECT_NE(diags[0].message.find("block comment"), std::string::npos);
  EXPECT_NE(diags[1].message.find("character literal"), std::string::npos);
}

TEST(Lexer, ByteOrderMarkIsTrivia) {
  auto toks = tokenize("\xEF\xBB\xBFpackage p;");
  ASSERT_FALSE(toks.empty());
  EXPECT_EQ(toks[0].kind, TokenKind::Whitespace);
  EXPECT_TRUE(significant(toks)[0].is_keyword("package"));
}

TEST(Lexer, LosslessOverFixtureSources) {
  std::size_t files = 0;
  for (const auto& e :
       std::filesystem::recursive_directory_iterator(testing_support::fixture(""))) {
    if (e.path().extension() != ".java") continue;
    auto src = testing_support::read_text(e.path());
    std::vector<ParseDiagnostic> diags;
    EXPECT_EQ(concat(tokenize(src, diags)), src) << e.path();
    EXPECT_TRUE(diags.empty()) << e.path();
    ++files;
  }
  EXPECT_GE(files, 80u);
}

TEST(Lexer, DiagnosticFormatting) {
  ParseDiagnostic d{Severity::Warning, "odd", "src/A.java", 3, 7};
  EXPECT_EQ(format_diagnostic(d), "src/A.java:3:7: warning: odd");
}
