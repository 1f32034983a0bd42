#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gkit/algebra.hpp"

namespace gkit {

// Expression tree shared by element literals and the script language.
struct Expr {
  enum class Kind { Number, Name, Call, Tuple, Neg, Add, Sub, Mul, Div, Pow };

  Kind kind;
  std::string text;  // Number digits or Name/Call identifier
  std::vector<std::shared_ptr<const Expr>> args;
  uint64_t exponent = 0;  // Pow
  int line = 1;
  int column = 1;
};

using ExprPtr = std::shared_ptr<const Expr>;

// Hand-written lexer shared with the script parser.
class Lexer {
 public:
  enum class Tok { End, Ident, Number, Punct, String };
  struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int column = 1;
  };

  explicit Lexer(std::string_view src, int line = 1, int column = 1);

  const Token& peek() const { return tok_; }
  Token next();
  bool at(std::string_view punct) const { return tok_.kind == Tok::Punct && tok_.text == punct; }
  bool at_ident(std::string_view word) const { return tok_.kind == Tok::Ident && tok_.text == word; }
  Token expect(std::string_view punct);
  Token expect_ident();
  uint64_t expect_uint();
  [[noreturn]] void error(const std::string& expected) const;

 private:
  void advance();

  std::string_view src_;
  size_t pos_ = 0;
  int line_;
  int column_;
  Token tok_;
};

inline constexpr int kMaxExprDepth = 200;

// expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
// unary := '-' unary | power ; power := atom ('^' uint)? ;
// atom := number | ident | ident '(' args ')' | '(' expr (',' expr)* ')'
ExprPtr parse_expr(Lexer& lex, int depth = 0);
ExprPtr parse_expr(std::string_view text);

// Evaluates an expression made of integers, variable names of `a` and the
// operators + - * / ^.
Elem eval_elem(const Algebra& a, const Expr& e);
Elem parse_elem(const Algebra& a, std::string_view text);

}  // namespace gkit
