#include "gkit/expr.hpp"

#include <cctype>

#include "gkit/error.hpp"

namespace gkit {

Lexer::Lexer(std::string_view src, int line, int column) : src_(src), line_(line), column_(column) {
  advance();
}

Lexer::Token Lexer::next() {
  Token t = tok_;
  advance();
  return t;
}

void Lexer::advance() {
  auto bump = [&] {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  };
  while (pos_ < src_.size()) {
    const char c = src_[pos_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump();
    } else if (c == '#' || (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')) {
      while (pos_ < src_.size() && src_[pos_] != '\n') bump();
    } else {
      break;
    }
  }
  tok_ = Token{Tok::End, "", line_, column_};
  if (pos_ >= src_.size()) return;
  const char c = src_[pos_];
  const size_t start = pos_;
  if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '.'))
      bump();
    tok_.kind = Tok::Ident;
  } else if (std::isdigit(static_cast<unsigned char>(c))) {
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
    tok_.kind = Tok::Number;
  } else if (c == '"') {
    bump();
    while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') bump();
    if (pos_ >= src_.size() || src_[pos_] != '"') {
      throw ParseError(tok_.line, tok_.column, "closing '\"'", "unterminated string literal");
    }
    bump();
    tok_.kind = Tok::String;
    tok_.text = std::string(src_.substr(start + 1, pos_ - start - 2));
    return;
  } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
    bump();
    bump();
    tok_.kind = Tok::Punct;
  } else if (std::string_view("+-*/^()[]{},;=:<>").find(c) != std::string_view::npos) {
    bump();
    tok_.kind = Tok::Punct;
  } else {
    throw ParseError(line_, column_, "a token",
                     std::string("unexpected character '") + (std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "?") + "'");
  }
  tok_.text = std::string(src_.substr(start, pos_ - start));
}

void Lexer::error(const std::string& expected) const {
  const std::string got = tok_.kind == Tok::End ? "end of input" : "'" + tok_.text + "'";
  throw ParseError(tok_.line, tok_.column, expected,
                   "expected " + expected + " but found " + got + " at line " + std::to_string(tok_.line) +
                       ", column " + std::to_string(tok_.column));
}

Lexer::Token Lexer::expect(std::string_view punct) {
  if (!at(punct)) error("'" + std::string(punct) + "'");
  return next();
}

Lexer::Token Lexer::expect_ident() {
  if (tok_.kind != Tok::Ident) error("identifier");
  return next();
}

uint64_t Lexer::expect_uint() {
  if (tok_.kind != Tok::Number) error("non-negative integer");
  if (tok_.text.size() > 9) error("integer below 10^9");
  return std::stoull(next().text);
}

namespace {

ExprPtr node(Expr::Kind kind, const Lexer::Token& at, std::vector<ExprPtr> args = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->line = at.line;
  e->column = at.column;
  e->args = std::move(args);
  return e;
}

ExprPtr parse_unary(Lexer& lex, int depth);

ExprPtr parse_atom(Lexer& lex, int depth) {
  const auto tok = lex.peek();
  if (tok.kind == Lexer::Tok::Number) {
    lex.next();
    auto e = std::make_shared<Expr>(*node(Expr::Kind::Number, tok));
    e->text = tok.text;
    return e;
  }
  if (tok.kind == Lexer::Tok::Ident) {
    lex.next();
    if (lex.at("(")) {
      lex.next();
      std::vector<ExprPtr> args;
      if (!lex.at(")")) {
        args.push_back(parse_expr(lex, depth + 1));
        while (lex.at(",")) {
          lex.next();
          args.push_back(parse_expr(lex, depth + 1));
        }
      }
      lex.expect(")");
      auto e = std::make_shared<Expr>(*node(Expr::Kind::Call, tok, std::move(args)));
      e->text = tok.text;
      return e;
    }
    auto e = std::make_shared<Expr>(*node(Expr::Kind::Name, tok));
    e->text = tok.text;
    return e;
  }
  if (lex.at("(")) {
    lex.next();
    std::vector<ExprPtr> items{parse_expr(lex, depth + 1)};
    while (lex.at(",")) {
      lex.next();
      items.push_back(parse_expr(lex, depth + 1));
    }
    lex.expect(")");
    if (items.size() == 1) return items[0];
    return node(Expr::Kind::Tuple, tok, std::move(items));
  }
  lex.error("number, identifier or '('");
}

ExprPtr parse_power(Lexer& lex, int depth) {
  ExprPtr base = parse_atom(lex, depth);
  if (lex.at("^")) {
    const auto op = lex.next();
    auto e = std::make_shared<Expr>(*node(Expr::Kind::Pow, op, {base}));
    if (lex.peek().kind == Lexer::Tok::Number && lex.peek().text.size() > 5) lex.error("exponent below 100000");
    e->exponent = lex.expect_uint();
    if (e->exponent >= 100000) lex.error("exponent below 100000");
    return e;
  }
  return base;
}

ExprPtr parse_unary(Lexer& lex, int depth) {
  if (depth > kMaxExprDepth) lex.error("shallower nesting (depth limit " + std::to_string(kMaxExprDepth) + ")");
  if (lex.at("-")) {
    const auto op = lex.next();
    return node(Expr::Kind::Neg, op, {parse_unary(lex, depth + 1)});
  }
  return parse_power(lex, depth);
}

ExprPtr parse_term(Lexer& lex, int depth) {
  ExprPtr lhs = parse_unary(lex, depth);
  while (lex.at("*") || lex.at("/")) {
    const auto op = lex.next();
    lhs = node(op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, op, {lhs, parse_unary(lex, depth)});
  }
  return lhs;
}

}  // namespace

ExprPtr parse_expr(Lexer& lex, int depth) {
  if (depth > kMaxExprDepth) lex.error("shallower nesting (depth limit " + std::to_string(kMaxExprDepth) + ")");
  ExprPtr lhs = parse_term(lex, depth);
  while (lex.at("+") || lex.at("-")) {
    const auto op = lex.next();
    lhs = node(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, op, {lhs, parse_term(lex, depth)});
  }
  return lhs;
}

ExprPtr parse_expr(std::string_view text) {
  Lexer lex(text);
  ExprPtr e = parse_expr(lex);
  if (lex.peek().kind != Lexer::Tok::End) lex.error("end of expression");
  return e;
}

Elem eval_elem(const Algebra& a, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: {
      if (e.text.size() > 18) {
        int64_t r = 0;
        for (char c : e.text) r = (r * 10 + (c - '0')) % a.p();
        return a.from_int(r);
      }
      return a.from_int(static_cast<int64_t>(std::stoll(e.text) % a.p()));
    }
    case Expr::Kind::Name: {
      const auto& names = a.variable_names();
      for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == e.text) return a.from_poly(FpPoly::variable(a.p(), i));
      fail(ErrorCode::UnknownIdentifier, "unknown identifier '" + e.text + "' at line " +
                                             std::to_string(e.line) + ", column " + std::to_string(e.column));
    }
    case Expr::Kind::Call:
      fail(ErrorCode::TypeMismatch, "function '" + e.text + "' is not available in a field element");
    case Expr::Kind::Tuple:
      fail(ErrorCode::TypeMismatch, "tuple where a single element was expected");
    case Expr::Kind::Neg: return a.neg(eval_elem(a, *e.args[0]));
    case Expr::Kind::Add: return a.add(eval_elem(a, *e.args[0]), eval_elem(a, *e.args[1]));
    case Expr::Kind::Sub: return a.sub(eval_elem(a, *e.args[0]), eval_elem(a, *e.args[1]));
    case Expr::Kind::Mul: return a.mul(eval_elem(a, *e.args[0]), eval_elem(a, *e.args[1]));
    case Expr::Kind::Div: return a.div(eval_elem(a, *e.args[0]), eval_elem(a, *e.args[1]));
    case Expr::Kind::Pow: return a.pow(eval_elem(a, *e.args[0]), e.exponent);
  }
  fail(ErrorCode::InternalError, "unhandled expression kind");
}

Elem parse_elem(const Algebra& a, std::string_view text) { return eval_elem(a, *parse_expr(text)); }

}  // namespace gkit
