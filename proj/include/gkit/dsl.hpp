#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gkit/expr.hpp"
#include "gkit/greenberg.hpp"

namespace gkit {

struct SessionConfig {
  uint64_t seed = 42;
  size_t stage = 0;             // default for `greenberg`
  std::optional<size_t> n;      // default for `units ppow-solve`
  size_t jobs = 1;
  GreenbergLimits limits;
};

struct Statement {
  enum class Kind { Base, Ring, Scheme, Elem, Command };

  Kind kind = Kind::Command;
  int line = 1;
  int column = 1;
  std::string name;  // declared identifier, or the command word

  // base { p = ..; pbasis = [..]; etale = ..; }
  uint32_t p = 2;
  std::vector<std::string> pbasis;
  ExprPtr etale;

  // ring A = unramified(m) | eisenstein(m, E = ..)
  bool eisenstein = false;
  size_t level = 0;
  ExprPtr polynomial;

  // scheme X over A { vars [..]; eqs [..]; }   /   elem u in A = ..
  std::string ring;
  std::vector<std::string> vars;
  std::vector<ExprPtr> exprs;

  // commands: `witt add a b --opt v`
  std::string sub;
  std::string target;  // scheme name for greenberg / point
  std::map<std::string, Lexer::Token> options;
  std::string text;    // source line, for error reports
};

struct Script {
  std::vector<Statement> statements;

  // ParseError on syntax errors, UnknownIdentifier on references to
  // undeclared rings or schemes.
  static Script parse(std::string_view source);
};

// Runs the script; every command writes one JSON document (one line) to
// `out`, or to the file named by its --out option. On the first failure an
// error object is written and 1 is returned; otherwise 0.
int run(const Script& script, const SessionConfig& config, std::ostream& out);

// parse + run, with parse errors reported as JSON too.
int run_source(std::string_view source, const SessionConfig& config, std::ostream& out);

}  // namespace gkit
