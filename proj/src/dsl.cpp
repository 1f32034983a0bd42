#include "gkit/dsl.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "gkit/error.hpp"
#include "gkit/json_io.hpp"
#include "gkit/selftest.hpp"
#include "gkit/units.hpp"

namespace gkit {

namespace {

const std::set<std::string> kCommands{"witt", "cohen", "greenberg", "point", "units", "selftest"};

std::string at_position(int line, int column) {
  return " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
}

[[noreturn]] void unknown(const std::string& what, const std::string& name, int line, int column) {
  fail(ErrorCode::UnknownIdentifier, "unknown " + what + " '" + name + "'" + at_position(line, column));
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {
    std::string line;
    std::istringstream is{std::string(src)};
    while (std::getline(is, line)) lines_.push_back(line);
  }

  Script parse() {
    Script s;
    while (lex_.peek().kind != Lexer::Tok::End) {
      if (lex_.at(";")) {
        lex_.next();
        continue;
      }
      const auto tok = lex_.peek();
      if (tok.kind != Lexer::Tok::Ident) lex_.error("a statement");
      if (tok.text == "base") {
        s.statements.push_back(parse_base());
      } else if (tok.text == "ring") {
        s.statements.push_back(parse_ring());
      } else if (tok.text == "scheme") {
        s.statements.push_back(parse_scheme());
      } else if (tok.text == "elem") {
        s.statements.push_back(parse_elem_decl());
      } else if (kCommands.count(tok.text)) {
        s.statements.push_back(parse_command());
      } else {
        lex_.error("base, ring, scheme, elem or a command");
      }
    }
    return s;
  }

 private:
  Statement start(Statement::Kind kind) {
    Statement st;
    st.kind = kind;
    const auto tok = lex_.next();
    st.line = tok.line;
    st.column = tok.column;
    return st;
  }

  void require_base(const Statement& st) {
    if (!have_base_) throw ParseError(st.line, st.column, "a base declaration first", "no base declared before use");
  }

  Statement parse_base() {
    Statement st = start(Statement::Kind::Base);
    if (have_base_) throw ParseError(st.line, st.column, "a single base declaration", "base declared twice");
    lex_.expect("{");
    bool have_p = false;
    while (!lex_.at("}")) {
      const auto key = lex_.peek();
      if (lex_.at_ident("p")) {
        lex_.next();
        lex_.expect("=");
        const uint64_t p = lex_.expect_uint();
        if (p < 2 || p > 1000) throw ParseError(key.line, key.column, "a prime below 1000", "bad prime");
        st.p = static_cast<uint32_t>(p);
        have_p = true;
      } else if (lex_.at_ident("pbasis")) {
        lex_.next();
        lex_.expect("=");
        lex_.expect("[");
        if (!lex_.at("]")) {
          st.pbasis.push_back(lex_.expect_ident().text);
          while (lex_.at(",")) {
            lex_.next();
            st.pbasis.push_back(lex_.expect_ident().text);
          }
        }
        lex_.expect("]");
      } else if (lex_.at_ident("etale")) {
        lex_.next();
        lex_.expect("=");
        st.etale = parse_expr(lex_);
      } else {
        lex_.error("p, pbasis or etale");
      }
      lex_.expect(";");
    }
    lex_.expect("}");
    if (!have_p) throw ParseError(st.line, st.column, "p = <prime>", "base declaration without p");
    have_base_ = true;
    return st;
  }

  Statement parse_ring() {
    Statement st = start(Statement::Kind::Ring);
    require_base(st);
    st.name = lex_.expect_ident().text;
    lex_.expect("=");
    if (lex_.at_ident("unramified")) {
      lex_.next();
      lex_.expect("(");
      st.level = lex_.expect_uint();
      lex_.expect(")");
    } else if (lex_.at_ident("eisenstein")) {
      lex_.next();
      st.eisenstein = true;
      lex_.expect("(");
      st.level = lex_.expect_uint();
      lex_.expect(",");
      if (!lex_.at_ident("E")) lex_.error("'E'");
      lex_.next();
      lex_.expect("=");
      st.polynomial = parse_expr(lex_);
      lex_.expect(")");
    } else {
      lex_.error("unramified(m) or eisenstein(m, E = ...)");
    }
    if (st.level == 0) throw ParseError(st.line, st.column, "a positive level", "ring level must be positive");
    lex_.expect(";");
    rings_.insert(st.name);
    return st;
  }

  void require_ring(const std::string& name, int line, int column) {
    if (!rings_.count(name)) unknown("ring", name, line, column);
  }

  Statement parse_scheme() {
    Statement st = start(Statement::Kind::Scheme);
    require_base(st);
    st.name = lex_.expect_ident().text;
    if (!lex_.at_ident("over")) lex_.error("'over'");
    lex_.next();
    const auto ring = lex_.expect_ident();
    require_ring(ring.text, ring.line, ring.column);
    st.ring = ring.text;
    lex_.expect("{");
    if (!lex_.at_ident("vars")) lex_.error("'vars'");
    lex_.next();
    lex_.expect("[");
    if (!lex_.at("]")) {
      st.vars.push_back(lex_.expect_ident().text);
      while (lex_.at(",")) {
        lex_.next();
        st.vars.push_back(lex_.expect_ident().text);
      }
    }
    lex_.expect("]");
    lex_.expect(";");
    if (!lex_.at_ident("eqs")) lex_.error("'eqs'");
    lex_.next();
    lex_.expect("[");
    if (!lex_.at("]")) {
      st.exprs.push_back(parse_expr(lex_));
      while (lex_.at(",")) {
        lex_.next();
        st.exprs.push_back(parse_expr(lex_));
      }
    }
    lex_.expect("]");
    lex_.expect(";");
    lex_.expect("}");
    if (lex_.at(";")) lex_.next();
    schemes_.insert(st.name);
    return st;
  }

  Statement parse_elem_decl() {
    Statement st = start(Statement::Kind::Elem);
    require_base(st);
    st.name = lex_.expect_ident().text;
    if (lex_.at_ident("in")) {
      lex_.next();
      const auto ring = lex_.expect_ident();
      require_ring(ring.text, ring.line, ring.column);
      st.ring = ring.text;
    }
    lex_.expect("=");
    st.exprs.push_back(parse_expr(lex_));
    lex_.expect(";");
    return st;
  }

  Statement parse_command() {
    Statement st = start(Statement::Kind::Command);
    st.name = lexeme_of(st);
    if (st.line >= 1 && static_cast<size_t>(st.line) <= lines_.size()) st.text = trim(lines_[st.line - 1]);
    const int line = st.line;
    auto same_line = [&] {
      return lex_.peek().kind != Lexer::Tok::End && lex_.peek().line == line && !lex_.at(";");
    };
    if (st.name != "selftest") require_base(st);
    if (st.name == "witt" || st.name == "cohen" || st.name == "point" || st.name == "units") {
      if (!same_line()) lex_.error("a subcommand");
      st.sub = lex_.expect_ident().text;
      if (lex_.at("-") && same_line()) {
        lex_.next();
        st.sub += "-" + lex_.expect_ident().text;
      }
    }
    if (st.name == "greenberg" || st.name == "point") {
      if (!same_line()) lex_.error("a scheme name");
      const auto target = lex_.expect_ident();
      if (!schemes_.count(target.text)) unknown("scheme", target.text, target.line, target.column);
      st.target = target.text;
    }
    while (same_line()) {
      if (lex_.at("--")) {
        lex_.next();
        const auto key = lex_.expect_ident();
        if (!same_line()) lex_.error("a value for --" + key.text);
        const auto value = lex_.next();
        if (value.kind == Lexer::Tok::Punct) {
          throw ParseError(value.line, value.column, "a value for --" + key.text, "option without a value");
        }
        st.options[key.text] = value;
      } else {
        st.exprs.push_back(parse_expr(lex_));
      }
    }
    if (lex_.at(";")) lex_.next();
    return st;
  }

  std::string lexeme_of(const Statement& st) {
    const std::string& l = lines_.at(st.line - 1);
    size_t i = st.column - 1, j = i;
    while (j < l.size() && (std::isalnum(static_cast<unsigned char>(l[j])) || l[j] == '_')) ++j;
    return l.substr(i, j - i);
  }

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  Lexer lex_;
  std::vector<std::string> lines_;
  bool have_base_ = false;
  std::set<std::string> rings_, schemes_;
};

// ---------------------------------------------------------------------------

struct Value {
  std::string ring;  // empty for an element of Q
  Elem field;
  BaseElem base;
};

struct Scheme {
  std::string ring;
  AffinePresentation pres;
};

using PolyMap = std::map<std::vector<uint32_t>, BaseElem>;

class Session {
 public:
  Session(const SessionConfig& config, std::ostream& out) : config_(config), out_(out) {}

  void execute(const Statement& st) {
    switch (st.kind) {
      case Statement::Kind::Base: declare_base(st); break;
      case Statement::Kind::Ring: declare_ring(st); break;
      case Statement::Kind::Scheme: declare_scheme(st); break;
      case Statement::Kind::Elem: declare_elem(st); break;
      case Statement::Kind::Command: emit(st, command(st)); break;
    }
  }

 private:
  // ---- declarations -------------------------------------------------------

  void declare_base(const Statement& st) {
    k_ = Algebra::field(PrimeParams{st.p, st.pbasis})->with_term_cap(config_.limits.monomial_cap);
    q_ = k_;
    if (st.etale) {
      std::vector<std::string> names = st.pbasis;
      names.push_back("y");
      const FpPoly g = eval_poly(*st.etale, names, st.p);
      if (g.degree_in(st.pbasis.size()) == 0)
        fail(ErrorCode::InvalidArgument, "etale polynomial must involve y" + at_position(st.line, st.column));
      q_ = Algebra::monogenic(k_, g)->with_term_cap(config_.limits.monomial_cap);
    }
  }

  void declare_ring(const Statement& st) {
    if (!st.eisenstein) {
      rings_[st.name] = ArtinianBase::unramified(k_, st.level);
      return;
    }
    const BaseRing u(ArtinianBase::unramified(k_, st.level), k_);
    const PolyMap e = eval_apoly(u, *st.polynomial, {"pi"});
    size_t deg = 0;
    for (const auto& [exps, c] : e)
      if (!exps.empty() && !u.is_zero(c)) deg = std::max<size_t>(deg, exps[0]);
    if (deg == 0) fail(ErrorCode::NotEisenstein, "E must have positive degree in pi");
    const auto lead = e.find({static_cast<uint32_t>(deg)});
    if (lead->second != u.one()) fail(ErrorCode::NotEisenstein, "E must be monic in pi");
    std::vector<CohenElem> coeffs(deg, u.cohen().zero());
    for (const auto& [exps, c] : e) {
      const size_t i = exps.empty() ? 0 : exps[0];
      if (i < deg) coeffs[i] = u.component(c, 0);
    }
    rings_[st.name] = ArtinianBase::eisenstein(k_, st.level, std::move(coeffs));
  }

  void declare_scheme(const Statement& st) {
    const BaseRing ring(rings_.at(st.ring), k_);
    Scheme s{st.ring, {rings_.at(st.ring), st.vars, {}}};
    for (const auto& e : st.exprs) {
      APoly f;
      for (auto& [exps, c] : eval_apoly(ring, *e, st.vars))
        if (!ring.is_zero(c)) f.terms.push_back({exps, c});
      s.pres.eqs.push_back(std::move(f));
    }
    schemes_[st.name] = std::move(s);
  }

  void declare_elem(const Statement& st) {
    Value v;
    v.ring = st.ring;
    if (st.ring.empty()) {
      v.field = eval_field(*st.exprs[0]);
    } else {
      v.base = eval_base(ring_of(st.ring), *st.exprs[0]);
    }
    elems_[st.name] = std::move(v);
  }

  BaseRing ring_of(const std::string& name) const { return BaseRing(rings_.at(name), k_); }

  // ---- evaluation ---------------------------------------------------------

  static FpPoly eval_poly(const Expr& e, const std::vector<std::string>& names, uint32_t p) {
    switch (e.kind) {
      case Expr::Kind::Number: {
        int64_t r = 0;
        for (char c : e.text) r = (r * 10 + (c - '0')) % p;
        return FpPoly(p, r);
      }
      case Expr::Kind::Name:
        for (size_t i = 0; i < names.size(); ++i)
          if (names[i] == e.text) return FpPoly::variable(p, i);
        unknown("variable", e.text, e.line, e.column);
      case Expr::Kind::Neg: return -eval_poly(*e.args[0], names, p);
      case Expr::Kind::Add: return eval_poly(*e.args[0], names, p) + eval_poly(*e.args[1], names, p);
      case Expr::Kind::Sub: return eval_poly(*e.args[0], names, p) - eval_poly(*e.args[1], names, p);
      case Expr::Kind::Mul: return eval_poly(*e.args[0], names, p) * eval_poly(*e.args[1], names, p);
      case Expr::Kind::Pow: return eval_poly(*e.args[0], names, p).pow(e.exponent);
      default:
        fail(ErrorCode::TypeMismatch, "expected a polynomial" + at_position(e.line, e.column));
    }
  }

  Elem eval_field(const Expr& e) const {
    const auto& q = *q_;
    switch (e.kind) {
      case Expr::Kind::Number:
      case Expr::Kind::Name: {
        if (e.kind == Expr::Kind::Name) {
          auto it = elems_.find(e.text);
          if (it != elems_.end()) {
            if (!it->second.ring.empty())
              fail(ErrorCode::TypeMismatch, "'" + e.text + "' is an element of " + it->second.ring +
                                                ", not of the residue algebra" + at_position(e.line, e.column));
            return it->second.field;
          }
        }
        return eval_elem(q, e);
      }
      case Expr::Kind::Neg: return q.neg(eval_field(*e.args[0]));
      case Expr::Kind::Add: return q.add(eval_field(*e.args[0]), eval_field(*e.args[1]));
      case Expr::Kind::Sub: return q.sub(eval_field(*e.args[0]), eval_field(*e.args[1]));
      case Expr::Kind::Mul: return q.mul(eval_field(*e.args[0]), eval_field(*e.args[1]));
      case Expr::Kind::Div: return q.div(eval_field(*e.args[0]), eval_field(*e.args[1]));
      case Expr::Kind::Pow: return q.pow(eval_field(*e.args[0]), e.exponent);
      case Expr::Kind::Call:
        fail(ErrorCode::TypeMismatch, "'" + e.text + "(...)' is not an element of the residue algebra" +
                                          at_position(e.line, e.column));
      case Expr::Kind::Tuple:
        fail(ErrorCode::TypeMismatch, "tuple where an element was expected" + at_position(e.line, e.column));
    }
    fail(ErrorCode::InternalError, "unhandled expression");
  }

  Elem eval_k(const Expr& e) const {
    const Elem f = eval_field(e);
    if (q_ != k_ && q_->involves_generator(f))
      fail(ErrorCode::TypeMismatch, "element of k expected" + at_position(e.line, e.column));
    return f;
  }

  std::vector<Elem> eval_vector(const Expr& e) const {
    std::vector<Elem> v;
    if (e.kind == Expr::Kind::Tuple) {
      for (const auto& a : e.args) v.push_back(eval_field(*a));
    } else {
      v.push_back(eval_field(e));
    }
    return v;
  }

  BaseElem eval_base(const BaseRing& ring, const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Number: {
        if (e.text.size() > 18) fail(ErrorCode::InvalidArgument, "integer literal too large" + at_position(e.line, e.column));
        return ring.from_int(std::stoll(e.text));
      }
      case Expr::Kind::Name: {
        if (e.text == "pi") return ring.pi();
        if (e.text == "p") return ring.from_int(ring.base()->p());
        auto it = elems_.find(e.text);
        if (it != elems_.end()) {
          if (it->second.ring.empty())
            fail(ErrorCode::TypeMismatch, "'" + e.text + "' is an element of k; use teich(" + e.text +
                                              ") for its lift" + at_position(e.line, e.column));
          if (rings_.at(it->second.ring) != ring.base())
            fail(ErrorCode::TypeMismatch, "'" + e.text + "' belongs to ring " + it->second.ring + at_position(e.line, e.column));
          return it->second.base;
        }
        for (const auto& n : k_->variable_names())
          if (n == e.text)
            fail(ErrorCode::TypeMismatch, "'" + e.text + "' is an element of k where an A-element is required; use teich(" +
                                              e.text + ")" + at_position(e.line, e.column));
        unknown("identifier", e.text, e.line, e.column);
      }
      case Expr::Kind::Call: {
        if ((e.text == "teich" || e.text == "lift") && e.args.size() == 1) return ring.lift(eval_k(*e.args[0]));
        if (e.text == "coord" && e.args.size() == 3) {
          const auto& k = *k_;
          const size_t j = small_uint(*e.args[0]);
          const CohenRing& c = ring.cohen();
          if (j > c.n()) fail(ErrorCode::IndexOutOfRange, "Cohen position out of range" + at_position(e.line, e.column));
          std::vector<uint32_t> idx;
          if (e.args[1]->kind == Expr::Kind::Tuple) {
            for (const auto& a : e.args[1]->args) idx.push_back(static_cast<uint32_t>(small_uint(*a)));
          } else {
            idx.push_back(static_cast<uint32_t>(small_uint(*e.args[1])));
          }
          const uint32_t base = static_cast<uint32_t>(ipow(k.p(), c.n() - j));
          if (idx.size() != k.d()) fail(ErrorCode::IndexOutOfRange, "multi-index needs d entries" + at_position(e.line, e.column));
          for (auto i : idx)
            if (i >= base) fail(ErrorCode::IndexOutOfRange, "multi-index entry out of range" + at_position(e.line, e.column));
          return ring.from_cohen(c.coordinate(j, flatten_index(idx, base), eval_k(*e.args[2])));
        }
        fail(ErrorCode::UnknownIdentifier, "unknown function '" + e.text + "' (teich(f), coord(j, i, f))" +
                                               at_position(e.line, e.column));
      }
      case Expr::Kind::Tuple:
        fail(ErrorCode::TypeMismatch, "tuple where an element was expected" + at_position(e.line, e.column));
      case Expr::Kind::Neg: return ring.neg(eval_base(ring, *e.args[0]));
      case Expr::Kind::Add: return ring.add(eval_base(ring, *e.args[0]), eval_base(ring, *e.args[1]));
      case Expr::Kind::Sub: return ring.sub(eval_base(ring, *e.args[0]), eval_base(ring, *e.args[1]));
      case Expr::Kind::Mul: return ring.mul(eval_base(ring, *e.args[0]), eval_base(ring, *e.args[1]));
      case Expr::Kind::Div: return ring.mul(eval_base(ring, *e.args[0]), ring.inv(eval_base(ring, *e.args[1])));
      case Expr::Kind::Pow: return ring.pow(eval_base(ring, *e.args[0]), e.exponent);
    }
    fail(ErrorCode::InternalError, "unhandled expression");
  }

  static size_t small_uint(const Expr& e) {
    if (e.kind != Expr::Kind::Number || e.text.size() > 6)
      fail(ErrorCode::TypeMismatch, "small non-negative integer expected" + at_position(e.line, e.column));
    return std::stoul(e.text);
  }

  static void add_into(const BaseRing& ring, PolyMap& acc, const std::vector<uint32_t>& exps, const BaseElem& c) {
    auto it = acc.find(exps);
    if (it == acc.end()) {
      acc.emplace(exps, c);
    } else {
      it->second = ring.add(it->second, c);
    }
  }

  static PolyMap mul_poly(const BaseRing& ring, const PolyMap& a, const PolyMap& b) {
    PolyMap r;
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) {
        std::vector<uint32_t> e(std::max(ea.size(), eb.size()), 0);
        for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        while (!e.empty() && e.back() == 0) e.pop_back();
        add_into(ring, r, e, ring.mul(ca, cb));
      }
    return r;
  }

  static bool is_constant(const PolyMap& a) {
    for (const auto& [e, c] : a)
      if (!e.empty()) return false;
    return true;
  }

  // Polynomial in `vars` with coefficients in A.
  PolyMap eval_apoly(const BaseRing& ring, const Expr& e, const std::vector<std::string>& vars) const {
    switch (e.kind) {
      case Expr::Kind::Name:
        for (size_t i = 0; i < vars.size(); ++i)
          if (vars[i] == e.text) {
            std::vector<uint32_t> exps(i + 1, 0);
            exps[i] = 1;
            return PolyMap{{exps, ring.one()}};
          }
        return PolyMap{{{}, eval_base(ring, e)}};
      case Expr::Kind::Neg: {
        PolyMap r = eval_apoly(ring, *e.args[0], vars);
        for (auto& [x, c] : r) c = ring.neg(c);
        return r;
      }
      case Expr::Kind::Add:
      case Expr::Kind::Sub: {
        PolyMap r = eval_apoly(ring, *e.args[0], vars);
        for (auto& [x, c] : eval_apoly(ring, *e.args[1], vars))
          add_into(ring, r, x, e.kind == Expr::Kind::Add ? c : ring.neg(c));
        return r;
      }
      case Expr::Kind::Mul: return mul_poly(ring, eval_apoly(ring, *e.args[0], vars), eval_apoly(ring, *e.args[1], vars));
      case Expr::Kind::Div: {
        const PolyMap den = eval_apoly(ring, *e.args[1], vars);
        if (!is_constant(den)) fail(ErrorCode::TypeMismatch, "division by a non-constant" + at_position(e.line, e.column));
        const BaseElem inv = ring.inv(den.empty() ? ring.zero() : den.begin()->second);
        PolyMap r = eval_apoly(ring, *e.args[0], vars);
        for (auto& [x, c] : r) c = ring.mul(c, inv);
        return r;
      }
      case Expr::Kind::Pow: {
        const PolyMap base = eval_apoly(ring, *e.args[0], vars);
        PolyMap r{{{}, ring.one()}};
        if (is_constant(base)) return PolyMap{{{}, ring.pow(base.empty() ? ring.zero() : base.begin()->second, e.exponent)}};
        if (e.exponent > 64) fail(ErrorCode::ResourceLimit, "polynomial exponent above 64" + at_position(e.line, e.column));
        for (uint64_t i = 0; i < e.exponent; ++i) r = mul_poly(ring, r, base);
        return r;
      }
      default: return PolyMap{{{}, eval_base(ring, e)}};
    }
  }

  // ---- commands -----------------------------------------------------------

  const Expr& arg(const Statement& st, size_t i) const {
    if (i >= st.exprs.size())
      fail(ErrorCode::InvalidArgument, st.name + (st.sub.empty() ? "" : " " + st.sub) + ": missing argument " +
                                           std::to_string(i + 1) + at_position(st.line, st.column));
    return *st.exprs[i];
  }

  void expect_args(const Statement& st, size_t n) const {
    if (st.exprs.size() != n)
      fail(ErrorCode::InvalidArgument, st.name + (st.sub.empty() ? "" : " " + st.sub) + " takes " + std::to_string(n) +
                                           " argument(s)" + at_position(st.line, st.column));
  }

  std::optional<size_t> option_uint(const Statement& st, const std::string& key) const {
    auto it = st.options.find(key);
    if (it == st.options.end()) return std::nullopt;
    if (it->second.kind != Lexer::Tok::Number || it->second.text.size() > 9)
      fail(ErrorCode::InvalidArgument, "--" + key + " expects a non-negative integer" +
                                           at_position(it->second.line, it->second.column));
    return std::stoull(it->second.text);
  }

  void check_options(const Statement& st, std::set<std::string> allowed) const {
    allowed.insert("out");
    for (const auto& [key, tok] : st.options)
      if (!allowed.count(key))
        fail(ErrorCode::InvalidArgument, "unknown option --" + key + at_position(tok.line, tok.column));
  }

  Json command(const Statement& st) {
    if (st.name == "witt") return witt_command(st);
    if (st.name == "cohen") return cohen_command(st);
    if (st.name == "greenberg") return greenberg_command(st);
    if (st.name == "point") return point_command(st);
    if (st.name == "units") return units_command(st);
    check_options(st, {"seed"});
    expect_args(st, 0);
    return run_selftest(option_uint(st, "seed").value_or(config_.seed));
  }

  Json witt_command(const Statement& st) {
    const WittArithmetic<AlgebraRing> w(AlgebraRing{q_}, q_->p());
    const auto& s = st.sub;
    if (s == "add" || s == "sub" || s == "mul") {
      check_options(st, {});
      expect_args(st, 2);
      const auto a = eval_vector(arg(st, 0)), b = eval_vector(arg(st, 1));
      const auto r = s == "add" ? w.add(a, b) : s == "sub" ? w.sub(a, b) : w.mul(a, b);
      return Json{{"result", witt_to_json(*q_, r)}};
    }
    if (s == "neg" || s == "f" || s == "v") {
      check_options(st, s == "v" ? std::set<std::string>{"times"} : std::set<std::string>{});
      expect_args(st, 1);
      const auto a = eval_vector(arg(st, 0));
      const auto r = s == "neg" ? w.neg(a) : s == "f" ? w.frobenius(a) : w.verschiebung(a, option_uint(st, "times").value_or(1));
      return Json{{"result", witt_to_json(*q_, r)}};
    }
    if (s == "ghost") {
      check_options(st, {});
      expect_args(st, 2);
      return Json{{"result", q_->format(w.ghost(small_uint(arg(st, 1)), eval_vector(arg(st, 0))))}};
    }
    if (s == "teich") {
      check_options(st, {"length"});
      expect_args(st, 1);
      const size_t n = option_uint(st, "length").value_or(2);
      if (n == 0 || n > 64) fail(ErrorCode::InvalidArgument, "--length must be in [1, 64]");
      return Json{{"result", witt_to_json(*q_, w.teichmuller(eval_field(arg(st, 0)), n))}};
    }
    fail(ErrorCode::InvalidArgument, "unknown witt subcommand '" + s + "' (add, sub, mul, neg, ghost, v, f, teich)");
  }

  Json cohen_command(const Statement& st) {
    const auto& s = st.sub;
    auto read = [&](size_t i) -> std::pair<CohenRing, CohenElem> {
      const auto v = eval_vector(arg(st, i));
      if (v.size() > 64) fail(ErrorCode::InvalidArgument, "Witt vector too long");
      CohenRing ring(q_, v.size() - 1);
      return {ring, ring.extract(v)};
    };
    if (s == "extract" || s == "residue") {
      check_options(st, {});
      expect_args(st, 1);
      auto [ring, c] = read(0);
      if (s == "residue") return Json{{"result", q_->format(ring.residue(c))}};
      return Json{{"result", cohen_to_json(ring, c)}};
    }
    if (s == "add" || s == "mul" || s == "sub") {
      check_options(st, {});
      expect_args(st, 2);
      auto [ring, a] = read(0);
      auto [ring_b, b] = read(1);
      if (ring.n() != ring_b.n()) fail(ErrorCode::LevelMismatch, "Cohen elements of different levels");
      const CohenElem r = s == "add" ? ring.add(a, b) : s == "sub" ? ring.sub(a, b) : ring.mul(a, b);
      return Json{{"result", cohen_to_json(ring, r)}};
    }
    if (s == "embed") {
      check_options(st, {"level"});
      expect_args(st, 1);
      auto [ring, c] = read(0);
      const size_t level = option_uint(st, "level").value_or(ring.level() + 1);
      if (level == 0 || level > 64) fail(ErrorCode::InvalidArgument, "--level must be in [1, 64]");
      const CohenRing target(q_, level - 1);
      return Json{{"result", cohen_to_json(target, ver_embed(target, c))}};
    }
    if (s == "pdiv") {
      check_options(st, {"e"});
      expect_args(st, 1);
      auto [ring, c] = read(0);
      return Json{{"result", cohen_to_json(ring, solve_p_division(ring, c, option_uint(st, "e").value_or(1)))}};
    }
    fail(ErrorCode::InvalidArgument, "unknown cohen subcommand '" + s + "' (add, sub, mul, extract, embed, pdiv, residue)");
  }

  GreenbergLimits limits() const { return config_.limits; }

  Json greenberg_command(const Statement& st) {
    check_options(st, {"stage", "jobs"});
    expect_args(st, 0);
    GreenbergLimits l = limits();
    l.jobs = option_uint(st, "jobs").value_or(config_.jobs);
    if (l.jobs == 0) l.jobs = 1;
    const size_t stage = option_uint(st, "stage").value_or(config_.stage);
    if (stage > 8) fail(ErrorCode::ResourceLimit, "stage above 8");
    const auto g = greenberg_transform(schemes_.at(st.target).pres, stage, l);
    return Json{{"symbols", g.symbols()},
                {"equations", g.equation_strings()},
                {"stage", g.stage},
                {"substitutions", g.substitutions}};
  }

  Json point_command(const Statement& st) {
    check_options(st, {});
    expect_args(st, 1);
    const Scheme& s = schemes_.at(st.target);
    const BaseRing ring = ring_of(s.ring);
    const Expr& e = arg(st, 0);
    std::vector<const Expr*> items;
    if (e.kind == Expr::Kind::Tuple) {
      for (const auto& a : e.args) items.push_back(a.get());
    } else {
      items.push_back(&e);
    }
    if (st.sub == "push") {
      std::vector<BaseElem> point;
      for (const auto* x : items) point.push_back(eval_base(ring, *x));
      const auto g = greenberg_transform(s.pres, 0, limits());
      std::vector<std::string> coords;
      for (const auto& c : point_to_coords(s.pres, g, point)) coords.push_back(k_->format(c));
      return Json{{"symbols", g.symbols()}, {"result", coords}};
    }
    if (st.sub == "pull") {
      std::vector<Elem> coords;
      for (const auto* x : items) coords.push_back(eval_k(*x));
      Json out = Json::array();
      for (const auto& p : coords_to_point(s.pres, coords)) out.push_back(base_to_json(ring, p));
      return Json{{"result", out}};
    }
    fail(ErrorCode::InvalidArgument, "unknown point subcommand '" + st.sub + "' (push, pull)");
  }

  Json units_command(const Statement& st) {
    expect_args(st, 1);
    std::string ring_name = first_ring_;
    auto it = st.options.find("ring");
    if (it != st.options.end()) {
      ring_name = it->second.text;
      if (!rings_.count(ring_name)) unknown("ring", ring_name, it->second.line, it->second.column);
    } else if (arg(st, 0).kind == Expr::Kind::Name && elems_.count(arg(st, 0).text) &&
               !elems_.at(arg(st, 0).text).ring.empty()) {
      ring_name = elems_.at(arg(st, 0).text).ring;
    }
    if (ring_name.empty()) fail(ErrorCode::UnknownIdentifier, "no ring declared for units");
    const BaseRing ring = ring_of(ring_name);
    const BaseElem u = eval_base(ring, arg(st, 0));
    if (st.sub == "level") {
      check_options(st, {"ring"});
      const auto level = unit_level(ring, u);
      return Json{{"level", level ? Json(*level) : Json("inf")}};
    }
    if (st.sub == "ppow") {
      check_options(st, {"ring"});
      return Json{{"result", base_to_json(ring, p_power(ring, u))}};
    }
    if (st.sub == "ppow-solve") {
      check_options(st, {"ring", "n"});
      const auto& base = *ring.base();
      const size_t n = option_uint(st, "n").value_or(config_.n.value_or(base.e() / (base.p() - 1) + 1));
      const BaseElem sol = p_power_solve(ring, u, n);
      return Json{{"solution", base_to_json(ring, sol)}, {"verified", p_power(ring, sol) == u}, {"n", n}};
    }
    fail(ErrorCode::InvalidArgument, "unknown units subcommand '" + st.sub + "' (level, ppow, ppow-solve)");
  }

  void emit(const Statement& st, const Json& doc) {
    auto it = st.options.find("out");
    if (it == st.options.end()) {
      out_ << doc.dump() << "\n";
      return;
    }
    std::ofstream f(it->second.text);
    if (!f) fail(ErrorCode::InvalidArgument, "cannot write '" + it->second.text + "'");
    f << doc.dump() << "\n";
  }

 public:
  void note_ring(const Statement& st) {
    if (st.kind == Statement::Kind::Ring && first_ring_.empty()) first_ring_ = st.name;
  }

 private:
  const SessionConfig& config_;
  std::ostream& out_;
  AlgebraPtr k_, q_;
  std::map<std::string, BasePtr> rings_;
  std::string first_ring_;  // default ring for `units`
  std::map<std::string, Scheme> schemes_;
  std::map<std::string, Value> elems_;
};

void write_error(std::ostream& out, const Error& e, const std::string& command) {
  Json j = error_to_json(e);
  if (!command.empty()) j["command"] = command;
  out << j.dump() << "\n";
}

}  // namespace

Script Script::parse(std::string_view source) { return Parser(source).parse(); }

int run(const Script& script, const SessionConfig& config, std::ostream& out) {
  Session session(config, out);
  for (const auto& st : script.statements) {
    try {
      session.execute(st);
      session.note_ring(st);
    } catch (const Error& e) {
      write_error(out, e, st.kind == Statement::Kind::Command ? st.text : "");
      return 1;
    } catch (const std::exception& e) {
      write_error(out, Error(ErrorCode::InternalError, e.what()), st.text);
      return 1;
    }
  }
  return 0;
}

int run_source(std::string_view source, const SessionConfig& config, std::ostream& out) {
  Script script;
  try {
    script = Script::parse(source);
  } catch (const Error& e) {
    write_error(out, e, "");
    return 1;
  }
  return run(script, config, out);
}

}  // namespace gkit
