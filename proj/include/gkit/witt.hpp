#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "gkit/algebra.hpp"
#include "gkit/error.hpp"
#include "gkit/integers.hpp"
#include "gkit/polynomial.hpp"

namespace gkit {

struct ZTerm {
  Monomial mono;
  mpz_class coeff;
};
// Integer polynomial, terms sorted by decreasing graded-lex monomial.
using ZPoly = std::vector<ZTerm>;

std::string format_zpoly(const ZPoly& f, const std::vector<std::string>& names);

// Universal Witt polynomials for (p, N). Variables are interleaved:
// x_i is variable 2i, y_i is variable 2i+1.
//   sum[n], prod[n], neg[n] for n < N; frob[n] for n < N-1 with
//   w_n(frob(x)) = w_{n+1}(x) (it involves x_0..x_{n+1}).
// The *_mod lists are the reductions mod p used over F_p-algebras.
struct StructurePolys {
  uint32_t p = 0;
  size_t length = 0;
  std::vector<ZPoly> sum, prod, neg, frob;
  std::vector<FpPoly> sum_mod, prod_mod, neg_mod;

  // Built once per (p, N) behind a lock, then shared read-only.
  static std::shared_ptr<const StructurePolys> get(uint32_t p, size_t length);

  size_t term_count() const;
};

// Integer Witt vector of n, i.e. the vector with all ghost components n.
std::vector<mpz_class> witt_of_integer(const mpz_class& n, uint32_t p, size_t length);

// Coefficient ring adaptor for Algebra.
struct AlgebraRing {
  using Value = Elem;
  AlgebraPtr alg;

  Value zero() const { return alg->zero(); }
  Value one() const { return alg->one(); }
  Value from_int(int64_t v) const { return alg->from_int(v); }
  Value from_mpz(const mpz_class& v) const {
    mpz_class r = v % alg->p();
    return alg->from_int(r.get_si());
  }
  Value add(const Value& a, const Value& b) const { return alg->add(a, b); }
  Value sub(const Value& a, const Value& b) const { return alg->sub(a, b); }
  Value neg(const Value& a) const { return alg->neg(a); }
  Value mul(const Value& a, const Value& b) const { return alg->mul(a, b); }
  Value pow(const Value& a, uint64_t e) const { return alg->pow(a, e); }
  bool equal(const Value& a, const Value& b) const { return a == b; }
  bool is_zero(const Value& a) const { return alg->is_zero(a); }
  uint32_t characteristic() const { return alg->p(); }
  Value frobenius(const Value& a) const { return alg->frobenius(a); }
};

namespace detail {

template <class Ring>
class PowerTable {
 public:
  using Value = typename Ring::Value;
  PowerTable(const Ring& ring, const std::vector<const Value*>& vars) : ring_(ring), vars_(vars), pw_(vars.size()) {}

  const Value& get(size_t var, uint32_t e) {
    auto& row = pw_[var];
    if (row.empty()) row.push_back(*vars_[var]);
    while (row.size() < e) row.push_back(ring_.mul(row.back(), *vars_[var]));
    return row[e - 1];
  }
  bool is_zero(size_t var) const { return ring_.is_zero(*vars_[var]); }

 private:
  const Ring& ring_;
  const std::vector<const typename Ring::Value*>& vars_;
  std::vector<std::vector<Value>> pw_;
};

template <class Ring, class TermRange, class CoeffFn>
typename Ring::Value evaluate(const Ring& ring, const TermRange& terms, PowerTable<Ring>& table, CoeffFn coeff) {
  auto acc = ring.zero();
  for (const auto& t : terms) {
    const auto& e = t.mono.exponents();
    bool vanishes = false;
    for (size_t v = 0; v < e.size() && !vanishes; ++v) vanishes = e[v] != 0 && table.is_zero(v);
    if (vanishes) continue;
    std::optional<typename Ring::Value> term;
    for (size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      const auto& f = table.get(v, e[v]);
      term = term ? ring.mul(*term, f) : f;
    }
    auto c = coeff(t);
    if (!term) {
      acc = ring.add(acc, c.has_value() ? *c : ring.one());
    } else {
      acc = ring.add(acc, c.has_value() ? ring.mul(*c, *term) : *term);
    }
  }
  return acc;
}

}  // namespace detail

// Truncated p-typical Witt vectors over a coefficient ring. Vectors are plain
// std::vector<Value>; the length is the truncation level.
template <class Ring>
class WittArithmetic {
 public:
  using Value = typename Ring::Value;
  using Vec = std::vector<Value>;

  WittArithmetic(Ring ring, uint32_t p) : ring_(std::move(ring)), p_(p) {}

  const Ring& ring() const { return ring_; }
  uint32_t p() const { return p_; }
  bool char_p() const { return ring_.characteristic() == p_; }

  Vec zero(size_t n) const { return Vec(n, ring_.zero()); }
  Vec one(size_t n) const { return teichmuller(ring_.one(), n); }
  Vec teichmuller(const Value& x, size_t n) const {
    Vec v = zero(n);
    if (n > 0) v[0] = x;
    return v;
  }
  Vec from_int(int64_t value, size_t n) const {
    const auto z = witt_of_integer(mpz_class(static_cast<long>(value)), p_, n);
    Vec v;
    v.reserve(n);
    for (const auto& c : z) v.push_back(ring_.from_mpz(c));
    return v;
  }

  bool is_zero(const Vec& u) const {
    for (const auto& x : u)
      if (!ring_.is_zero(x)) return false;
    return true;
  }
  bool equal(const Vec& u, const Vec& v) const {
    if (u.size() != v.size()) return false;
    for (size_t i = 0; i < u.size(); ++i)
      if (!ring_.equal(u[i], v[i])) return false;
    return true;
  }

  Vec add(const Vec& u, const Vec& v) const {
    check_lengths(u, v);
    if (is_zero(u)) return v;
    if (is_zero(v)) return u;
    return binary(u, v, polys(u.size())->sum, polys(u.size())->sum_mod);
  }
  Vec mul(const Vec& u, const Vec& v) const {
    check_lengths(u, v);
    if (is_zero(u) || is_zero(v)) return zero(u.size());
    if (is_teichmuller(u)) return teich_times(u[0], v);
    if (is_teichmuller(v)) return teich_times(v[0], u);
    return binary(u, v, polys(u.size())->prod, polys(u.size())->prod_mod);
  }
  Vec neg(const Vec& u) const {
    if (p_ != 2) {
      Vec r;
      r.reserve(u.size());
      for (const auto& x : u) r.push_back(ring_.neg(x));
      return r;
    }
    if (is_zero(u)) return u;
    return unary(u, polys(u.size())->neg, polys(u.size())->neg_mod, u.size());
  }
  Vec sub(const Vec& u, const Vec& v) const { return add(u, neg(v)); }
  Vec scale(const Vec& u, int64_t n) const { return mul(u, from_int(n, u.size())); }

  // sum_{i<=r} p^i a_i^{p^(r-i)}.
  Value ghost(size_t r, const Vec& u) const {
    if (r >= u.size()) fail(ErrorCode::IndexOutOfRange, "ghost index beyond the Witt length");
    Value acc = ring_.zero();
    mpz_class pi = 1;
    for (size_t i = 0; i <= r; ++i) {
      Value term = ring_.pow(u[i], ipow(p_, r - i));
      acc = ring_.add(acc, ring_.mul(ring_.from_mpz(pi), term));
      pi *= p_;
    }
    return acc;
  }

  // (a_0, ..) -> (0, a_0, ..), one longer.
  Vec verschiebung(const Vec& u) const {
    Vec r;
    r.reserve(u.size() + 1);
    r.push_back(ring_.zero());
    r.insert(r.end(), u.begin(), u.end());
    return r;
  }
  Vec verschiebung(const Vec& u, size_t times) const {
    Vec r = u;
    for (size_t i = 0; i < times; ++i) r = verschiebung(r);
    return r;
  }

  // Over F_p-algebras: entrywise p-th power, same length. Otherwise the
  // Frobenius polynomials, one shorter (F_n needs a_{n+1}).
  Vec frobenius(const Vec& u) const {
    if constexpr (requires(const Ring& r, const Value& a) { r.frobenius(a); }) {
      if (char_p()) {
        Vec r;
        r.reserve(u.size());
        for (const auto& x : u) r.push_back(ring_.frobenius(x));
        return r;
      }
    }
    if (u.size() < 2) return {};
    return unary(u, polys(u.size())->frob, {}, u.size() - 1);
  }

  Vec truncate(const Vec& u, size_t n) const {
    if (n > u.size()) fail(ErrorCode::LengthMismatch, "cannot truncate to a longer length");
    return Vec(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n));
  }

 private:
  std::shared_ptr<const StructurePolys> polys(size_t n) const { return StructurePolys::get(p_, n); }

  void check_lengths(const Vec& u, const Vec& v) const {
    if (u.size() != v.size()) fail(ErrorCode::LengthMismatch, "Witt vectors of different lengths");
  }

  bool is_teichmuller(const Vec& u) const {
    for (size_t i = 1; i < u.size(); ++i)
      if (!ring_.is_zero(u[i])) return false;
    return true;
  }

  // [a] * (b_0, b_1, ..) = (a b_0, a^p b_1, a^(p^2) b_2, ..).
  Vec teich_times(const Value& a, const Vec& v) const {
    Vec r;
    r.reserve(v.size());
    Value ap = a;
    for (size_t i = 0; i < v.size(); ++i) {
      r.push_back(ring_.mul(ap, v[i]));
      if (i + 1 < v.size()) ap = ring_.pow(ap, p_);
    }
    return r;
  }

  template <class Polys, class ModPolys>
  Vec evaluate_all(const std::vector<const Value*>& vars, const Polys& z, const ModPolys& mod, size_t count) const {
    detail::PowerTable<Ring> table(ring_, vars);
    Vec r;
    r.reserve(count);
    for (size_t n = 0; n < count; ++n) {
      if (char_p() && !mod.empty()) {
        r.push_back(detail::evaluate(ring_, mod[n].terms(), table, [&](const FpPoly::Term& t) {
          return t.coeff == 1 ? std::optional<Value>() : std::optional<Value>(ring_.from_int(t.coeff));
        }));
      } else {
        r.push_back(detail::evaluate(ring_, z[n], table, [&](const ZTerm& t) {
          return t.coeff == 1 ? std::optional<Value>() : std::optional<Value>(ring_.from_mpz(t.coeff));
        }));
      }
    }
    return r;
  }

  Vec binary(const Vec& u, const Vec& v, const std::vector<ZPoly>& z, const std::vector<FpPoly>& mod) const {
    std::vector<const Value*> vars;
    for (size_t i = 0; i < u.size(); ++i) {
      vars.push_back(&u[i]);
      vars.push_back(&v[i]);
    }
    return evaluate_all(vars, z, mod, u.size());
  }

  Vec unary(const Vec& u, const std::vector<ZPoly>& z, const std::vector<FpPoly>& mod, size_t count) const {
    const Value zero_value = ring_.zero();
    std::vector<const Value*> vars;
    for (size_t i = 0; i < u.size(); ++i) {
      vars.push_back(&u[i]);
      vars.push_back(&zero_value);
    }
    return evaluate_all(vars, z, mod, count);
  }

  Ring ring_;
  uint32_t p_;
};

// y = sum_i x_i * y_i^(p^N) with x_i = t^m, m in [0, p^N - 1]^d; zero
// digits are omitted. Requires k or an etale algebra.
std::vector<std::pair<Elem, Elem>> vn_decompose(const Algebra& q, const Elem& y, size_t n);

}  // namespace gkit
