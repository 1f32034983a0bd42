#include "gkit/algebra.hpp"

#include <map>

#include "gkit/error.hpp"
#include "gkit/gcd.hpp"

namespace gkit {

size_t ipow(size_t base, size_t exp) {
  size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

size_t flatten_index(std::span<const uint32_t> index, uint32_t base) {
  size_t flat = 0;
  for (uint32_t i : index) flat = flat * base + i;
  return flat;
}

std::vector<uint32_t> unflatten_index(size_t flat, uint32_t base, size_t d) {
  std::vector<uint32_t> idx(d, 0);
  for (size_t l = d; l-- > 0;) {
    idx[l] = static_cast<uint32_t>(flat % base);
    flat /= base;
  }
  return idx;
}

namespace {

// Splits each term of f into (t-part, rest) and groups by rest.
std::map<Monomial, FpPoly> group_by_non_t(const FpPoly& f, size_t d) {
  std::map<Monomial, std::vector<FpPoly::Term>> buckets;
  for (const auto& t : f.terms()) {
    std::vector<uint32_t> tpart, rest;
    const auto& e = t.mono.exponents();
    tpart.assign(e.begin(), e.begin() + std::min(d, e.size()));
    rest.assign(e.size(), 0);
    for (size_t i = d; i < e.size(); ++i) rest[i] = e[i];
    buckets[Monomial(std::move(rest))].push_back({Monomial(std::move(tpart)), t.coeff});
  }
  std::map<Monomial, FpPoly> out;
  for (auto& [rest, terms] : buckets) out.emplace(rest, FpPoly::from_terms(f.prime(), std::move(terms)));
  return out;
}

FpPoly t_content(const FpPoly& f, size_t d, const FpPoly& start) {
  FpPoly g = start;
  for (const auto& [rest, part] : group_by_non_t(f, d)) {
    g = g.prime() == 0 ? part.monic() : poly_gcd(g, part);
    if (g.is_one()) break;
  }
  return g;
}

// Dense univariate polynomials over k (index = degree), used for the
// generator y: inversion modulo g and separability.
using KPoly = std::vector<Elem>;

void trim(const Algebra& k, KPoly& f) {
  while (!f.empty() && k.is_zero(f.back())) f.pop_back();
}

std::pair<KPoly, KPoly> kpoly_divmod(const Algebra& k, KPoly a, const KPoly& b) {
  KPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, k.zero());
  const Elem lead_inv = k.inv(b.back());
  trim(k, a);
  while (a.size() >= b.size() && !a.empty()) {
    const size_t shift = a.size() - b.size();
    const Elem c = k.mul(a.back(), lead_inv);
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] = k.sub(a[i + shift], k.mul(c, b[i]));
    trim(k, a);
  }
  return {q, a};
}

KPoly kpoly_sub(const Algebra& k, const KPoly& a, const KPoly& b) {
  KPoly r(std::max(a.size(), b.size()), k.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = k.sub(r[i], b[i]);
  trim(k, r);
  return r;
}

KPoly kpoly_mul(const Algebra& k, const KPoly& a, const KPoly& b) {
  if (a.empty() || b.empty()) return {};
  KPoly r(a.size() + b.size() - 1, k.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
  trim(k, r);
  return r;
}

// Returns (gcd, s) with s*a = gcd mod m.
std::pair<KPoly, KPoly> kpoly_half_ext_gcd(const Algebra& k, const KPoly& a, const KPoly& m) {
  KPoly r0 = m, r1 = a, s0, s1{k.one()};
  trim(k, r1);
  while (!r1.empty()) {
    auto [q, r] = kpoly_divmod(k, r0, r1);
    KPoly s2 = kpoly_sub(k, s0, kpoly_mul(k, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return {r0, s0};
}

KPoly to_kpoly(const Algebra& k, const Elem& a, size_t var) {
  const auto coeffs = coefficients_in(a.num, var);
  KPoly out;
  for (const auto& c : coeffs) out.push_back(k.from_fraction(c, a.den));
  trim(k, out);
  return out;
}

}  // namespace

std::shared_ptr<const Algebra> Algebra::field(PrimeParams params) {
  if (params.p < 2) fail(ErrorCode::InvalidArgument, "p must be a prime >= 2");
  for (uint32_t q = 2; q * q <= params.p; ++q)
    if (params.p % q == 0) fail(ErrorCode::InvalidArgument, "p must be prime");
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->params_ = std::move(params);
  a->rebuild_names();
  return a;
}

void Algebra::rebuild_names() {
  names_ = params_.pbasis;
  if (modulus_) names_.push_back("y");
  for (const auto& s : symbols_) names_.push_back(s);
}

std::shared_ptr<const Algebra> Algebra::monogenic(const std::shared_ptr<const Algebra>& k,
                                                  const FpPoly& g, bool require_separable) {
  if (k->has_generator() || k->num_symbols() > 0)
    fail(ErrorCode::UnsupportedAlgebra, "monogenic extensions are built over k itself");
  const size_t yi = k->d();
  if (!g.only_variables_below(yi + 1))
    fail(ErrorCode::InvalidArgument, "defining polynomial may only involve t and y");
  const uint32_t deg = g.degree_in(yi);
  if (deg == 0) fail(ErrorCode::InvalidArgument, "defining polynomial must have positive degree in y");
  const auto coeffs = coefficients_in(g, yi);
  if (!coeffs.back().is_one())
    fail(ErrorCode::InvalidArgument, "defining polynomial must be monic in y");

  auto a = std::shared_ptr<Algebra>(new Algebra(*k));
  a->modulus_ = g;

  // Separability: gcd(g, g') in k[y].
  KPoly gk = to_kpoly(*k, k->from_poly(g), yi);
  KPoly dg;
  for (size_t e = 1; e < gk.size(); ++e) dg.push_back(k->mul(k->from_int(static_cast<int64_t>(e)), gk[e]));
  trim(*k, dg);
  bool separable = false;
  if (!dg.empty()) {
    KPoly r0 = gk, r1 = dg;
    while (!r1.empty()) {
      auto [q, r] = kpoly_divmod(*k, r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
    }
    separable = r0.size() == 1;
  }
  if (require_separable && !separable) fail(ErrorCode::NotSeparable, "defining polynomial is not separable");
  a->separable_ = separable;
  a->rebuild_names();

  if (separable) {
    // Frobenius matrix: column c holds y^(c p) mod g on the power basis.
    const uint32_t p = k->p();
    std::vector<Elem> m(deg * deg, k->zero());
    for (uint32_t c = 0; c < deg; ++c) {
      const FpPoly power = a->reduce_modulus(FpPoly::variable(p, yi, c * p));
      const auto rows = coefficients_in(power, yi);
      for (uint32_t r = 0; r < rows.size() && r < deg; ++r) m[r * deg + c] = k->from_poly(rows[r]);
    }
    // Gauss-Jordan inverse over k.
    std::vector<Elem> inv(deg * deg, k->zero());
    for (uint32_t i = 0; i < deg; ++i) inv[i * deg + i] = k->one();
    for (uint32_t col = 0; col < deg; ++col) {
      uint32_t pivot = col;
      while (pivot < deg && k->is_zero(m[pivot * deg + col])) ++pivot;
      check_internal(pivot < deg, "Frobenius matrix of an etale algebra is singular");
      for (uint32_t j = 0; j < deg; ++j) {
        std::swap(m[pivot * deg + j], m[col * deg + j]);
        std::swap(inv[pivot * deg + j], inv[col * deg + j]);
      }
      const Elem s = k->inv(m[col * deg + col]);
      for (uint32_t j = 0; j < deg; ++j) {
        m[col * deg + j] = k->mul(m[col * deg + j], s);
        inv[col * deg + j] = k->mul(inv[col * deg + j], s);
      }
      for (uint32_t r = 0; r < deg; ++r) {
        if (r == col || k->is_zero(m[r * deg + col])) continue;
        const Elem f = m[r * deg + col];
        for (uint32_t j = 0; j < deg; ++j) {
          m[r * deg + j] = k->sub(m[r * deg + j], k->mul(f, m[col * deg + j]));
          inv[r * deg + j] = k->sub(inv[r * deg + j], k->mul(f, inv[col * deg + j]));
        }
      }
    }
    a->frobenius_inverse_ = std::move(inv);
  }
  return a;
}

std::shared_ptr<const Algebra> Algebra::with_symbols(std::vector<std::string> names) const {
  auto a = std::shared_ptr<Algebra>(new Algebra(*this));
  a->symbols_ = std::move(names);
  a->rebuild_names();
  return a;
}

std::shared_ptr<const Algebra> Algebra::with_term_cap(size_t cap) const {
  auto a = std::shared_ptr<Algebra>(new Algebra(*this));
  a->term_cap_ = cap;
  return a;
}

std::shared_ptr<const Algebra> Algebra::base_field() const {
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->params_ = params_;
  a->term_cap_ = term_cap_;
  a->rebuild_names();
  return a;
}

FpPoly Algebra::reduce_modulus(FpPoly f) const {
  if (!modulus_) return f;
  const size_t yi = d();
  const uint32_t deg = modulus_->degree_in(yi);
  const FpPoly neg_tail = -(*modulus_ - FpPoly::variable(p(), yi, deg));
  while (true) {
    uint32_t top = 0;
    for (const auto& t : f.terms()) top = std::max(top, t.mono.exponent(yi));
    if (top < deg) return f;
    std::vector<FpPoly::Term> high, shifted;
    for (const auto& t : f.terms()) {
      if (t.mono.exponent(yi) != top) continue;
      high.push_back(t);
      shifted.push_back({t.mono.with_exponent(yi, top - deg), t.coeff});
    }
    f -= FpPoly::from_terms(p(), std::move(high));
    f += FpPoly::from_terms(p(), std::move(shifted)) * neg_tail;
  }
}

Elem Algebra::normalize(FpPoly num, FpPoly den) const {
  if (den.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator");
  if (modulus_) num = reduce_modulus(std::move(num));
  if (num.is_zero()) return Elem{FpPoly(p()), FpPoly(p(), 1)};
  if (den.is_constant()) {
    const uint32_t c = fp_inverse(den.constant_term(), p());
    return Elem{num.scaled(c), FpPoly(p(), 1)};
  }
  const FpPoly g = t_content(num, d(), den);
  if (!g.is_one()) {
    num = divide_exact(num, g);
    den = divide_exact(den, g);
  }
  const uint32_t c = fp_inverse(den.leading_term().coeff, p());
  return Elem{num.scaled(c), den.scaled(c)};
}

Elem Algebra::zero() const { return Elem{FpPoly(p()), FpPoly(p(), 1)}; }
Elem Algebra::one() const { return Elem{FpPoly(p(), 1), FpPoly(p(), 1)}; }
Elem Algebra::from_int(int64_t v) const { return Elem{FpPoly(p(), v), FpPoly(p(), 1)}; }

Elem Algebra::from_poly(FpPoly num) const {
  if (num.prime() == 0) num = FpPoly(p());
  return normalize(std::move(num), FpPoly(p(), 1));
}

Elem Algebra::from_fraction(FpPoly num, FpPoly den) const {
  if (num.prime() == 0) num = FpPoly(p());
  if (!den.only_variables_below(d()))
    fail(ErrorCode::InvalidArgument, "denominators may only involve the p-basis");
  return normalize(std::move(num), std::move(den));
}

Elem Algebra::pbasis(size_t i) const {
  if (i >= d()) fail(ErrorCode::IndexOutOfRange, "p-basis index out of range");
  return from_poly(FpPoly::variable(p(), i));
}

Elem Algebra::generator() const {
  if (!modulus_) fail(ErrorCode::UnsupportedAlgebra, "algebra has no generator y");
  return from_poly(FpPoly::variable(p(), generator_index()));
}

Elem Algebra::symbol(size_t s) const {
  if (s >= symbols_.size()) fail(ErrorCode::IndexOutOfRange, "symbol index out of range");
  return from_poly(FpPoly::variable(p(), symbol_index(s)));
}

Elem Algebra::add(const Elem& a, const Elem& b) const {
  if (a.num.is_zero()) return b;
  if (b.num.is_zero()) return a;
  if (a.den == b.den) {
    if (a.den.is_one()) return Elem{a.num + b.num, a.den};
    return normalize(a.num + b.num, a.den);
  }
  return normalize(a.num * b.den + b.num * a.den, a.den * b.den);
}

Elem Algebra::neg(const Elem& a) const { return Elem{-a.num, a.den}; }

Elem Algebra::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Algebra::mul(const Elem& a, const Elem& b) const {
  if (a.num.is_zero() || b.num.is_zero()) return zero();
  FpPoly num = a.num * b.num;
  if (term_cap_ != 0 && num.size() > term_cap_)
    fail(ErrorCode::ResourceLimit, "intermediate polynomial exceeds the monomial cap (" +
                                       std::to_string(term_cap_) + ")");
  if (a.den.is_one() && b.den.is_one()) {
    if (!modulus_) return Elem{std::move(num), a.den};
    return normalize(std::move(num), a.den);
  }
  return normalize(std::move(num), a.den * b.den);
}

Elem Algebra::pow(const Elem& a, uint64_t e) const {
  Elem result = one();
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

bool Algebra::involves_symbols(const Elem& a) const {
  return !a.num.only_variables_below(first_symbol_index());
}

bool Algebra::involves_generator(const Elem& a) const {
  if (!modulus_) return false;
  return a.num.degree_in(generator_index()) > 0;
}

Elem Algebra::inv(const Elem& a) const {
  if (a.num.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
  if (involves_symbols(a)) fail(ErrorCode::NotAUnit, "element involving symbols is not invertible");
  if (!involves_generator(a)) return normalize(a.den, a.num);
  auto k = base_field();
  const KPoly ak = to_kpoly(*k, a, generator_index());
  const KPoly gk = to_kpoly(*k, k->from_poly(*modulus_), generator_index());
  auto [g, s] = kpoly_half_ext_gcd(*k, ak, gk);
  if (g.size() != 1) fail(ErrorCode::NotAUnit, "element shares a factor with the defining polynomial");
  const Elem scale = k->inv(g[0]);
  Elem result = zero();
  for (size_t e = 0; e < s.size(); ++e) {
    const Elem c = k->mul(s[e], scale);
    result = add(result, mul(c, from_poly(FpPoly::variable(p(), generator_index(), static_cast<uint32_t>(e)))));
  }
  return result;
}

Elem Algebra::frobenius(const Elem& a) const {
  const uint32_t q = p();
  auto raise = [q](const Monomial& m) {
    std::vector<uint32_t> e = m.exponents();
    for (auto& x : e) x *= q;
    return Monomial(std::move(e));
  };
  return normalize(a.num.map_monomials(raise), a.den.map_monomials(raise));
}

Elem Algebra::twist(const Elem& a, size_t n) const {
  if (n == 0) return a;
  const uint32_t q = static_cast<uint32_t>(ipow(p(), n));
  const size_t bound = first_symbol_index();
  auto raise = [q, bound](const Monomial& m) {
    std::vector<uint32_t> e = m.exponents();
    for (size_t i = 0; i < e.size() && i < bound; ++i) e[i] *= q;
    return Monomial(std::move(e));
  };
  return normalize(a.num.map_monomials(raise), a.den.map_monomials(raise));
}

std::vector<Elem> Algebra::expand_field_once(const Elem& a) const {
  const uint32_t q = p();
  const size_t width = ipow(q, d());
  std::vector<std::vector<FpPoly::Term>> buckets(width);
  const FpPoly num = a.den.is_one() ? a.num : a.num * a.den.pow(q - 1);
  std::vector<uint32_t> digit(d());
  for (const auto& t : num.terms()) {
    std::vector<uint32_t> e = t.mono.exponents();
    for (size_t l = 0; l < d(); ++l) {
      const uint32_t x = l < e.size() ? e[l] : 0;
      digit[l] = x % q;
      if (l < e.size()) e[l] = x / q;
    }
    buckets[flatten_index(digit, q)].push_back({Monomial(std::move(e)), t.coeff});
  }
  std::vector<Elem> out;
  out.reserve(width);
  for (auto& b : buckets) out.push_back(normalize(FpPoly::from_terms(q, std::move(b)), a.den));
  return out;
}

std::vector<Elem> Algebra::expand_once(const Elem& a) const {
  if (!modulus_) return expand_field_once(a);
  if (!separable_) fail(ErrorCode::UnsupportedAlgebra, "digit expansion needs an etale algebra");
  auto k = base_field();
  const size_t yi = generator_index();
  const size_t deg = generator_degree();
  const size_t width = ipow(p(), d());
  std::vector<Elem> digits(width, zero());
  // Symbol monomials split off; each coefficient lies in Q.
  for (const auto& [rest, part] : group_by_non_t(a.num, yi + 1)) {
    const auto ycoeffs = coefficients_in(part, yi);
    std::vector<Elem> f(deg, k->zero());
    for (size_t l = 0; l < ycoeffs.size() && l < deg; ++l) f[l] = k->from_fraction(ycoeffs[l], a.den);
    // c = M^{-1} f, then split each c_k over k.
    for (size_t c = 0; c < deg; ++c) {
      Elem ck = k->zero();
      for (size_t l = 0; l < deg; ++l) ck = k->add(ck, k->mul(frobenius_inverse_[c * deg + l], f[l]));
      if (k->is_zero(ck)) continue;
      const auto sub = k->expand_field_once(ck);
      const Elem basis = from_poly(FpPoly(p(), rest * Monomial::variable(yi, static_cast<uint32_t>(c))));
      for (size_t r = 0; r < width; ++r)
        if (!k->is_zero(sub[r])) digits[r] = add(digits[r], mul(sub[r], basis));
    }
  }
  return digits;
}

std::vector<Elem> Algebra::expand(const Elem& a, size_t n) const {
  if (n == 0) return {a};
  const auto first = expand_once(a);
  if (n == 1) return first;
  const uint32_t q = p();
  const uint32_t base = static_cast<uint32_t>(ipow(q, n));
  const uint32_t sub_base = base / q;
  std::vector<Elem> out(ipow(base, d()), zero());
  for (size_t r = 0; r < first.size(); ++r) {
    if (is_zero(first[r])) continue;
    const auto rest = expand(first[r], n - 1);
    const auto ri = unflatten_index(r, q, d());
    for (size_t s = 0; s < rest.size(); ++s) {
      if (is_zero(rest[s])) continue;
      auto m = unflatten_index(s, sub_base, d());
      for (size_t l = 0; l < d(); ++l) m[l] = ri[l] + q * m[l];
      out[flatten_index(m, base)] = rest[s];
    }
  }
  return out;
}

Elem Algebra::pth_root(const Elem& a) const {
  if (involves_symbols(a)) fail(ErrorCode::UnsupportedAlgebra, "pth_root is defined on k and etale algebras");
  const auto digits = expand(a, 1);
  for (size_t r = 1; r < digits.size(); ++r)
    if (!is_zero(digits[r])) fail(ErrorCode::NotAPthPower, format(a) + " is not a p-th power");
  return digits[0];
}

Elem Algebra::substitute(const Elem& a, std::span<const Elem> values, const Algebra& target) const {
  if (values.size() < num_symbols()) fail(ErrorCode::InvalidArgument, "missing symbol values");
  const size_t first = first_symbol_index();
  std::map<std::pair<size_t, uint32_t>, Elem> powers;
  auto power = [&](size_t s, uint32_t e) -> const Elem& {
    auto it = powers.find({s, e});
    if (it != powers.end()) return it->second;
    return powers.emplace(std::make_pair(s, e), target.pow(values[s], e)).first->second;
  };
  Elem acc = target.zero();
  for (const auto& t : a.num.terms()) {
    const auto& e = t.mono.exponents();
    std::vector<uint32_t> head(e.begin(), e.begin() + std::min(first, e.size()));
    Elem term = target.from_poly(FpPoly(p(), Monomial(std::move(head)), t.coeff));
    for (size_t i = first; i < e.size(); ++i)
      if (e[i] != 0) term = target.mul(term, power(i - first, e[i]));
    acc = target.add(acc, term);
  }
  return target.mul(acc, target.from_fraction(FpPoly(p(), 1), a.den));
}

FpPoly Algebra::equation_form(const Elem& a) const {
  if (a.num.is_zero()) return a.num;
  const FpPoly g = t_content(a.num, d(), FpPoly());
  return (g.is_one() ? a.num : divide_exact(a.num, g)).monic();
}

std::string Algebra::format(const Elem& a) const {
  const std::string num = gkit::format_poly(a.num, names_);
  if (a.den.is_one()) return num;
  const std::string den = gkit::format_poly(a.den, names_);
  const bool wrap_num = a.num.size() > 1;
  const bool wrap_den = a.den.size() > 1 || a.den.leading_term().coeff != 1 ||
                        a.den.leading_term().mono.degree() > 1;
  return (wrap_num ? "(" + num + ")" : num) + "/" + (wrap_den ? "(" + den + ")" : den);
}

}  // namespace gkit
