#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "gkit/witt.hpp"

namespace gkit {

namespace {

using Accum = std::unordered_map<Monomial, mpz_class, MonomialHash>;

ZPoly finish(Accum acc) {
  ZPoly out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.push_back({m, std::move(c)});
  std::sort(out.begin(), out.end(), [](const ZTerm& a, const ZTerm& b) { return a.mono > b.mono; });
  return out;
}

void add_into(Accum& acc, const ZPoly& f, const mpz_class& scale) {
  for (const auto& t : f) acc[t.mono] += scale * t.coeff;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  Accum acc;
  acc.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) acc[x.mono * y.mono] += x.coeff * y.coeff;
  return finish(std::move(acc));
}

ZPoly pow(const ZPoly& f, uint64_t e) {
  ZPoly r{{Monomial(), 1}};
  ZPoly base = f;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return r;
}

ZPoly variable(size_t v) { return {{Monomial::variable(v), 1}}; }

// w_n of the vector whose i-th entry is entries[i].
Accum ghost(const std::vector<ZPoly>& entries, size_t n, uint32_t p) {
  Accum acc;
  mpz_class pi = 1;
  for (size_t i = 0; i <= n; ++i) {
    add_into(acc, pow(entries[i], ipow(p, n - i)), pi);
    pi *= p;
  }
  return acc;
}

// Solves w_n(out) = target_n for out_n given out_0..out_{n-1}; the division
// by p^n must be exact.
ZPoly solve_next(Accum target, const std::vector<ZPoly>& out, size_t n, uint32_t p) {
  mpz_class pi = 1;
  for (size_t i = 0; i < n; ++i) {
    add_into(target, pow(out[i], ipow(p, n - i)), -pi);
    pi *= p;
  }
  ZPoly r = finish(std::move(target));
  for (auto& t : r) {
    check_internal(mpz_divisible_p(t.coeff.get_mpz_t(), pi.get_mpz_t()) != 0,
                   "Witt structure polynomial: inexact division by p^n");
    mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), pi.get_mpz_t());
  }
  return r;
}

FpPoly reduce(const ZPoly& f, uint32_t p) {
  std::vector<FpPoly::Term> terms;
  for (const auto& t : f) {
    mpz_class c = t.coeff % p;
    if (c < 0) c += p;
    if (c != 0) terms.push_back({t.mono, static_cast<uint32_t>(c.get_ui())});
  }
  return FpPoly::from_terms(p, std::move(terms));
}

std::shared_ptr<StructurePolys> build(uint32_t p, size_t length) {
  auto s = std::make_shared<StructurePolys>();
  s->p = p;
  s->length = length;
  std::vector<ZPoly> x, y;
  for (size_t i = 0; i < length; ++i) {
    x.push_back(variable(2 * i));
    y.push_back(variable(2 * i + 1));
  }
  for (size_t n = 0; n < length; ++n) {
    Accum gx = ghost(x, n, p), gy = ghost(y, n, p);

    Accum sum = gx;
    for (auto& [m, c] : gy) sum[m] += c;
    s->sum.push_back(solve_next(std::move(sum), s->sum, n, p));

    ZPoly prod = mul(finish(gx), finish(gy));
    Accum prod_acc;
    add_into(prod_acc, prod, 1);
    s->prod.push_back(solve_next(std::move(prod_acc), s->prod, n, p));

    Accum neg;
    add_into(neg, finish(ghost(x, n, p)), -1);
    s->neg.push_back(solve_next(std::move(neg), s->neg, n, p));

    if (n + 1 < length) s->frob.push_back(solve_next(ghost(x, n + 1, p), s->frob, n, p));
  }
  for (size_t n = 0; n < length; ++n) {
    s->sum_mod.push_back(reduce(s->sum[n], p));
    s->prod_mod.push_back(reduce(s->prod[n], p));
    s->neg_mod.push_back(reduce(s->neg[n], p));
  }
  return s;
}

}  // namespace

std::shared_ptr<const StructurePolys> StructurePolys::get(uint32_t p, size_t length) {
  if (length == 0) fail(ErrorCode::InvalidArgument, "Witt length must be positive");
  if (ipow(p, length - 1) > 27)
    fail(ErrorCode::ResourceLimit, "Witt structure polynomials for p=" + std::to_string(p) + ", N=" +
                                       std::to_string(length) + " are beyond the supported size");
  static std::mutex mutex;
  static std::map<std::pair<uint32_t, size_t>, std::shared_ptr<const StructurePolys>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{p, length}];
  if (!slot) slot = build(p, length);
  return slot;
}

size_t StructurePolys::term_count() const {
  size_t n = 0;
  for (const auto* list : {&sum, &prod, &neg, &frob})
    for (const auto& f : *list) n += f.size();
  return n;
}

std::vector<mpz_class> witt_of_integer(const mpz_class& n, uint32_t p, size_t length) {
  std::vector<mpz_class> a;
  for (size_t k = 0; k < length; ++k) {
    mpz_class rest = n, pi = 1;
    for (size_t i = 0; i < k; ++i) {
      mpz_class power;
      mpz_pow_ui(power.get_mpz_t(), a[i].get_mpz_t(), ipow(p, k - i));
      rest -= pi * power;
      pi *= p;
    }
    check_internal(mpz_divisible_p(rest.get_mpz_t(), pi.get_mpz_t()) != 0, "Witt vector of an integer");
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), pi.get_mpz_t());
    a.push_back(rest);
  }
  return a;
}

std::string format_zpoly(const ZPoly& f, const std::vector<std::string>& names) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f) {
    mpz_class c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    bool need_star = false;
    if (c != 1 || t.mono.is_one()) {
      os << c.get_str();
      need_star = true;
    }
    for (size_t v = 0; v < t.mono.width(); ++v) {
      const uint32_t e = t.mono.exponent(v);
      if (e == 0) continue;
      if (need_star) os << '*';
      os << (v < names.size() ? names[v] : "x" + std::to_string(v));
      if (e > 1) os << '^' << e;
      need_star = true;
    }
  }
  return os.str();
}

std::vector<std::pair<Elem, Elem>> vn_decompose(const Algebra& q, const Elem& y, size_t n) {
  const auto digits = q.expand(y, n);
  const uint32_t base = static_cast<uint32_t>(ipow(q.p(), n));
  std::vector<std::pair<Elem, Elem>> out;
  for (size_t m = 0; m < digits.size(); ++m) {
    if (q.is_zero(digits[m])) continue;
    const auto idx = unflatten_index(m, base, q.d());
    out.emplace_back(q.monomial(Monomial(idx)), digits[m]);
  }
  return out;
}

}  // namespace gkit
