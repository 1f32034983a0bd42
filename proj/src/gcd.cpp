#include "gkit/gcd.hpp"

#include <algorithm>

#include "gkit/error.hpp"

namespace gkit {

namespace {

using UPoly = std::vector<FpPoly>;  // coefficients over F_p[other vars]

void trim(UPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

// Pseudo-remainder of a by b (both nonzero, as polynomials in the main variable).
UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const FpPoly& lc = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const size_t shift = a.size() - b.size();
    const FpPoly lead = a.back();
    for (auto& c : a) c = c * lc;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= lead * b[i];
    trim(a);
  }
  return a;
}

FpPoly content(const UPoly& u) {
  FpPoly g;
  for (const auto& c : u) {
    g = g.prime() == 0 ? c.monic() : poly_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

UPoly primitive_part(const UPoly& u) {
  const FpPoly c = content(u);
  if (c.is_one()) return u;
  UPoly r;
  r.reserve(u.size());
  for (const auto& x : u) r.push_back(divide_exact(x, c));
  return r;
}

}  // namespace

std::vector<FpPoly> coefficients_in(const FpPoly& f, size_t var) {
  std::vector<std::vector<FpPoly::Term>> buckets(f.degree_in(var) + 1);
  for (const auto& t : f.terms()) {
    const uint32_t e = t.mono.exponent(var);
    buckets[e].push_back({t.mono.with_exponent(var, 0), t.coeff});
  }
  std::vector<FpPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(FpPoly::from_terms(f.prime(), std::move(b)));
  return out;
}

FpPoly from_coefficients(const std::vector<FpPoly>& coeffs, size_t var, uint32_t p) {
  std::vector<FpPoly::Term> terms;
  for (size_t e = 0; e < coeffs.size(); ++e)
    for (const auto& t : coeffs[e].terms())
      terms.push_back({t.mono.with_exponent(var, static_cast<uint32_t>(e)), t.coeff});
  return FpPoly::from_terms(p, std::move(terms));
}

std::pair<FpPoly, FpPoly> divide_with_remainder(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  const uint32_t p = a.prime() ? a.prime() : b.prime();
  const auto& lead = b.leading_term();
  const uint32_t lead_inv = fp_inverse(lead.coeff, p);
  std::vector<FpPoly::Term> quotient;
  std::vector<FpPoly::Term> remainder;
  FpPoly r = a;
  while (!r.is_zero()) {
    const auto& t = r.leading_term();
    if (lead.mono.divides(t.mono)) {
      const Monomial m = t.mono / lead.mono;
      const uint32_t c = static_cast<uint32_t>((uint64_t{t.coeff} * lead_inv) % p);
      quotient.push_back({m, c});
      r -= b.times_monomial(m, c);
    } else {
      remainder.push_back(t);
      r -= FpPoly(p, t.mono, t.coeff);
    }
  }
  return {FpPoly::from_terms(p, std::move(quotient)), FpPoly::from_terms(p, std::move(remainder))};
}

FpPoly divide_exact(const FpPoly& a, const FpPoly& b) {
  if (b.is_one()) return a;
  auto [q, r] = divide_with_remainder(a, b);
  check_internal(r.is_zero(), "divide_exact: inexact polynomial division");
  return q;
}

FpPoly poly_gcd(const FpPoly& a, const FpPoly& b) {
  const uint32_t p = a.prime() ? a.prime() : b.prime();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return FpPoly(p, 1);
  if (a == b) return a.monic();

  const int va = a.max_variable(), vb = b.max_variable();
  const size_t v = static_cast<size_t>(std::max(va, vb));
  const uint32_t da = a.degree_in(v), db = b.degree_in(v);
  if (da == 0) return poly_gcd(a, content(coefficients_in(b, v)));
  if (db == 0) return poly_gcd(content(coefficients_in(a, v)), b);

  UPoly ua = coefficients_in(a, v), ub = coefficients_in(b, v);
  const FpPoly ca = content(ua), cb = content(ub);
  const FpPoly c = poly_gcd(ca, cb);
  ua = primitive_part(ua);
  ub = primitive_part(ub);
  if (ua.size() < ub.size()) std::swap(ua, ub);

  while (true) {
    UPoly r = pseudo_remainder(ua, ub);
    if (r.empty()) break;
    if (r.size() == 1) {
      ub = UPoly{FpPoly(p, 1)};
      break;
    }
    ua = std::move(ub);
    ub = primitive_part(r);
  }
  const FpPoly g = from_coefficients(primitive_part(ub), v, p);
  return (c * g).monic();
}

}  // namespace gkit
