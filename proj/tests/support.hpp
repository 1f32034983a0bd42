#pragma once

#include <ostream>
#include <random>

#include "gkit/algebra.hpp"

namespace gkit {

// Readable gtest failure messages.
inline void PrintTo(const Elem& e, std::ostream* os) {
  *os << format_poly(e.num, {});
  if (!e.den.is_one()) *os << " / (" << format_poly(e.den, {}) << ")";
}

}  // namespace gkit

namespace gkit::testing {

// Random polynomial in variables [0, nvars) with bounded degree and terms.
inline FpPoly random_poly(std::mt19937_64& rng, uint32_t p, size_t nvars, uint32_t max_deg, size_t max_terms) {
  std::uniform_int_distribution<uint32_t> coeff(1, p - 1), deg(0, max_deg);
  std::uniform_int_distribution<size_t> count(0, max_terms);
  std::vector<FpPoly::Term> terms;
  const size_t n = count(rng);
  for (size_t i = 0; i < n; ++i) {
    std::vector<uint32_t> e(nvars);
    for (auto& x : e) x = deg(rng);
    terms.push_back({Monomial(std::move(e)), coeff(rng)});
  }
  return FpPoly::from_terms(p, std::move(terms));
}

// Random element of `a` (no symbols): polynomial numerator, optionally a
// nonconstant denominator in the p-basis.
inline Elem random_elem(std::mt19937_64& rng, const Algebra& a, uint32_t max_deg = 3, size_t max_terms = 3,
                        bool fractions = true) {
  const size_t nvars = a.d() + (a.has_generator() ? 1 : 0);
  FpPoly num = random_poly(rng, a.p(), nvars, max_deg, max_terms);
  if (!fractions || a.d() == 0 || rng() % 2 == 0) return a.from_poly(num);
  FpPoly den = random_poly(rng, a.p(), a.d(), 2, 2);
  if (den.is_zero()) den = FpPoly(a.p(), 1);
  return a.from_fraction(num, den);
}

inline AlgebraPtr field(uint32_t p, size_t d) {
  PrimeParams params{p, {}};
  for (size_t i = 0; i < d; ++i) params.pbasis.push_back(d == 1 ? "t" : "t" + std::to_string(i + 1));
  return Algebra::field(params);
}

// k[y]/(y^2 + y + t) over F_p(t).
inline AlgebraPtr artin_schreier(uint32_t p) {
  auto k = field(p, 1);
  FpPoly g = FpPoly::variable(p, 1, 2) + FpPoly::variable(p, 1) + FpPoly::variable(p, 0);
  return Algebra::monogenic(k, g);
}

// Random canonical coordinates (small entries).
template <class Ring>
auto random_cohen(std::mt19937_64& rng, const Ring& ring, uint32_t max_deg = 2) {
  auto c = ring.zero();
  for (auto& level : c.coords)
    for (auto& x : level)
      if (rng() % 3 != 0) x = random_elem(rng, *ring.algebra(), max_deg, 2, false);
  return c;
}

}  // namespace gkit::testing
