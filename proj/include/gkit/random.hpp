#pragma once

#include <random>

#include "gkit/base.hpp"

namespace gkit {

// Seeded samplers used by the self-test and the kernel/units checks. All
// draws go through std::mt19937_64 so results depend only on the seed.
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }
  uint64_t below(uint64_t n) { return n == 0 ? 0 : rng_() % n; }

  // Polynomial in variables [0, nvars) with degree <= max_deg per variable.
  FpPoly poly(uint32_t p, size_t nvars, uint32_t max_deg, size_t max_terms) {
    std::vector<FpPoly::Term> terms;
    const size_t n = below(max_terms + 1);
    for (size_t i = 0; i < n; ++i) {
      std::vector<uint32_t> e(nvars);
      for (auto& x : e) x = static_cast<uint32_t>(below(max_deg + 1));
      terms.push_back({Monomial(std::move(e)), static_cast<uint32_t>(1 + below(p - 1))});
    }
    return FpPoly::from_terms(p, std::move(terms));
  }

  // Element of a symbol-free algebra; fractions only over the p-basis.
  Elem elem(const Algebra& a, uint32_t max_deg = 2, size_t max_terms = 3, bool fractions = false) {
    const size_t nvars = a.d() + (a.has_generator() ? 1 : 0);
    FpPoly num = poly(a.p(), nvars, max_deg, max_terms);
    if (!fractions || a.d() == 0 || below(2) == 0) return a.from_poly(num);
    FpPoly den = poly(a.p(), a.d(), 1, 2);
    if (den.is_zero()) den = FpPoly(a.p(), 1);
    return a.from_fraction(num, den);
  }

  Elem nonzero_elem(const Algebra& a, uint32_t max_deg = 2) {
    for (;;) {
      Elem f = elem(a, max_deg, 3);
      if (!a.is_zero(f)) return f;
    }
  }

  CohenElem cohen(const CohenRing& ring, uint32_t max_deg = 1) {
    CohenElem c = ring.zero();
    for (auto& level : c.coords)
      for (auto& x : level)
        if (below(3) != 0) x = elem(*ring.algebra(), max_deg, 2);
    return c;
  }

  BaseElem base(const BaseRing& ring, uint32_t max_deg = 1) {
    std::vector<CohenElem> cs;
    for (size_t w = 0; w < ring.e(); ++w) cs.push_back(cohen(ring.cohen(), max_deg));
    return ring.from_components(cs);
  }

  // Element of I^v with every digit from v on drawn at random.
  BaseElem base_in_ideal(const BaseRing& ring, size_t v, uint32_t max_deg = 1) {
    BaseElem x = ring.zero();
    for (size_t l = v; l < ring.base()->nilpotency(); ++l)
      x = ring.add(x, ring.digit_lift(elem(*ring.algebra(), max_deg, 2), l));
    return x;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gkit
