#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gkit/base.hpp"

namespace gkit {

// Polynomial in x_1..x_v with coefficients in A.
struct APoly {
  struct Term {
    std::vector<uint32_t> exps;
    BaseElem coeff;
  };
  std::vector<Term> terms;
};

// f(values) computed in `ring` (coefficients of f live over k, which embeds
// in the ring's algebra).
BaseElem evaluate(const BaseRing& ring, const APoly& f, const std::vector<BaseElem>& values);

// X = Spec A[x_1..x_v] / (f_1..f_w).
struct AffinePresentation {
  BasePtr base;
  std::vector<std::string> vars;
  std::vector<APoly> eqs;
};

struct GreenbergLimits {
  size_t monomial_cap = 20000;
  size_t symbol_cap = 5000;
  size_t jobs = 1;

  // Defaults overridden by GKIT_MONOMIAL_CAP / GKIT_SYMBOL_CAP.
  static GreenbergLimits from_env();
};

// A polynomial system over k. For stage 0 the symbols are the coordinates
// z<lambda>.<j>.<i1_.._id>.<w> of the twisted Greenberg algebra; every
// further stage is one Weil restriction along Frobenius.
struct GreenbergPresentation {
  size_t stage = 0;
  AlgebraPtr ring;  // k[symbols]
  std::vector<FpPoly> equations;
  // One entry per stage: how each symbol of the previous stage was split.
  std::vector<std::string> substitutions;

  const std::vector<std::string>& symbols() const { return ring->symbol_names(); }
  std::vector<std::string> equation_strings() const;
};

// Symbol names in (lambda, j, i, w) order.
std::vector<std::string> greenberg_symbols(const AffinePresentation& x);

// Generic point of h(Q) for Q = k[greenberg_symbols(x)].
std::vector<BaseElem> generic_point(const AffinePresentation& x, const BaseRing& ring);

// Canonical coordinates of f at the generic point, ordered by Cohen position
// j, then multi-index i, then pi-component w.
std::vector<Elem> transform_polynomial(const AffinePresentation& x, const BaseRing& ring, const APoly& f);

GreenbergPresentation greenberg_transform(const AffinePresentation& x, size_t stage = 0,
                                          const GreenbergLimits& limits = {});

// X(A) -> Gr(X)(k): the canonical coordinates of the entries of P.
// NotASolution unless every f(P) = 0.
std::vector<Elem> point_to_coords(const AffinePresentation& x, const GreenbergPresentation& g,
                                  const std::vector<BaseElem>& point);
// Gr(X)(k) -> X(A). NotASolution when the rebuilt point misses an equation.
std::vector<BaseElem> coords_to_point(const AffinePresentation& x, const std::vector<Elem>& coords);

// Q^(p) = Q[T_1..T_d] / (T_j^p - t_j); an element is its coefficient vector
// on the monomials T^i, i in [0, p-1]^d (flattened lexicographically).
class FrobeniusTwist {
 public:
  using Elem = std::vector<gkit::Elem>;

  explicit FrobeniusTwist(AlgebraPtr q);

  const AlgebraPtr& algebra() const { return q_; }
  size_t size() const { return size_; }
  Elem constant(const gkit::Elem& c) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, uint64_t k) const;

 private:
  AlgebraPtr q_;
  size_t size_;
};

// One Weil restriction along Frobenius: z -> sum_i z.s<i> T^i, each equation
// replaced by its p^d coefficients on the basis T^i.
GreenbergPresentation weil_restrict(const GreenbergPresentation& g, const GreenbergLimits& limits = {});

// Digit 0 of the p-basis expansion (left inverse to Frobenius on G_a) and the
// remaining p^d - 1 digits.
Elem ga_frob_section(const Algebra& q, const Elem& f);
std::vector<Elem> ga_frob_coker_coords(const Algebra& q, const Elem& f);

enum class GroupKind { Additive, Multiplicative };

// Kernel of G(A / I^(i+2)) -> G(A / I^(i+1)) for G = G_a or G_m, matched with
// I^(i+1) / I^(i+2) through the digit at i+1.
struct KernelReport {
  GroupKind group = GroupKind::Additive;
  size_t i = 0;
  size_t expected_rank = 0;  // rank of I^(i+1)/I^(i+2) over k
  size_t kernel_rank = 0;    // 1 when the kernel is a copy of k, else 0
  // Greenberg coordinates of the kernel: position j and pi-component w of
  // the single graded piece, and its number of Cohen coordinates.
  size_t position = 0;
  size_t component = 0;
  size_t coordinate_count = 0;
  size_t points_checked = 0;
  bool points_ok = true;
  bool symbolic_ok = true;
  std::string isomorphism;
};

KernelReport graded_kernel_check(GroupKind group, const BasePtr& base, size_t i, uint64_t seed = 1,
                                 size_t samples = 10);

}  // namespace gkit
