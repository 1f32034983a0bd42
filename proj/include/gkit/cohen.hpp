#pragma once

#include <vector>

#include "gkit/algebra.hpp"
#include "gkit/witt.hpp"

namespace gkit {

// Canonical coordinates of an element of C_{n+1}(Q): coords[j][flat(i)] is
// x_j(i) for Witt position j in [0, n] and i in [0, p^(n-j) - 1]^d.
struct CohenElem {
  size_t n = 0;
  std::vector<std::vector<Elem>> coords;

  size_t level() const { return n + 1; }
  friend bool operator==(const CohenElem&, const CohenElem&) = default;
};

// C_{n+1}(Q) realized inside W_{n+1}(Q): the element with coordinates x is
//   sum_{j,i} V^j [ sigma^n(x_j(i)) * t^(i p^j) ]    (Witt sum),
// where sigma^n twists coefficients by p^n and fixes symbols. Every element
// of the image has exactly one such form.
class CohenRing {
 public:
  using Witt = WittArithmetic<AlgebraRing>;
  using Vec = Witt::Vec;

  CohenRing(AlgebraPtr q, size_t n);

  const AlgebraPtr& algebra() const { return q_; }
  const Witt& witt() const { return witt_; }
  size_t n() const { return n_; }
  size_t level() const { return n_ + 1; }
  uint32_t p() const { return q_->p(); }
  size_t d() const { return q_->d(); }
  // Number of coordinates at position j: p^((n-j)d).
  size_t width(size_t j) const { return ipow(ipow(p(), n_ - j), d()); }
  // Total coordinate count sum_j p^((n-j)d): the dimension of C_{n+1}.
  size_t dimension() const;

  CohenElem zero() const;
  CohenElem one() const;
  CohenElem from_int(int64_t v) const;
  // x_0 = n-fold digits of f, higher positions zero; to_witt gives
  // (f, 0, ..) modulo carries, and its residue is f.
  CohenElem level0_lift(const Elem& f) const;
  // Single coordinate x_j(i) = value.
  CohenElem coordinate(size_t j, size_t flat_i, const Elem& value) const;

  Vec to_witt(const CohenElem& c) const;
  // NotInCohen when w is not in the image.
  CohenElem extract(const Vec& w) const;

  CohenElem add(const CohenElem& a, const CohenElem& b) const;
  CohenElem sub(const CohenElem& a, const CohenElem& b) const;
  CohenElem neg(const CohenElem& a) const;
  CohenElem mul(const CohenElem& a, const CohenElem& b) const;
  CohenElem scale(const CohenElem& a, int64_t k) const;
  bool is_zero(const CohenElem& a) const;

  // Entry 0 of to_witt: sum_i sigma^n(x_0(i)) t^i, the image in Q = C/(p).
  Elem residue(const CohenElem& a) const;
  // Largest v with a in p^v C (first position with a nonzero coordinate);
  // level() for zero.
  size_t valuation(const CohenElem& a) const;

  // Reduction C_{n+1} -> C_{new_level}.
  CohenElem truncate(const CohenElem& a, size_t new_level) const;

  void check(const CohenElem& a) const;

  // Coordinates at positions < length read off a Witt vector of that length
  // with twist n; the index range at position j is [0, p^(n-j) - 1]^d.
  std::vector<std::vector<Elem>> extract_coords(Vec w, size_t length) const;

 private:
  Vec level_part(size_t j, const std::vector<Elem>& xs, size_t length) const;

  AlgebraPtr q_;
  size_t n_;
  Witt witt_;
};

// x_j(i) at level m+1 becomes x_{j+(n-m)}(i) at level n+1. Additive and
// injective; LevelMismatch when the target is shorter.
CohenElem ver_embed(const CohenRing& target, const CohenElem& c);

// c in C_{n+1}(Q) with p^e c = target, where target is supported on
// positions >= e. NotInImage otherwise. Q must be k or etale.
CohenElem solve_p_division(const CohenRing& ring, const CohenElem& target, size_t e);

}  // namespace gkit
