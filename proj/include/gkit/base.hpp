#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gkit/cohen.hpp"

namespace gkit {

// A = C_m(k) (unramified) or A = C_m(k)[pi]/(E) with
//   E = pi^e + a_{e-1} pi^{e-1} + .. + a_0,  a_l in p C_m(k),
//   a_0 = p * unit (when m >= 2).
// Unramified bases are handled as the e = 1 case with E = pi - p.
// I = (pi) is the maximal ideal, I^R = 0 with R = m e, and r = R - 1.
class ArtinianBase {
 public:
  enum class Kind { Unramified, Eisenstein };

  static std::shared_ptr<const ArtinianBase> unramified(AlgebraPtr k, size_t m);
  // coeffs = a_0 .. a_{e-1}, each in C_m(k). NotEisenstein when the
  // conditions above fail.
  static std::shared_ptr<const ArtinianBase> eisenstein(AlgebraPtr k, size_t m, std::vector<CohenElem> coeffs);

  Kind kind() const { return kind_; }
  const AlgebraPtr& field() const { return k_; }
  uint32_t p() const { return k_->p(); }
  size_t m() const { return m_; }
  size_t e() const { return coeffs_.size(); }
  // R with I^R = 0 and I^(R-1) != 0.
  size_t nilpotency() const { return m_ * e(); }
  size_t r() const { return nilpotency() - 1; }
  const std::vector<CohenElem>& eisenstein_coeffs() const { return coeffs_; }
  const CohenRing& cohen() const { return cohen_; }
  // Cohen summand levels of A as a C_m(k)-module: [m] * e.
  std::vector<size_t> decompose_module() const { return std::vector<size_t>(e(), m_); }
  // rho in k with p = rho * pi^e modulo I^(e+1), i.e. -1/res(a_0 / p).
  const Elem& rho() const { return rho_; }

  // A / I^j for j = e * j' (any j for unramified bases).
  std::shared_ptr<const ArtinianBase> quotient(size_t j) const;
  std::string describe() const;

 private:
  ArtinianBase(Kind kind, AlgebraPtr k, size_t m, std::vector<CohenElem> coeffs);

  Kind kind_;
  AlgebraPtr k_;
  size_t m_;
  std::vector<CohenElem> coeffs_;
  CohenRing cohen_;
  Elem rho_;
};

using BasePtr = std::shared_ptr<const ArtinianBase>;

// Element sum_w c_w pi^w of A (x) C_m(Q); each c_w is kept as its Witt
// vector (length m) over Q. The representation is canonical.
struct BaseElem {
  std::vector<std::vector<Elem>> comps;
  friend bool operator==(const BaseElem&, const BaseElem&) = default;
};

// Arithmetic in h(Q) = C_m(Q)^e with pi^e reduced through E. For Q = k this
// is A itself; for Q = k[symbols] it is the twisted Greenberg algebra.
class BaseRing {
 public:
  using Vec = std::vector<Elem>;

  BaseRing(BasePtr base, AlgebraPtr q);

  const BasePtr& base() const { return base_; }
  const AlgebraPtr& algebra() const { return q_; }
  const CohenRing& cohen() const { return cohen_; }
  size_t e() const { return base_->e(); }
  size_t m() const { return base_->m(); }

  BaseElem zero() const;
  BaseElem one() const;
  BaseElem from_int(int64_t v) const;
  BaseElem pi() const;
  // Cohen element over k or over Q placed in component w.
  BaseElem from_cohen(const CohenElem& c, size_t w = 0) const;
  BaseElem from_components(const std::vector<CohenElem>& cs) const;
  // Level-0 lift of f in Q (teich(t) for monomials f = t^a).
  BaseElem lift(const Elem& f) const;

  BaseElem add(const BaseElem& a, const BaseElem& b) const;
  BaseElem sub(const BaseElem& a, const BaseElem& b) const;
  BaseElem neg(const BaseElem& a) const;
  BaseElem mul(const BaseElem& a, const BaseElem& b) const;
  BaseElem pow(const BaseElem& a, uint64_t k) const;
  BaseElem scale(const BaseElem& a, int64_t k) const;
  // NotAUnit unless the residue is invertible in Q.
  BaseElem inv(const BaseElem& a) const;
  bool is_zero(const BaseElem& a) const;
  bool equal(const BaseElem& a, const BaseElem& b) const { return a == b; }

  CohenElem component(const BaseElem& a, size_t w) const;
  std::vector<CohenElem> components(const BaseElem& a) const;

  // Image in Q = h(Q)/I.
  Elem residue(const BaseElem& a) const;
  // I-adic valuation min_w (e v_p(c_w) + w); nilpotency() for zero.
  size_t valuation(const BaseElem& a) const;
  // Class of a in I^v / I^(v+1) on the basis pi^v (zero when val > v).
  // Requires val(a) >= v.
  Elem digit(const BaseElem& a, size_t v) const;
  // An element of I^v whose digit at v is f.
  BaseElem digit_lift(const Elem& f, size_t v) const;
  // Canonical representative modulo I^j.
  BaseElem reduce(const BaseElem& a, size_t j) const;

  // C_{N}(k) -> A for N >= m: truncation to C_m(k), then inclusion.
  BaseElem structure_map(const CohenElem& c) const;
  // Reduction A -> A' = A / I^j where target is a BaseRing over a quotient
  // base of this one (same Q).
  BaseElem project(const BaseElem& a, const BaseRing& target) const;

  // Reading through a ring homomorphism Q -> Q' on coefficients (e.g.
  // substituting symbol values); `map` acts on the Witt entries.
  template <class F>
  BaseElem map_entries(const BaseElem& a, F&& f) const {
    BaseElem r = a;
    for (auto& comp : r.comps)
      for (auto& x : comp) x = f(x);
    return r;
  }

  std::string format(const BaseElem& a) const;

 private:
  Vec witt_of(const CohenElem& c) const;

  BasePtr base_;
  AlgebraPtr q_;
  CohenRing cohen_;
  std::vector<Vec> eis_;  // Witt vectors of a_l over Q
};

// Canonical lifting of Q over A. For k or a symbolic Q this is BaseRing
// itself (degree 1); for an etale Q = k[y]/(g) it is A[y]/(g~) with g~ the
// coefficientwise level-0 lift of g. Elements are coefficient vectors in
// the basis 1, y, .., y^(deg-1).
class LiftedAlgebra {
 public:
  using Elem = std::vector<BaseElem>;

  LiftedAlgebra(BasePtr base, AlgebraPtr q);

  const BaseRing& base_ring() const { return ring_; }
  const AlgebraPtr& reduction() const { return q_; }
  size_t degree() const { return degree_; }
  // Coefficients of g~ (monic, leading omitted): g~ = y^deg + sum c_i y^i.
  const std::vector<BaseElem>& modulus() const { return modulus_; }

  Elem zero() const;
  Elem one() const;
  Elem generator() const;
  Elem embed(const BaseElem& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const;
  Elem pow(const Elem& a, uint64_t k) const;
  // Inverse by Newton iteration from a lift of the inverse modulo I.
  Elem inv(const Elem& a) const;
  // Coefficientwise level-0 lift of an element of Q.
  Elem lift(const gkit::Elem& f) const;
  // Reduction modulo I: an element of Q.
  gkit::Elem reduce_mod_i(const Elem& a) const;
  // Image in the lift over A / I^j (same Q), coefficientwise.
  Elem reduce(const Elem& a, const LiftedAlgebra& target) const;

 private:
  BasePtr base_;
  AlgebraPtr q_;
  AlgebraPtr k_;
  BaseRing ring_;
  size_t degree_;
  std::vector<BaseElem> modulus_;
};

}  // namespace gkit
