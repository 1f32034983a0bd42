#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gkit/polynomial.hpp"

namespace gkit {

// p, the p-basis t(1)..t(d) and their names. d = 0 is the prime field.
struct PrimeParams {
  uint32_t p = 2;
  std::vector<std::string> pbasis;

  size_t d() const { return pbasis.size(); }
};

// An element num/den of an algebra over k = F_p(t_1..t_d). The denominator
// only involves the p-basis variables and is monic; gcd(den, t-content of
// num) = 1, so equal values have equal representations.
struct Elem {
  FpPoly num;
  FpPoly den;

  friend bool operator==(const Elem&, const Elem&) = default;
};

// Multi-indices i in [0, base-1]^d, flattened with the first component most
// significant (lexicographic enumeration).
size_t flatten_index(std::span<const uint32_t> index, uint32_t base);
std::vector<uint32_t> unflatten_index(size_t flat, uint32_t base, size_t d);
size_t ipow(size_t base, size_t exp);

// Ring context for the coefficient algebras used throughout:
//   k = F_p(t_1..t_d),
//   Q = k[y]/(g) for a monic g with coefficients in F_p[t] (etale when g is
//       separable; the only case with digit expansion),
//   and polynomial rings over either in named symbols z_1..z_s.
// Variable layout inside FpPoly: t_1..t_d, then y (if present), then symbols.
//
// The Frobenius twist sigma raises coefficients in k or Q to the p-th power
// and fixes symbols; on symbol-free elements it is the Frobenius x -> x^p.
class Algebra {
 public:
  static std::shared_ptr<const Algebra> field(PrimeParams params);

  // k[y]/(g). g is given as an element of k[y] (variable y at index d).
  // Throws NotSeparable when require_separable and gcd(g, g') != 1.
  static std::shared_ptr<const Algebra> monogenic(const std::shared_ptr<const Algebra>& k,
                                                  const FpPoly& g, bool require_separable = true);

  std::shared_ptr<const Algebra> with_symbols(std::vector<std::string> names) const;
  // The underlying field k (drops y and symbols).
  std::shared_ptr<const Algebra> base_field() const;

  uint32_t p() const { return params_.p; }
  size_t d() const { return params_.d(); }
  const PrimeParams& params() const { return params_; }
  bool has_generator() const { return modulus_.has_value(); }
  bool is_etale() const { return has_generator() && separable_; }
  size_t generator_degree() const { return has_generator() ? modulus_->degree_in(d()) : 1; }
  const FpPoly& modulus() const { return *modulus_; }
  size_t num_symbols() const { return symbols_.size(); }
  const std::vector<std::string>& symbol_names() const { return symbols_; }
  size_t generator_index() const { return d(); }
  size_t symbol_index(size_t s) const { return d() + (has_generator() ? 1 : 0) + s; }
  size_t first_symbol_index() const { return symbol_index(0); }
  const std::vector<std::string>& variable_names() const { return names_; }

  // Cap on numerator terms after a multiplication (ResourceLimit beyond it);
  // 0 disables the check.
  size_t term_cap() const { return term_cap_; }
  std::shared_ptr<const Algebra> with_term_cap(size_t cap) const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(int64_t v) const;
  Elem from_poly(FpPoly num) const;
  Elem from_fraction(FpPoly num, FpPoly den) const;
  Elem pbasis(size_t i) const;  // t(i+1)
  Elem generator() const;       // y
  Elem symbol(size_t s) const;
  Elem monomial(const Monomial& m) const { return from_poly(FpPoly(p(), m)); }

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, uint64_t e) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const { return a.num.is_zero(); }
  bool is_one(const Elem& a) const { return a.num.is_one() && a.den.is_one(); }
  uint32_t characteristic() const { return p(); }

  // x^p.
  Elem frobenius(const Elem& a) const;
  // sigma^n: coefficients to the p^n-th power, symbols fixed.
  Elem twist(const Elem& a, size_t n = 1) const;
  bool involves_symbols(const Elem& a) const;
  bool involves_generator(const Elem& a) const;

  // Digits f_m, m in [0, p^n - 1]^d (flattened, see flatten_index), with
  //   a = sum_m twist(f_m, n) * t^m.
  // Unique. On symbol-free elements this is the n-fold p-basis expansion
  // a = sum_m f_m^(p^n) t^m. Requires k, an etale Q, or symbols over these.
  std::vector<Elem> expand(const Elem& a, size_t n = 1) const;
  // g with g^p = a; NotAPthPower if a is not a p-th power.
  Elem pth_root(const Elem& a) const;

  // Substitutes symbol s -> values[s] and reads the result in `target`
  // (which must share k and the generator).
  Elem substitute(const Elem& a, std::span<const Elem> values, const Algebra& target) const;

  // Numerator made primitive in k and monic; the canonical "= 0" form of an
  // equation. Denominators and t-contents are units of k[symbols].
  FpPoly equation_form(const Elem& a) const;

  std::string format(const Elem& a) const;
  std::string format_poly(const FpPoly& f) const { return gkit::format_poly(f, names_); }

 private:
  Algebra() = default;
  void rebuild_names();
  Elem normalize(FpPoly num, FpPoly den) const;
  FpPoly reduce_modulus(FpPoly f) const;
  std::vector<Elem> expand_once(const Elem& a) const;
  std::vector<Elem> expand_field_once(const Elem& a) const;

  PrimeParams params_;
  std::optional<FpPoly> modulus_;
  bool separable_ = false;
  // Inverse of the Frobenius matrix of Q on the power basis (etale case),
  // row-major, entries in k.
  std::vector<Elem> frobenius_inverse_;
  std::vector<std::string> symbols_;
  std::vector<std::string> names_;
  size_t term_cap_ = 0;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

}  // namespace gkit
