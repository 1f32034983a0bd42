#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gkit {

// Exponent vector with trailing zeros trimmed, so monomials over different
// numbers of variables compare and multiply without padding.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<uint32_t> exponents);

  static Monomial variable(size_t index, uint32_t power = 1);

  uint32_t degree() const { return degree_; }
  uint32_t exponent(size_t var) const { return var < exps_.size() ? exps_[var] : 0; }
  size_t width() const { return exps_.size(); }
  const std::vector<uint32_t>& exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  // Exact quotient; caller guarantees divides().
  Monomial operator/(const Monomial& other) const;
  Monomial with_exponent(size_t var, uint32_t e) const;

  // Graded lexicographic order.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }

  size_t hash() const;

 private:
  void trim();

  std::vector<uint32_t> exps_;
  uint32_t degree_ = 0;
};

struct MonomialHash {
  size_t operator()(const Monomial& m) const { return m.hash(); }
};

uint32_t fp_inverse(uint32_t a, uint32_t p);

// Sparse multivariate polynomial over F_p. Terms are kept sorted by
// decreasing graded-lex monomial with nonzero coefficients in [1, p-1].
class FpPoly {
 public:
  struct Term {
    Monomial mono;
    uint32_t coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  FpPoly() = default;
  explicit FpPoly(uint32_t p) : p_(p) {}
  FpPoly(uint32_t p, int64_t constant);
  FpPoly(uint32_t p, Monomial mono, uint32_t coeff = 1);

  // Builds a polynomial from unsorted terms with possibly repeated monomials.
  static FpPoly from_terms(uint32_t p, std::vector<Term> terms);
  static FpPoly variable(uint32_t p, size_t index, uint32_t power = 1) {
    return FpPoly(p, Monomial::variable(index, power));
  }

  uint32_t prime() const { return p_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }
  // Value of the constant term.
  uint32_t constant_term() const;
  const Term& leading_term() const { return terms_.front(); }

  uint32_t degree_in(size_t var) const;
  uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  // Largest variable index that occurs, or -1 for constants.
  int max_variable() const;
  // True when every monomial only involves variables with index < bound.
  bool only_variables_below(size_t bound) const;

  FpPoly operator-() const;
  FpPoly operator+(const FpPoly& other) const;
  FpPoly operator-(const FpPoly& other) const;
  FpPoly operator*(const FpPoly& other) const;
  FpPoly& operator+=(const FpPoly& other) { return *this = *this + other; }
  FpPoly& operator-=(const FpPoly& other) { return *this = *this - other; }
  FpPoly& operator*=(const FpPoly& other) { return *this = *this * other; }

  FpPoly scaled(uint32_t c) const;
  FpPoly times_monomial(const Monomial& m, uint32_t c = 1) const;
  FpPoly pow(uint64_t e) const;
  // Leading coefficient forced to 1 (zero stays zero).
  FpPoly monic() const;

  // Applies a monomial map that is injective on the support; terms are
  // re-sorted afterwards.
  FpPoly map_monomials(const std::function<Monomial(const Monomial&)>& f) const;

  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.terms_ == b.terms_; }

 private:
  uint32_t add_mod(uint32_t a, uint32_t b) const { return (a + b) % p_; }

  uint32_t p_ = 0;
  std::vector<Term> terms_;
};

// Human-readable form, e.g. "t^3 + 2*t*y + 1". names[i] names variable i;
// variables beyond the table print as x<i>.
std::string format_poly(const FpPoly& f, const std::vector<std::string>& names);

}  // namespace gkit
