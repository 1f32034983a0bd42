#include "gkit/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "gkit/error.hpp"

namespace gkit {

Monomial::Monomial(std::vector<uint32_t> exponents) : exps_(std::move(exponents)) { trim(); }

Monomial Monomial::variable(size_t index, uint32_t power) {
  std::vector<uint32_t> e(index + 1, 0);
  e[index] = power;
  return Monomial(std::move(e));
}

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  degree_ = 0;
  for (uint32_t e : exps_) degree_ += e;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  const auto& a = exps_.size() >= other.exps_.size() ? exps_ : other.exps_;
  const auto& b = exps_.size() >= other.exps_.size() ? other.exps_ : exps_;
  r.exps_ = a;
  for (size_t i = 0; i < b.size(); ++i) r.exps_[i] += b[i];
  r.degree_ = degree_ + other.degree_;
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  if (exps_.size() > other.exps_.size()) return false;
  for (size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& other) const {
  std::vector<uint32_t> e = exps_;
  for (size_t i = 0; i < other.exps_.size(); ++i) e[i] -= other.exps_[i];
  return Monomial(std::move(e));
}

Monomial Monomial::with_exponent(size_t var, uint32_t e) const {
  std::vector<uint32_t> x = exps_;
  if (x.size() <= var) x.resize(var + 1, 0);
  x[var] = e;
  return Monomial(std::move(x));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  const size_t n = std::max(a.exps_.size(), b.exps_.size());
  for (size_t i = 0; i < n; ++i) {
    const uint32_t x = a.exponent(i), y = b.exponent(i);
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

size_t Monomial::hash() const {
  size_t h = 0xcbf29ce484222325ULL;
  for (uint32_t e : exps_) h = (h ^ e) * 0x100000001b3ULL;
  return h;
}

uint32_t fp_inverse(uint32_t a, uint32_t p) {
  if (a % p == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in F_p");
  int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    const int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<uint32_t>(t);
}

FpPoly::FpPoly(uint32_t p, int64_t constant) : p_(p) {
  int64_t c = constant % static_cast<int64_t>(p);
  if (c < 0) c += p;
  if (c != 0) terms_.push_back({Monomial(), static_cast<uint32_t>(c)});
}

FpPoly::FpPoly(uint32_t p, Monomial mono, uint32_t coeff) : p_(p) {
  coeff %= p;
  if (coeff != 0) terms_.push_back({std::move(mono), coeff});
}

FpPoly FpPoly::from_terms(uint32_t p, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono > b.mono; });
  FpPoly r(p);
  r.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
      r.terms_.back().coeff = (r.terms_.back().coeff + t.coeff) % p;
    } else {
      if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
      r.terms_.push_back({std::move(t.mono), t.coeff % p});
    }
  }
  if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
  return r;
}

uint32_t FpPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return 0;
}

uint32_t FpPoly::degree_in(size_t var) const {
  uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
  return d;
}

int FpPoly::max_variable() const {
  int v = -1;
  for (const auto& t : terms_) v = std::max(v, static_cast<int>(t.mono.width()) - 1);
  return v;
}

bool FpPoly::only_variables_below(size_t bound) const {
  for (const auto& t : terms_)
    if (t.mono.width() > bound) return false;
  return true;
}

FpPoly FpPoly::operator-() const {
  FpPoly r = *this;
  for (auto& t : r.terms_) t.coeff = p_ - t.coeff;
  return r;
}

FpPoly FpPoly::operator+(const FpPoly& other) const {
  const uint32_t p = p_ ? p_ : other.p_;
  FpPoly r(p);
  r.terms_.reserve(terms_.size() + other.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    const auto c = terms_[i].mono <=> other.terms_[j].mono;
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(other.terms_[j++]);
    } else {
      const uint32_t s = (terms_[i].coeff + other.terms_[j].coeff) % p;
      if (s != 0) r.terms_.push_back({terms_[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < other.terms_.size(); ++j) r.terms_.push_back(other.terms_[j]);
  return r;
}

FpPoly FpPoly::operator-(const FpPoly& other) const { return *this + (-other); }

FpPoly FpPoly::operator*(const FpPoly& other) const {
  const uint32_t p = p_ ? p_ : other.p_;
  if (is_zero() || other.is_zero()) return FpPoly(p);
  if (other.terms_.size() == 1) return times_monomial(other.terms_[0].mono, other.terms_[0].coeff);
  if (terms_.size() == 1) return other.times_monomial(terms_[0].mono, terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : other.terms_)
      prod.push_back({a.mono * b.mono,
                      static_cast<uint32_t>((uint64_t{a.coeff} * b.coeff) % p)});
  return from_terms(p, std::move(prod));
}

FpPoly FpPoly::scaled(uint32_t c) const {
  c %= p_;
  if (c == 0) return FpPoly(p_);
  FpPoly r = *this;
  for (auto& t : r.terms_) t.coeff = static_cast<uint32_t>((uint64_t{t.coeff} * c) % p_);
  return r;
}

FpPoly FpPoly::times_monomial(const Monomial& m, uint32_t c) const {
  c %= p_;
  if (c == 0) return FpPoly(p_);
  FpPoly r(p_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_)
    r.terms_.push_back({t.mono * m, static_cast<uint32_t>((uint64_t{t.coeff} * c) % p_)});
  return r;  // multiplication by a monomial preserves the order
}

FpPoly FpPoly::pow(uint64_t e) const {
  FpPoly result(p_, 1);
  FpPoly base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(fp_inverse(terms_.front().coeff, p_));
}

FpPoly FpPoly::map_monomials(const std::function<Monomial(const Monomial&)>& f) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({f(t.mono), t.coeff});
  return from_terms(p_, std::move(out));
}

std::string format_poly(const FpPoly& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    if (!first) os << " + ";
    first = false;
    bool need_star = false;
    if (t.coeff != 1 || t.mono.is_one()) {
      os << t.coeff;
      need_star = true;
    }
    for (size_t v = 0; v < t.mono.width(); ++v) {
      const uint32_t e = t.mono.exponent(v);
      if (e == 0) continue;
      if (need_star) os << '*';
      if (v < names.size())
        os << names[v];
      else
        os << 'x' << v;
      if (e > 1) os << '^' << e;
      need_star = true;
    }
  }
  return os.str();
}

}  // namespace gkit
