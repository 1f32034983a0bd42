#include "gkit/base.hpp"

#include <sstream>

#include "gkit/error.hpp"
#include "gkit/gcd.hpp"

namespace gkit {

ArtinianBase::ArtinianBase(Kind kind, AlgebraPtr k, size_t m, std::vector<CohenElem> coeffs)
    : kind_(kind), k_(std::move(k)), m_(m), coeffs_(std::move(coeffs)), cohen_(k_, m_ - 1), rho_(k_->zero()) {
  if (m_ >= 2) {
    const CohenElem unit = solve_p_division(cohen_, coeffs_[0], 1);
    rho_ = k_->neg(k_->inv(cohen_.residue(unit)));
  }
}

std::shared_ptr<const ArtinianBase> ArtinianBase::unramified(AlgebraPtr k, size_t m) {
  if (m == 0) fail(ErrorCode::InvalidArgument, "base level must be positive");
  if (k->has_generator() || k->num_symbols() > 0)
    fail(ErrorCode::UnsupportedBase, "bases are built over the residue field k");
  CohenRing c(k, m - 1);
  std::vector<CohenElem> coeffs{c.from_int(-static_cast<int64_t>(k->p()))};
  return std::shared_ptr<const ArtinianBase>(new ArtinianBase(Kind::Unramified, std::move(k), m, std::move(coeffs)));
}

std::shared_ptr<const ArtinianBase> ArtinianBase::eisenstein(AlgebraPtr k, size_t m, std::vector<CohenElem> coeffs) {
  if (m == 0) fail(ErrorCode::InvalidArgument, "base level must be positive");
  if (coeffs.empty()) fail(ErrorCode::NotEisenstein, "Eisenstein polynomial must have positive degree");
  if (k->has_generator() || k->num_symbols() > 0)
    fail(ErrorCode::UnsupportedBase, "bases are built over the residue field k");
  CohenRing c(k, m - 1);
  for (size_t l = 0; l < coeffs.size(); ++l) {
    c.check(coeffs[l]);
    if (c.valuation(coeffs[l]) < 1)
      fail(ErrorCode::NotEisenstein, "coefficient of pi^" + std::to_string(l) + " is not divisible by p");
  }
  if (m >= 2 && c.valuation(coeffs[0]) != 1)
    fail(ErrorCode::NotEisenstein, "constant term is not p times a unit");
  return std::shared_ptr<const ArtinianBase>(new ArtinianBase(Kind::Eisenstein, std::move(k), m, std::move(coeffs)));
}

std::shared_ptr<const ArtinianBase> ArtinianBase::quotient(size_t j) const {
  if (j == 0 || j > nilpotency()) fail(ErrorCode::InvalidArgument, "quotient level out of range");
  if (j % e() != 0) fail(ErrorCode::UnsupportedBase, "A/I^j is a supported base only for j divisible by e");
  const size_t m2 = j / e();
  if (kind_ == Kind::Unramified) return unramified(k_, m2);
  std::vector<CohenElem> coeffs;
  for (const auto& a : coeffs_) coeffs.push_back(cohen_.truncate(a, m2));
  return eisenstein(k_, m2, std::move(coeffs));
}

std::string ArtinianBase::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::Unramified) {
    os << "C_" << m_ << "(k)";
  } else {
    os << "C_" << m_ << "(k)[pi]/(E), deg E = " << e();
  }
  return os.str();
}

BaseRing::BaseRing(BasePtr base, AlgebraPtr q) : base_(std::move(base)), q_(std::move(q)), cohen_(q_, base_->m() - 1) {
  if (q_->p() != base_->p() || q_->d() != base_->field()->d())
    fail(ErrorCode::TypeMismatch, "algebra and base have different residue fields");
  for (const auto& a : base_->eisenstein_coeffs()) eis_.push_back(base_->cohen().to_witt(a));
}

BaseRing::Vec BaseRing::witt_of(const CohenElem& c) const { return cohen_.to_witt(c); }

BaseElem BaseRing::zero() const { return BaseElem{std::vector<Vec>(e(), cohen_.witt().zero(m()))}; }

BaseElem BaseRing::one() const { return from_int(1); }

BaseElem BaseRing::from_int(int64_t v) const {
  BaseElem r = zero();
  r.comps[0] = cohen_.witt().from_int(v, m());
  return r;
}

BaseElem BaseRing::pi() const {
  BaseElem r = zero();
  if (e() >= 2) {
    r.comps[1] = cohen_.witt().one(m());
  } else {
    r.comps[0] = cohen_.witt().neg(eis_[0]);
  }
  return r;
}

BaseElem BaseRing::from_cohen(const CohenElem& c, size_t w) const {
  if (w >= e()) fail(ErrorCode::IndexOutOfRange, "pi-component out of range");
  if (c.n + 1 != m()) fail(ErrorCode::LevelMismatch, "Cohen element level differs from the base level");
  BaseElem r = zero();
  r.comps[w] = witt_of(c);
  return r;
}

BaseElem BaseRing::from_components(const std::vector<CohenElem>& cs) const {
  if (cs.size() != e()) fail(ErrorCode::LengthMismatch, "wrong number of pi-components");
  BaseElem r = zero();
  for (size_t w = 0; w < cs.size(); ++w) {
    if (cs[w].n + 1 != m()) fail(ErrorCode::LevelMismatch, "Cohen element level differs from the base level");
    r.comps[w] = witt_of(cs[w]);
  }
  return r;
}

BaseElem BaseRing::lift(const Elem& f) const { return from_cohen(cohen_.level0_lift(f)); }

BaseElem BaseRing::add(const BaseElem& a, const BaseElem& b) const {
  BaseElem r;
  for (size_t w = 0; w < e(); ++w) r.comps.push_back(cohen_.witt().add(a.comps[w], b.comps[w]));
  return r;
}

BaseElem BaseRing::neg(const BaseElem& a) const {
  BaseElem r;
  for (size_t w = 0; w < e(); ++w) r.comps.push_back(cohen_.witt().neg(a.comps[w]));
  return r;
}

BaseElem BaseRing::sub(const BaseElem& a, const BaseElem& b) const { return add(a, neg(b)); }

BaseElem BaseRing::mul(const BaseElem& a, const BaseElem& b) const {
  const auto& w = cohen_.witt();
  const size_t n = e();
  std::vector<Vec> prod(2 * n - 1, w.zero(m()));
  for (size_t i = 0; i < n; ++i) {
    if (w.is_zero(a.comps[i])) continue;
    for (size_t j = 0; j < n; ++j) {
      if (w.is_zero(b.comps[j])) continue;
      prod[i + j] = w.add(prod[i + j], w.mul(a.comps[i], b.comps[j]));
    }
  }
  // pi^e = -(a_{e-1} pi^{e-1} + .. + a_0)
  for (size_t deg = 2 * n - 2; deg >= n; --deg) {
    if (w.is_zero(prod[deg])) continue;
    for (size_t l = 0; l < n; ++l) prod[deg - n + l] = w.sub(prod[deg - n + l], w.mul(prod[deg], eis_[l]));
  }
  prod.resize(n);
  return BaseElem{std::move(prod)};
}

BaseElem BaseRing::pow(const BaseElem& a, uint64_t k) const {
  BaseElem result = one();
  BaseElem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return result;
}

BaseElem BaseRing::scale(const BaseElem& a, int64_t k) const { return mul(a, from_int(k)); }

BaseElem BaseRing::inv(const BaseElem& a) const {
  const Elem res = residue(a);
  if (q_->is_zero(res)) fail(ErrorCode::NotAUnit, "element of the maximal ideal is not a unit");
  BaseElem y = lift(q_->inv(res));
  const BaseElem two = from_int(2);
  for (size_t it = 0; it < 64; ++it) {
    const BaseElem ay = mul(a, y);
    if (ay == one()) return y;
    y = mul(y, sub(two, ay));
  }
  fail(ErrorCode::InternalError, "Newton inversion did not converge");
}

bool BaseRing::is_zero(const BaseElem& a) const {
  for (const auto& c : a.comps)
    if (!cohen_.witt().is_zero(c)) return false;
  return true;
}

CohenElem BaseRing::component(const BaseElem& a, size_t w) const { return cohen_.extract(a.comps.at(w)); }

std::vector<CohenElem> BaseRing::components(const BaseElem& a) const {
  std::vector<CohenElem> out;
  for (size_t w = 0; w < e(); ++w) out.push_back(component(a, w));
  return out;
}

Elem BaseRing::residue(const BaseElem& a) const { return a.comps[0][0]; }

size_t BaseRing::valuation(const BaseElem& a) const {
  size_t best = base_->nilpotency();
  for (size_t w = 0; w < e(); ++w)
    for (size_t j = 0; j < m(); ++j)
      if (!q_->is_zero(a.comps[w][j])) {
        best = std::min(best, e() * j + w);
        break;
      }
  return best;
}

Elem BaseRing::digit(const BaseElem& a, size_t v) const {
  if (valuation(a) < v) fail(ErrorCode::InvalidArgument, "digit requested below the valuation");
  if (v >= base_->nilpotency()) return q_->zero();
  const size_t j = v / e(), w = v % e();
  if (q_->is_zero(a.comps[w][j])) return q_->zero();
  const CohenElem c = component(a, w);
  // c = p^j c' with res(c') = sum_i sigma^(n-j)(x_j(i)) t^i.
  const size_t n = m() - 1;
  const uint32_t base = static_cast<uint32_t>(ipow(q_->p(), n - j));
  Elem res = q_->zero();
  for (size_t flat = 0; flat < c.coords[j].size(); ++flat) {
    if (q_->is_zero(c.coords[j][flat])) continue;
    const auto idx = unflatten_index(flat, base, q_->d());
    res = q_->add(res, q_->mul(q_->twist(c.coords[j][flat], n - j), q_->monomial(Monomial(idx))));
  }
  return q_->mul(res, q_->pow(base_->rho(), j));
}

BaseElem BaseRing::digit_lift(const Elem& f, size_t v) const {
  if (v >= base_->nilpotency() || q_->is_zero(f)) return zero();
  const size_t j = v / e(), w = v % e();
  const Elem g = j == 0 ? f : q_->div(f, q_->pow(base_->rho(), j));
  const Vec unit = witt_of(cohen_.level0_lift(g));
  BaseElem r = zero();
  r.comps[w] = cohen_.witt().scale(unit, static_cast<int64_t>(ipow(q_->p(), j)));
  return r;
}

BaseElem BaseRing::reduce(const BaseElem& a, size_t j) const {
  BaseElem r = a;
  for (size_t w = 0; w < e(); ++w) {
    const size_t keep = j > w ? std::min(m(), (j - w + e() - 1) / e()) : 0;
    if (keep >= m()) continue;
    CohenElem c = component(a, w);
    for (size_t pos = keep; pos < m(); ++pos)
      for (auto& x : c.coords[pos]) x = q_->zero();
    r.comps[w] = witt_of(c);
  }
  return r;
}

BaseElem BaseRing::structure_map(const CohenElem& c) const {
  if (c.n + 1 < m()) fail(ErrorCode::LevelMismatch, "structure map needs a Cohen level at least m");
  CohenRing source(base_->field(), c.n);
  return from_cohen(source.truncate(c, m()));
}

BaseElem BaseRing::project(const BaseElem& a, const BaseRing& target) const {
  if (target.e() != e() || target.m() > m()) fail(ErrorCode::UnsupportedBase, "target is not a quotient base");
  BaseElem r;
  for (const auto& c : a.comps) r.comps.push_back(cohen_.witt().truncate(c, target.m()));
  return r;
}

std::string BaseRing::format(const BaseElem& a) const {
  std::ostringstream os;
  bool first = true;
  for (size_t w = 0; w < e(); ++w) {
    if (cohen_.witt().is_zero(a.comps[w])) continue;
    if (!first) os << " + ";
    first = false;
    os << "(";
    for (size_t j = 0; j < m(); ++j) os << (j ? ", " : "") << q_->format(a.comps[w][j]);
    os << ")";
    if (w == 1) os << "*pi";
    if (w > 1) os << "*pi^" << w;
  }
  return first ? "0" : os.str();
}

LiftedAlgebra::LiftedAlgebra(BasePtr base, AlgebraPtr q)
    : base_(base),
      q_(q),
      k_(q->base_field()),
      ring_(base, q->has_generator() && q->num_symbols() == 0 ? k_ : q),
      degree_(1) {
  if (q_->has_generator() && !q_->is_etale())
    fail(ErrorCode::UnsupportedAlgebra, "canonical lifts need k, an etale algebra or symbols over these");
  if (q_->has_generator() && q_->num_symbols() == 0) {
    degree_ = q_->generator_degree();
    const auto coeffs = coefficients_in(q_->modulus(), q_->generator_index());
    for (size_t i = 0; i < degree_; ++i) modulus_.push_back(ring_.lift(k_->from_poly(coeffs[i])));
  }
}

LiftedAlgebra::Elem LiftedAlgebra::zero() const { return Elem(degree_, ring_.zero()); }

LiftedAlgebra::Elem LiftedAlgebra::one() const { return embed(ring_.one()); }

LiftedAlgebra::Elem LiftedAlgebra::generator() const {
  if (degree_ < 2) fail(ErrorCode::UnsupportedAlgebra, "no generator in a degree-1 lift");
  Elem r = zero();
  r[1] = ring_.one();
  return r;
}

LiftedAlgebra::Elem LiftedAlgebra::embed(const BaseElem& a) const {
  Elem r = zero();
  r[0] = a;
  return r;
}

LiftedAlgebra::Elem LiftedAlgebra::add(const Elem& a, const Elem& b) const {
  Elem r;
  for (size_t i = 0; i < degree_; ++i) r.push_back(ring_.add(a[i], b[i]));
  return r;
}

LiftedAlgebra::Elem LiftedAlgebra::sub(const Elem& a, const Elem& b) const {
  Elem r;
  for (size_t i = 0; i < degree_; ++i) r.push_back(ring_.sub(a[i], b[i]));
  return r;
}

LiftedAlgebra::Elem LiftedAlgebra::mul(const Elem& a, const Elem& b) const {
  std::vector<BaseElem> prod(2 * degree_ - 1, ring_.zero());
  for (size_t i = 0; i < degree_; ++i) {
    if (ring_.is_zero(a[i])) continue;
    for (size_t j = 0; j < degree_; ++j) prod[i + j] = ring_.add(prod[i + j], ring_.mul(a[i], b[j]));
  }
  for (size_t deg = 2 * degree_ - 2; deg >= degree_; --deg) {
    if (ring_.is_zero(prod[deg])) continue;
    for (size_t i = 0; i < degree_; ++i)
      prod[deg - degree_ + i] = ring_.sub(prod[deg - degree_ + i], ring_.mul(prod[deg], modulus_[i]));
  }
  prod.resize(degree_);
  return prod;
}

bool LiftedAlgebra::is_zero(const Elem& a) const {
  for (const auto& c : a)
    if (!ring_.is_zero(c)) return false;
  return true;
}

LiftedAlgebra::Elem LiftedAlgebra::pow(const Elem& a, uint64_t k) const {
  Elem result = one();
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return result;
}

LiftedAlgebra::Elem LiftedAlgebra::lift(const gkit::Elem& f) const {
  if (degree_ == 1) return embed(ring_.lift(f));
  Elem r = zero();
  const auto coeffs = coefficients_in(f.num, q_->generator_index());
  for (size_t i = 0; i < coeffs.size() && i < degree_; ++i) r[i] = ring_.lift(k_->from_fraction(coeffs[i], f.den));
  return r;
}

gkit::Elem LiftedAlgebra::reduce_mod_i(const Elem& a) const {
  if (degree_ == 1) return ring_.residue(a[0]);
  gkit::Elem r = q_->zero();
  for (size_t i = 0; i < degree_; ++i)
    r = q_->add(r, q_->mul(ring_.residue(a[i]), q_->pow(q_->generator(), i)));
  return r;
}

LiftedAlgebra::Elem LiftedAlgebra::inv(const Elem& a) const {
  const gkit::Elem res = reduce_mod_i(a);
  if (q_->is_zero(res)) fail(ErrorCode::NotAUnit, "element of the maximal ideal is not a unit");
  Elem y = lift(q_->inv(res));
  const Elem two = embed(ring_.from_int(2));
  for (size_t it = 0; it < 64; ++it) {
    const Elem ay = mul(a, y);
    if (ay == one()) return y;
    y = mul(y, sub(two, ay));
  }
  fail(ErrorCode::InternalError, "Newton inversion did not converge");
}

LiftedAlgebra::Elem LiftedAlgebra::reduce(const Elem& a, const LiftedAlgebra& target) const {
  if (target.degree_ != degree_) fail(ErrorCode::UnsupportedBase, "lifts of different algebras");
  Elem r;
  for (const auto& c : a) r.push_back(ring_.project(c, target.ring_));
  return r;
}

}  // namespace gkit
