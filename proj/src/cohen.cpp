#include "gkit/cohen.hpp"

#include "gkit/error.hpp"

namespace gkit {

CohenRing::CohenRing(AlgebraPtr q, size_t n) : q_(std::move(q)), n_(n), witt_(AlgebraRing{q_}, q_->p()) {}

size_t CohenRing::dimension() const {
  size_t total = 0;
  for (size_t j = 0; j <= n_; ++j) total += width(j);
  return total;
}

CohenElem CohenRing::zero() const {
  CohenElem c;
  c.n = n_;
  for (size_t j = 0; j <= n_; ++j) c.coords.emplace_back(width(j), q_->zero());
  return c;
}

CohenElem CohenRing::one() const { return coordinate(0, 0, q_->one()); }

CohenElem CohenRing::from_int(int64_t v) const { return extract(witt_.from_int(v, level())); }

CohenElem CohenRing::level0_lift(const Elem& f) const {
  CohenElem c = zero();
  c.coords[0] = q_->expand(f, n_);
  return c;
}

CohenElem CohenRing::coordinate(size_t j, size_t flat_i, const Elem& value) const {
  if (j > n_ || flat_i >= width(j)) fail(ErrorCode::IndexOutOfRange, "Cohen coordinate index out of range");
  CohenElem c = zero();
  c.coords[j][flat_i] = value;
  return c;
}

void CohenRing::check(const CohenElem& a) const {
  if (a.n != n_ || a.coords.size() != n_ + 1) fail(ErrorCode::LevelMismatch, "Cohen element of another level");
  for (size_t j = 0; j <= n_; ++j)
    if (a.coords[j].size() != width(j)) fail(ErrorCode::LevelMismatch, "malformed Cohen coordinates");
}

CohenRing::Vec CohenRing::level_part(size_t j, const std::vector<Elem>& xs, size_t length) const {
  const uint32_t base = static_cast<uint32_t>(ipow(p(), n_ - j));
  const uint32_t stretch = static_cast<uint32_t>(ipow(p(), j));
  Vec acc = witt_.zero(length);
  for (size_t flat = 0; flat < xs.size(); ++flat) {
    if (q_->is_zero(xs[flat])) continue;
    auto idx = unflatten_index(flat, base, d());
    for (auto& x : idx) x *= stretch;
    Vec single = witt_.zero(length);
    single[j] = q_->mul(q_->twist(xs[flat], n_), q_->monomial(Monomial(std::move(idx))));
    acc = witt_.add(acc, single);
  }
  return acc;
}

CohenRing::Vec CohenRing::to_witt(const CohenElem& c) const {
  check(c);
  Vec acc = witt_.zero(level());
  for (size_t j = 0; j <= n_; ++j) acc = witt_.add(acc, level_part(j, c.coords[j], level()));
  return acc;
}

std::vector<std::vector<Elem>> CohenRing::extract_coords(Vec w, size_t length) const {
  if (w.size() != length || length > level()) fail(ErrorCode::LengthMismatch, "Witt vector of the wrong length");
  const uint32_t full = static_cast<uint32_t>(ipow(p(), n_));
  std::vector<std::vector<Elem>> coords;
  for (size_t j = 0; j < length; ++j) {
    const uint32_t stretch = static_cast<uint32_t>(ipow(p(), j));
    const uint32_t base = full / stretch;
    std::vector<Elem> xs(width(j), q_->zero());
    if (!q_->is_zero(w[j])) {
      const auto digits = q_->expand(w[j], n_);
      for (size_t m = 0; m < digits.size(); ++m) {
        if (q_->is_zero(digits[m])) continue;
        auto idx = unflatten_index(m, full, d());
        for (auto& x : idx) {
          if (x % stretch != 0)
            fail(ErrorCode::NotInCohen, "position " + std::to_string(j) + " has a digit outside " +
                                            "the Cohen lattice (Witt vector is not in C_" +
                                            std::to_string(level()) + ")");
          x /= stretch;
        }
        xs[flatten_index(idx, base)] = digits[m];
      }
      w = witt_.sub(w, level_part(j, xs, length));
      check_internal(q_->is_zero(w[j]), "Cohen extraction left a residual entry");
    }
    coords.push_back(std::move(xs));
  }
  return coords;
}

CohenElem CohenRing::extract(const Vec& w) const {
  if (w.size() != level()) fail(ErrorCode::LengthMismatch, "Witt vector length differs from the Cohen level");
  return CohenElem{n_, extract_coords(w, level())};
}

namespace {

template <class F>
CohenElem closed(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotInCohen)
      throw Error(ErrorCode::InternalError, std::string("Cohen ring not closed: ") + e.what());
    throw;
  }
}

}  // namespace

CohenElem CohenRing::add(const CohenElem& a, const CohenElem& b) const {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  return closed([&] { return extract(witt_.add(to_witt(a), to_witt(b))); });
}

CohenElem CohenRing::sub(const CohenElem& a, const CohenElem& b) const {
  return closed([&] { return extract(witt_.sub(to_witt(a), to_witt(b))); });
}

CohenElem CohenRing::neg(const CohenElem& a) const {
  if (p() != 2) {
    CohenElem r = a;
    for (auto& level : r.coords)
      for (auto& x : level) x = q_->neg(x);  // sigma^n is additive in odd characteristic
    return r;
  }
  return closed([&] { return extract(witt_.neg(to_witt(a))); });
}

CohenElem CohenRing::mul(const CohenElem& a, const CohenElem& b) const {
  return closed([&] { return extract(witt_.mul(to_witt(a), to_witt(b))); });
}

CohenElem CohenRing::scale(const CohenElem& a, int64_t k) const {
  return closed([&] { return extract(witt_.scale(to_witt(a), k)); });
}

bool CohenRing::is_zero(const CohenElem& a) const {
  for (const auto& level : a.coords)
    for (const auto& x : level)
      if (!q_->is_zero(x)) return false;
  return true;
}

Elem CohenRing::residue(const CohenElem& a) const {
  check(a);
  return level_part(0, a.coords[0], 1)[0];
}

size_t CohenRing::valuation(const CohenElem& a) const {
  for (size_t j = 0; j < a.coords.size(); ++j)
    for (const auto& x : a.coords[j])
      if (!q_->is_zero(x)) return j;
  return level();
}

CohenElem CohenRing::truncate(const CohenElem& a, size_t new_level) const {
  if (new_level == 0 || new_level > level()) fail(ErrorCode::LevelMismatch, "invalid truncation level");
  if (new_level == level()) return a;
  CohenRing target(q_, new_level - 1);
  return closed([&] { return target.extract(witt_.truncate(to_witt(a), new_level)); });
}

CohenElem ver_embed(const CohenRing& target, const CohenElem& c) {
  if (c.n > target.n()) fail(ErrorCode::LevelMismatch, "Verschiebung embedding into a lower level");
  const size_t shift = target.n() - c.n;
  CohenElem r = target.zero();
  for (size_t j = 0; j < c.coords.size(); ++j) {
    if (c.coords[j].size() != r.coords[j + shift].size())
      fail(ErrorCode::LevelMismatch, "Cohen element does not match the base algebra");
    r.coords[j + shift] = c.coords[j];
  }
  return r;
}

CohenElem solve_p_division(const CohenRing& ring, const CohenElem& target, size_t e) {
  ring.check(target);
  if (ring.algebra()->num_symbols() > 0)
    fail(ErrorCode::UnsupportedAlgebra, "p-division needs a relatively perfect algebra (k or etale)");
  const size_t n = ring.n();
  if (e > n) fail(ErrorCode::LevelMismatch, "exponent exceeds the Cohen level");
  if (ring.valuation(target) < e) fail(ErrorCode::NotInImage, "target has support below position e");
  if (e == 0) return target;
  const size_t m = n - e;
  CohenRing source_ring(ring.algebra(), m);
  CohenElem source = source_ring.zero();
  for (size_t j = 0; j <= m; ++j) source.coords[j] = target.coords[j + e];
  auto coords = ring.extract_coords(source_ring.to_witt(source), m + 1);
  CohenElem c = ring.zero();
  for (size_t j = 0; j <= m; ++j) c.coords[j] = std::move(coords[j]);
  check_internal(ring.scale(c, static_cast<int64_t>(ipow(ring.p(), e))) == target,
                 "p-division result does not multiply back to the target");
  return c;
}

}  // namespace gkit
