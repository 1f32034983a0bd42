#include "gkit/units.hpp"

#include "gkit/error.hpp"

namespace gkit {

std::optional<size_t> unit_level(const BaseRing& ring, const BaseElem& u) {
  if (ring.algebra()->is_zero(ring.residue(u))) fail(ErrorCode::NotAUnit, "element has zero residue");
  const BaseElem x = ring.sub(u, ring.one());
  if (ring.is_zero(x)) return std::nullopt;
  return ring.valuation(x);
}

BaseElem p_power(const BaseRing& ring, const BaseElem& u) { return ring.pow(u, ring.base()->p()); }

BaseElem p_power_solve(const BaseRing& ring, const BaseElem& v, size_t n) {
  const auto& base = *ring.base();
  const auto& q = *ring.algebra();
  const size_t e = base.e(), R = base.nilpotency();
  if (n * (base.p() - 1) <= e)
    fail(ErrorCode::LevelTooLow, "p-th powers are bijective only on U^n with n > e/(p-1); here n = " +
                                     std::to_string(n) + ", e = " + std::to_string(e));
  const auto level = unit_level(ring, v);
  if (level && *level < n + e)
    fail(ErrorCode::NotInTargetFiltration,
         "target has level " + std::to_string(*level) + " < n + e = " + std::to_string(n + e));
  BaseElem u = ring.one();
  for (size_t l = n; l + e < R; ++l) {
    const BaseElem delta = ring.sub(ring.mul(v, ring.inv(p_power(ring, u))), ring.one());
    check_internal(ring.valuation(delta) >= l + e, "Hensel step lost the filtration");
    const Elem a = q.div(ring.digit(delta, l + e), base.rho());
    u = ring.mul(u, ring.add(ring.one(), ring.digit_lift(a, l)));
  }
  if (R > e) u = ring.reduce(u, R - e);
  check_internal(p_power(ring, u) == v, "p-th root does not reproduce the target");
  return u;
}

std::optional<BaseElem> p_power_collision(const BaseRing& ring, size_t n) {
  const auto& base = *ring.base();
  const size_t R = base.nilpotency(), e = base.e();
  const size_t top = R > e ? R - e : 0;
  auto collides = [&](const BaseElem& u) {
    const auto level = unit_level(ring, u);
    return level && *level >= n && *level < top && p_power(ring, u) == ring.one();
  };
  const BaseElem minus_one = ring.from_int(-1);
  if (collides(minus_one)) return minus_one;
  const auto& q = *ring.algebra();
  for (size_t l = n; l < top; ++l)
    for (uint32_t c = 1; c < base.p(); ++c) {
      const BaseElem u = ring.add(ring.one(), ring.digit_lift(q.from_int(c), l));
      if (collides(u)) return u;
    }
  return std::nullopt;
}

}  // namespace gkit
