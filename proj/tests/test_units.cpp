#include <gtest/gtest.h>

#include "gkit/error.hpp"
#include "gkit/random.hpp"
#include "gkit/units.hpp"
#include "support.hpp"

using namespace gkit;
using gkit::testing::field;

namespace {

BasePtr eisenstein(AlgebraPtr k, size_t m, std::vector<int64_t> coeffs) {
  CohenRing c(k, m - 1);
  std::vector<CohenElem> cs;
  for (auto v : coeffs) cs.push_back(c.from_int(v));
  return ArtinianBase::eisenstein(k, m, std::move(cs));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

// A random unit of level >= n.
BaseElem random_unit(Sampler& rng, const BaseRing& ring, size_t n) {
  return ring.add(ring.one(), rng.base_in_ideal(ring, n));
}

}  // namespace

TEST(Units, Levels) {
  auto a = ArtinianBase::unramified(field(2, 1), 3);
  BaseRing ring(a, a->field());
  const BaseElem tau = ring.lift(a->field()->pbasis(0));
  EXPECT_EQ(unit_level(ring, ring.one()), std::nullopt);
  EXPECT_EQ(unit_level(ring, ring.add(ring.one(), ring.scale(tau, 2))), 1u);
  EXPECT_EQ(unit_level(ring, tau), 0u);
  EXPECT_EQ(unit_level(ring, ring.from_int(5)), 2u);
  EXPECT_EQ(code_of([&] { unit_level(ring, ring.from_int(2)); }), ErrorCode::NotAUnit);
}

TEST(Units, UnramifiedCubeRoot) {
  auto a = ArtinianBase::unramified(field(3, 1), 3);
  BaseRing ring(a, a->field());
  const BaseElem tau = ring.lift(a->field()->pbasis(0));
  const BaseElem v = ring.add(ring.one(), ring.scale(tau, 9));
  const BaseElem u = p_power_solve(ring, v, 1);
  EXPECT_EQ(p_power(ring, u), v);
  EXPECT_GE(unit_level(ring, u).value(), 1u);
  // u = 1 + 3 tau exactly (its canonical representative modulo U^2).
  EXPECT_EQ(ring.reduce(u, 2), ring.reduce(ring.add(ring.one(), ring.scale(tau, 3)), 2));
  EXPECT_EQ(p_power_solve(ring, ring.one(), 1), ring.one());
}

TEST(Units, RecoversPreimages) {
  struct Case {
    BasePtr base;
    size_t n;
  };
  for (const auto& c : {Case{ArtinianBase::unramified(field(3, 1), 3), 1}, Case{eisenstein(field(3, 1), 3, {-3, 0}), 2},
                        Case{eisenstein(field(3, 1), 3, {-6, 3}), 2}, Case{ArtinianBase::unramified(field(2, 1), 3), 2}}) {
    BaseRing ring(c.base, c.base->field());
    const size_t top = c.base->nilpotency() - c.base->e();
    Sampler rng(41);
    for (int it = 0; it < 8; ++it) {
      const BaseElem u0 = random_unit(rng, ring, c.n);
      const BaseElem v = p_power(ring, u0);
      const BaseElem u = p_power_solve(ring, v, c.n);
      EXPECT_EQ(ring.reduce(u, top), ring.reduce(u0, top));
      EXPECT_EQ(p_power(ring, u), v);
      // Arbitrary targets of level n + e are hit.
      const BaseElem w = random_unit(rng, ring, c.n + c.base->e());
      EXPECT_EQ(p_power(ring, p_power_solve(ring, w, c.n)), w);
    }
  }
}

TEST(Units, DegenerateTruncation) {
  // e = 2, m = 2: U^(n+e) = U^4 = {1}.
  auto a = eisenstein(field(3, 1), 2, {-3, 0});
  BaseRing ring(a, a->field());
  EXPECT_EQ(p_power_solve(ring, ring.one(), 2), ring.one());
}

TEST(Units, Errors) {
  auto a = ArtinianBase::unramified(field(2, 1), 3);
  BaseRing ring(a, a->field());
  EXPECT_EQ(code_of([&] { p_power_solve(ring, ring.one(), 1); }), ErrorCode::LevelTooLow);
  EXPECT_EQ(code_of([&] { p_power_solve(ring, ring.from_int(3), 2); }), ErrorCode::NotInTargetFiltration);
  EXPECT_EQ(code_of([&] { p_power_solve(ring, ring.from_int(2), 2); }), ErrorCode::NotAUnit);
}

TEST(Units, SharpnessWitness) {
  auto a = ArtinianBase::unramified(field(2, 1), 3);
  BaseRing ring(a, a->field());
  const auto u = p_power_collision(ring, 1);
  ASSERT_TRUE(u.has_value());
  EXPECT_EQ(p_power(ring, *u), p_power(ring, ring.one()));
  EXPECT_NE(ring.reduce(*u, 2), ring.one());
  EXPECT_EQ(unit_level(ring, *u), 1u);
  // Above the bound there is none.
  EXPECT_FALSE(p_power_collision(ring, 2).has_value());
}

TEST(Units, FiltrationShift) {
  for (auto a : {ArtinianBase::unramified(field(3, 1), 3), eisenstein(field(3, 1), 3, {-3, 0})}) {
    BaseRing ring(a, a->field());
    const size_t e = a->e(), R = a->nilpotency();
    Sampler rng(5);
    for (size_t n = 1; n < R; ++n) {
      if (n * (a->p() - 1) <= e) continue;
      for (int it = 0; it < 3; ++it) {
        BaseElem u = ring.add(ring.one(), ring.digit_lift(rng.nonzero_elem(*a->field()), n));
        u = ring.mul(u, random_unit(rng, ring, n + 1));
        ASSERT_EQ(unit_level(ring, u), n);
        const auto lp = unit_level(ring, p_power(ring, u));
        if (n + e < R) {
          EXPECT_EQ(lp, n + e);
        } else {
          EXPECT_EQ(lp, std::nullopt);
        }
      }
    }
  }
}

TEST(Units, GradedPiecesAreAdditive) {
  auto a = eisenstein(field(3, 1), 3, {-6, 3});
  BaseRing ring(a, a->field());
  const auto& k = *a->field();
  Sampler rng(8);
  for (size_t n = 1; n < a->nilpotency(); ++n) {
    const BaseElem u = random_unit(rng, ring, n), v = random_unit(rng, ring, n);
    const Elem du = ring.digit(ring.sub(u, ring.one()), n), dv = ring.digit(ring.sub(v, ring.one()), n);
    EXPECT_EQ(ring.digit(ring.sub(ring.mul(u, v), ring.one()), n), k.add(du, dv));
    const auto luv = unit_level(ring, ring.mul(u, ring.inv(v)));
    EXPECT_TRUE(!luv || *luv >= n);
  }
}
