#include <gtest/gtest.h>

#include <functional>

#include "gkit/base.hpp"
#include "gkit/error.hpp"
#include "support.hpp"

using namespace gkit;
using gkit::testing::artin_schreier;
using gkit::testing::field;
using gkit::testing::random_cohen;
using gkit::testing::random_elem;

namespace {

BasePtr eisenstein(AlgebraPtr k, size_t m, std::vector<int64_t> coeffs) {
  CohenRing c(k, m - 1);
  std::vector<CohenElem> cs;
  for (auto v : coeffs) cs.push_back(c.from_int(v));
  return ArtinianBase::eisenstein(k, m, std::move(cs));
}

BaseElem random_base(std::mt19937_64& rng, const BaseRing& ring) {
  std::vector<CohenElem> cs;
  for (size_t w = 0; w < ring.e(); ++w) cs.push_back(random_cohen(rng, ring.cohen(), 1));
  return ring.from_components(cs);
}

struct BaseCase {
  const char* name;
  std::function<BasePtr()> make;
};

void PrintTo(const BaseCase& c, std::ostream* os) { *os << c.name; }

std::vector<BaseCase> base_cases() {
  return {
      {"unram_p2_m2", [] { return ArtinianBase::unramified(field(2, 1), 2); }},
      {"unram_p2_m3", [] { return ArtinianBase::unramified(field(2, 1), 3); }},
      {"unram_p3_m2", [] { return ArtinianBase::unramified(field(3, 1), 2); }},
      {"unram_p2_m2_d2", [] { return ArtinianBase::unramified(field(2, 2), 2); }},
      {"eis_p3_m2_sqrt3", [] { return eisenstein(field(3, 1), 2, {-3, 0}); }},
      {"eis_p3_m2_mixed", [] { return eisenstein(field(3, 1), 2, {-6, 3}); }},
      {"eis_p2_m2_e3", [] { return eisenstein(field(2, 1), 2, {2, 0, 2}); }},
      {"eis_p2_m1_e2", [] { return eisenstein(field(2, 1), 1, {0, 0}); }},
  };
}

class BaseAxioms : public ::testing::TestWithParam<BaseCase> {};

}  // namespace

TEST(Base, UnramifiedInvariants) {
  auto a = ArtinianBase::unramified(field(2, 1), 2);
  EXPECT_EQ(a->e(), 1u);
  EXPECT_EQ(a->nilpotency(), 2u);
  EXPECT_EQ(a->r(), 1u);
  EXPECT_EQ(a->decompose_module(), (std::vector<size_t>{2}));
  EXPECT_TRUE(a->field()->is_one(a->rho()));
}

TEST(Base, EisensteinInvariants) {
  auto a = eisenstein(field(3, 1), 2, {-3, 0});
  EXPECT_EQ(a->e(), 2u);
  EXPECT_EQ(a->nilpotency(), 4u);
  EXPECT_EQ(a->r(), 3u);
  EXPECT_EQ(a->decompose_module(), (std::vector<size_t>{2, 2}));
  BaseRing ring(a, a->field());
  EXPECT_EQ(ring.pow(ring.pi(), 2), ring.from_int(3));
}

TEST(Base, RhoMatchesPiPower) {
  // E = pi^2 + 3 pi - 6: pi^2 = 6 - 3 pi, so p = rho pi^2 mod I^3 with rho = 1/2 = 2.
  auto a = eisenstein(field(3, 1), 2, {-6, 3});
  EXPECT_EQ(a->rho(), a->field()->from_int(2));
  BaseRing ring(a, a->field());
  EXPECT_EQ(ring.digit(ring.from_int(3), 2), a->field()->from_int(2));
  EXPECT_EQ(ring.digit(ring.pow(ring.pi(), 2), 2), a->field()->one());
}

TEST(Base, NotEisenstein) {
  auto k = field(2, 1);
  EXPECT_THROW(eisenstein(k, 2, {1, 0}), Error);    // unit constant term
  EXPECT_THROW(eisenstein(k, 3, {4, 0}), Error);    // p^2 constant term
  EXPECT_THROW(eisenstein(k, 2, {2, 1}), Error);    // unit middle coefficient
  try {
    eisenstein(k, 2, {2, 1});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotEisenstein);
  }
}

TEST(Base, Quotients) {
  auto a = eisenstein(field(3, 1), 3, {-3, 0});
  auto q = a->quotient(4);
  EXPECT_EQ(q->m(), 2u);
  EXPECT_EQ(q->e(), 2u);
  EXPECT_THROW(a->quotient(3), Error);
  auto u = ArtinianBase::unramified(field(2, 1), 3);
  EXPECT_EQ(u->quotient(2)->nilpotency(), 2u);
}

TEST_P(BaseAxioms, Nilpotency) {
  auto a = GetParam().make();
  BaseRing ring(a, a->field());
  const BaseElem pi = ring.pi();
  EXPECT_FALSE(ring.is_zero(ring.pow(pi, a->r())));
  EXPECT_TRUE(ring.is_zero(ring.pow(pi, a->nilpotency())));
  for (size_t v = 0; v < a->nilpotency(); ++v) EXPECT_EQ(ring.valuation(ring.pow(pi, v)), v);
  EXPECT_EQ(ring.valuation(ring.zero()), a->nilpotency());
}

TEST_P(BaseAxioms, RingAxioms) {
  auto a = GetParam().make();
  BaseRing ring(a, a->field());
  std::mt19937_64 rng(11);
  for (int it = 0; it < 6; ++it) {
    const auto x = random_base(rng, ring), y = random_base(rng, ring), z = random_base(rng, ring);
    EXPECT_EQ(ring.mul(x, ring.add(y, z)), ring.add(ring.mul(x, y), ring.mul(x, z)));
    EXPECT_EQ(ring.mul(ring.mul(x, y), z), ring.mul(x, ring.mul(y, z)));
    EXPECT_EQ(ring.mul(x, y), ring.mul(y, x));
    EXPECT_EQ(ring.add(x, ring.neg(x)), ring.zero());
    EXPECT_EQ(ring.mul(x, ring.one()), x);
  }
}

TEST_P(BaseAxioms, StructureMapIsHomomorphism) {
  auto a = GetParam().make();
  BaseRing ring(a, a->field());
  CohenRing big(a->field(), a->m());
  std::mt19937_64 rng(5);
  for (int it = 0; it < 4; ++it) {
    const auto x = random_cohen(rng, big, 1), y = random_cohen(rng, big, 1);
    EXPECT_EQ(ring.structure_map(big.add(x, y)), ring.add(ring.structure_map(x), ring.structure_map(y)));
    EXPECT_EQ(ring.structure_map(big.mul(x, y)), ring.mul(ring.structure_map(x), ring.structure_map(y)));
  }
  EXPECT_EQ(ring.structure_map(big.one()), ring.one());
}

TEST_P(BaseAxioms, DigitsAreMultiplicative) {
  auto a = GetParam().make();
  BaseRing ring(a, a->field());
  const auto& k = *a->field();
  std::mt19937_64 rng(17);
  for (int it = 0; it < 8; ++it) {
    const auto x = random_base(rng, ring), y = random_base(rng, ring);
    const size_t vx = ring.valuation(x), vy = ring.valuation(y);
    if (vx + vy >= a->nilpotency()) continue;
    EXPECT_EQ(ring.digit(ring.mul(x, y), vx + vy), k.mul(ring.digit(x, vx), ring.digit(y, vy)));
    EXPECT_FALSE(k.is_zero(ring.digit(x, vx)));
  }
  for (size_t v = 0; v < a->nilpotency(); ++v) {
    const Elem f = random_elem(rng, k, 2, 2);
    const BaseElem l = ring.digit_lift(f, v);
    EXPECT_EQ(ring.digit(l, v), f);
    EXPECT_GE(ring.valuation(l), v);
  }
}

TEST_P(BaseAxioms, DigitsAreAdditive) {
  auto a = GetParam().make();
  BaseRing ring(a, a->field());
  const auto& k = *a->field();
  std::mt19937_64 rng(19);
  for (size_t v = 0; v < a->nilpotency(); ++v) {
    const BaseElem x = ring.add(ring.digit_lift(random_elem(rng, k, 2, 2), v), ring.digit_lift(k.one(), v + 1));
    const BaseElem y = ring.digit_lift(random_elem(rng, k, 2, 2), v);
    EXPECT_EQ(ring.digit(ring.add(x, y), v), k.add(ring.digit(x, v), ring.digit(y, v)));
  }
}

TEST_P(BaseAxioms, Reduction) {
  auto a = GetParam().make();
  BaseRing ring(a, a->field());
  std::mt19937_64 rng(23);
  for (size_t j = 0; j <= a->nilpotency(); ++j) {
    const auto x = random_base(rng, ring), z = random_base(rng, ring);
    const BaseElem rx = ring.reduce(x, j);
    EXPECT_GE(ring.valuation(ring.sub(x, rx)), j);
    EXPECT_EQ(ring.reduce(rx, j), rx);
    const BaseElem shifted = ring.add(x, ring.mul(z, ring.pow(ring.pi(), j)));
    EXPECT_EQ(ring.reduce(shifted, j), rx);
  }
}

TEST_P(BaseAxioms, Inverse) {
  auto a = GetParam().make();
  BaseRing ring(a, a->field());
  std::mt19937_64 rng(29);
  for (int it = 0; it < 5; ++it) {
    BaseElem x = random_base(rng, ring);
    if (ring.valuation(x) > 0) x = ring.add(x, ring.one());
    if (ring.valuation(x) > 0) continue;
    EXPECT_EQ(ring.mul(x, ring.inv(x)), ring.one());
  }
  EXPECT_THROW(ring.inv(ring.pi()), Error);
}

TEST_P(BaseAxioms, ProjectionIsHomomorphism) {
  auto a = GetParam().make();
  if (a->m() < 2) GTEST_SKIP() << "no proper quotient at level 1";
  auto q = a->quotient(a->e() * (a->m() - 1));
  BaseRing ring(a, a->field()), target(q, a->field());
  std::mt19937_64 rng(31);
  for (int it = 0; it < 4; ++it) {
    const auto x = random_base(rng, ring), y = random_base(rng, ring);
    EXPECT_EQ(ring.project(ring.mul(x, y), target), target.mul(ring.project(x, target), ring.project(y, target)));
    EXPECT_EQ(ring.project(ring.add(x, y), target), target.add(ring.project(x, target), ring.project(y, target)));
  }
  EXPECT_EQ(ring.project(ring.pi(), target), target.pi());
}

INSTANTIATE_TEST_SUITE_P(Bases, BaseAxioms, ::testing::ValuesIn(base_cases()),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(Base, SymbolicCoefficients) {
  auto a = eisenstein(field(2, 1), 2, {2, 0});
  auto q = a->field()->with_symbols({"a", "b"});
  BaseRing ring(a, q);
  const BaseElem x = ring.add(ring.lift(q->symbol(0)), ring.mul(ring.lift(q->symbol(1)), ring.pi()));
  // (a + b pi)^2 = a^2 + b^2 pi^2 + 2ab pi, and pi^2 = -2 = 2 in C_2.
  const BaseElem sq = ring.mul(x, x);
  const BaseElem expect = ring.add(ring.add(ring.mul(ring.lift(q->symbol(0)), ring.lift(q->symbol(0))),
                                            ring.scale(ring.mul(ring.lift(q->symbol(1)), ring.lift(q->symbol(1))), 2)),
                                   ring.scale(ring.mul(ring.mul(ring.lift(q->symbol(0)), ring.lift(q->symbol(1))),
                                                       ring.pi()),
                                              2));
  EXPECT_EQ(sq, expect);
  EXPECT_EQ(ring.residue(sq), q->mul(q->symbol(0), q->symbol(0)));
}

TEST(LiftedAlgebra, EtaleLiftReducesToQ) {
  auto q = artin_schreier(2);
  for (auto a : {ArtinianBase::unramified(q->base_field(), 2), eisenstein(q->base_field(), 2, {2, 2})}) {
    LiftedAlgebra lift(a, q);
    EXPECT_EQ(lift.degree(), 2u);
    const auto y = lift.generator();
    EXPECT_EQ(lift.reduce_mod_i(y), q->generator());
    // g~(y) = 0
    auto g = lift.pow(y, 2);
    for (size_t i = 0; i < 2; ++i) g = lift.add(g, lift.mul(lift.embed(lift.modulus()[i]), lift.pow(y, i)));
    EXPECT_TRUE(lift.is_zero(g));
    const auto u = lift.add(y, lift.embed(lift.base_ring().pi()));
    EXPECT_EQ(lift.mul(u, lift.inv(u)), lift.one());
    EXPECT_EQ(lift.reduce_mod_i(lift.lift(q->add(q->generator(), q->one()))), q->add(q->generator(), q->one()));
  }
}

TEST(LiftedAlgebra, BaseChange) {
  // The lift over A reduces to the lift over A / I^j.
  auto q = artin_schreier(2);
  auto a = ArtinianBase::unramified(q->base_field(), 3);
  auto aq = a->quotient(2);
  LiftedAlgebra big(a, q), small(aq, q);
  const auto image = big.reduce(big.generator(), small);
  EXPECT_EQ(image, small.generator());

  std::vector<BaseElem> coeffs;
  for (const auto& c : big.modulus()) coeffs.push_back(big.base_ring().project(c, small.base_ring()));
  EXPECT_EQ(coeffs, small.modulus());

  std::mt19937_64 rng(3);
  for (int it = 0; it < 4; ++it) {
    const auto x = big.lift(random_elem(rng, *q, 2, 2, false));
    const auto y = big.add(big.lift(random_elem(rng, *q, 2, 2, false)), big.generator());
    EXPECT_EQ(big.reduce(big.mul(x, y), small), small.mul(big.reduce(x, small), big.reduce(y, small)));
  }
}

TEST(LiftedAlgebra, NonEtaleRejected) {
  auto k = field(2, 1);
  FpPoly g = FpPoly::variable(2, 1, 2) + FpPoly::variable(2, 0);  // y^2 + t, inseparable
  auto q = Algebra::monogenic(k, g, false);
  EXPECT_THROW(LiftedAlgebra(ArtinianBase::unramified(k, 2), q), Error);
}
