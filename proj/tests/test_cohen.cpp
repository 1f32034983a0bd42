#include <gtest/gtest.h>

#include "gkit/cohen.hpp"
#include "gkit/error.hpp"
#include "gkit/expr.hpp"
#include "support.hpp"

using namespace gkit;
using gkit::testing::artin_schreier;
using gkit::testing::field;
using gkit::testing::random_cohen;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

}  // namespace

TEST(Cohen, ToWittExamples) {
  auto k = field(2, 1);
  CohenRing c(k, 1);
  const Elem a = parse_elem(*k, "t + 1");
  EXPECT_EQ(c.to_witt(c.coordinate(0, 1, k->one())), (std::vector<Elem>{k->pbasis(0), k->zero()}));
  EXPECT_EQ(c.to_witt(c.coordinate(0, 0, a)), (std::vector<Elem>{k->pow(a, 2), k->zero()}));
  EXPECT_EQ(c.to_witt(c.coordinate(1, 0, a)), (std::vector<Elem>{k->zero(), k->pow(a, 2)}));
}

TEST(Cohen, ExtractExamples) {
  auto k = field(2, 1);
  CohenRing c(k, 1);
  const Elem t = k->pbasis(0);
  EXPECT_EQ(c.extract({t, k->zero()}), c.coordinate(0, 1, k->one()));
  EXPECT_EQ(c.extract({k->mul(t, t), k->zero()}), c.coordinate(0, 0, t));
  EXPECT_EQ(code_of([&] { c.extract({k->zero(), t}); }), ErrorCode::NotInCohen);
}

TEST(Cohen, ArithmeticExamples) {
  auto k = field(2, 1);
  CohenRing c(k, 1);
  const auto tau = c.coordinate(0, 1, k->one());
  EXPECT_EQ(c.mul(tau, tau), c.coordinate(0, 0, k->pbasis(0)));
  EXPECT_EQ(c.add(tau, tau), c.coordinate(1, 0, k->pbasis(0)));
  EXPECT_TRUE(c.is_zero(c.add(tau, c.neg(tau))));
  EXPECT_EQ(c.residue(tau), k->pbasis(0));
}

class CohenRoundTrip : public ::testing::TestWithParam<std::tuple<uint32_t, size_t, size_t, bool>> {};

TEST_P(CohenRoundTrip, ExtractInvertsToWittAndClosure) {
  const auto [p, d, n, etale] = GetParam();
  auto q = etale ? artin_schreier(p) : field(p, d);
  CohenRing c(q, n);
  std::mt19937_64 rng(p * 1000 + d * 100 + n * 10 + etale);
  for (int it = 0; it < 8; ++it) {
    const auto a = random_cohen(rng, c), b = random_cohen(rng, c);
    EXPECT_EQ(c.extract(c.to_witt(a)), a);
    const auto s = c.add(a, b), m = c.mul(a, b);
    // Witt images agree with the Witt operations.
    EXPECT_EQ(c.to_witt(s), c.witt().add(c.to_witt(a), c.to_witt(b)));
    EXPECT_EQ(c.to_witt(m), c.witt().mul(c.to_witt(a), c.to_witt(b)));
    EXPECT_TRUE(c.is_zero(c.add(a, c.neg(a))));
  }
}

INSTANTIATE_TEST_SUITE_P(Small, CohenRoundTrip,
                         ::testing::Values(std::make_tuple(2u, size_t{1}, size_t{1}, false),
                                           std::make_tuple(2u, size_t{1}, size_t{2}, false),
                                           std::make_tuple(3u, size_t{1}, size_t{1}, false),
                                           std::make_tuple(3u, size_t{1}, size_t{2}, false),
                                           std::make_tuple(2u, size_t{2}, size_t{1}, false),
                                           std::make_tuple(2u, size_t{1}, size_t{1}, true)));

TEST(Cohen, SymbolicCoordinatesRoundTrip) {
  auto q = field(2, 1)->with_symbols({"a", "b", "c"});
  CohenRing c(q, 1);
  CohenElem x = c.zero();
  x.coords[0][0] = q->symbol(0);
  x.coords[0][1] = q->symbol(1);
  x.coords[1][0] = q->symbol(2);
  const auto w = c.to_witt(x);
  // sigma twists t only; a literal p-th power of the symbols would read
  // (a^2 + t b^2, t a^2 b^2 + c^2), the same entries with z^2 renamed z.
  EXPECT_EQ(w[0], parse_elem(*q, "a + t*b"));
  EXPECT_EQ(w[1], parse_elem(*q, "t*a*b + c"));
  EXPECT_EQ(c.extract(w), x);
}

TEST(Cohen, DegenerateBaseIsWitt) {
  auto f = field(3, 0);
  CohenRing c(f, 2);
  EXPECT_EQ(c.dimension(), 3u);
  const std::vector<Elem> w{f->from_int(1), f->from_int(2), f->from_int(1)};
  EXPECT_EQ(c.to_witt(c.extract(w)), w);
}

TEST(Cohen, VerschiebungEmbedding) {
  auto k = field(2, 1);
  CohenRing c1(k, 0), c2(k, 1), c3(k, 2);
  const Elem a = parse_elem(*k, "t^2 + 1");
  EXPECT_EQ(ver_embed(c2, c1.coordinate(0, 0, a)), c2.coordinate(1, 0, a));
  EXPECT_TRUE(c3.is_zero(ver_embed(c3, c2.zero())));
  EXPECT_EQ(code_of([&] { ver_embed(c1, c2.zero()); }), ErrorCode::LevelMismatch);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 6; ++it) {
    const auto x = random_cohen(rng, c2), y = random_cohen(rng, c2);
    EXPECT_EQ(ver_embed(c3, c2.add(x, y)), c3.add(ver_embed(c3, x), ver_embed(c3, y)));
    // The embedding is multiplication by p after any lift: p * lift(x) = V(x).
    EXPECT_EQ(ver_embed(c3, x), solve_p_division(c3, ver_embed(c3, x), 1) == c3.zero()
                                    ? c3.zero()
                                    : c3.scale(solve_p_division(c3, ver_embed(c3, x), 1), 2));
  }
}

TEST(Cohen, PDivisionExamples) {
  auto k = field(2, 1);
  CohenRing c(k, 1);
  EXPECT_EQ(solve_p_division(c, c.coordinate(1, 0, k->pbasis(0)), 1), c.coordinate(0, 1, k->one()));
  EXPECT_TRUE(c.is_zero(solve_p_division(c, c.zero(), 1)));
  const Elem a = parse_elem(*k, "t + 1");
  const auto sol = solve_p_division(c, c.coordinate(1, 0, k->pow(a, 2)), 1);
  EXPECT_EQ(c.scale(sol, 2), c.coordinate(1, 0, k->pow(a, 2)));
  EXPECT_EQ(code_of([&] { solve_p_division(c, c.one(), 1); }), ErrorCode::NotInImage);
}

class PDivision : public ::testing::TestWithParam<std::tuple<uint32_t, size_t, bool>> {};

TEST_P(PDivision, MultipliesBack) {
  const auto [p, n, etale] = GetParam();
  auto q = etale ? artin_schreier(p) : field(p, 1);
  CohenRing c(q, n);
  std::mt19937_64 rng(17 * p + n + etale);
  for (size_t e = 1; e <= n; ++e) {
    CohenRing small(q, n - e);
    for (int it = 0; it < 4; ++it) {
      const auto target = ver_embed(c, random_cohen(rng, small));
      const auto x = solve_p_division(c, target, e);
      EXPECT_EQ(c.scale(x, static_cast<int64_t>(ipow(p, e))), target);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Small, PDivision,
                         ::testing::Values(std::make_tuple(2u, size_t{1}, false), std::make_tuple(2u, size_t{2}, false),
                                           std::make_tuple(3u, size_t{2}, false), std::make_tuple(2u, size_t{1}, true),
                                           std::make_tuple(2u, size_t{2}, true)));

TEST(Cohen, ResidueKernelIsPMultiples) {
  auto k = field(2, 1);
  CohenRing c(k, 2);
  std::mt19937_64 rng(23);
  for (int it = 0; it < 10; ++it) {
    const auto x = random_cohen(rng, c);
    EXPECT_TRUE(k->is_zero(c.residue(c.scale(x, 2))));
    // Kill the level-0 coordinates: the rest lies in p*C.
    auto y = x;
    for (auto& v : y.coords[0]) v = k->zero();
    EXPECT_TRUE(k->is_zero(c.residue(y)));
    EXPECT_EQ(c.scale(solve_p_division(c, y, 1), 2), y);
  }
  const Elem a = parse_elem(*k, "t + 1");
  EXPECT_EQ(c.residue(c.coordinate(0, 0, a)), k->pow(a, 4));
}

TEST(Cohen, TruncationIsRingMap) {
  auto k = field(2, 1);
  CohenRing c(k, 2);
  std::mt19937_64 rng(29);
  CohenRing c2(k, 1);
  for (int it = 0; it < 6; ++it) {
    const auto x = random_cohen(rng, c), y = random_cohen(rng, c);
    EXPECT_EQ(c.truncate(c.add(x, y), 2), c2.add(c.truncate(x, 2), c.truncate(y, 2)));
    EXPECT_EQ(c.truncate(c.mul(x, y), 2), c2.mul(c.truncate(x, 2), c.truncate(y, 2)));
  }
}

TEST(Cohen, TopCoordinateSequence) {
  // x minus a level-0 lift of its residue lies in the embedded C_{n}.
  auto k = field(3, 1);
  CohenRing c(k, 1), c0(k, 0);
  std::mt19937_64 rng(31);
  for (int it = 0; it < 6; ++it) {
    const auto x = random_cohen(rng, c);
    const auto rest = c.sub(x, c.level0_lift(c.residue(x)));
    EXPECT_GE(c.valuation(rest), 1u);
  }
}

TEST(Cohen, MonomialGeneratorsSpan) {
  // Every canonical form is a W(k^(p^n))-combination of the generators [t]^i:
  // sum_i [sigma^n(x_0(i))] [t]^i reproduces level 0.
  auto k = field(2, 1);
  CohenRing c(k, 1);
  std::mt19937_64 rng(37);
  for (int it = 0; it < 6; ++it) {
    const auto x = random_cohen(rng, c);
    auto w = c.witt().zero(2);
    for (size_t i = 0; i < x.coords[0].size(); ++i) {
      const auto coeff = c.witt().teichmuller(k->twist(x.coords[0][i], 1), 2);
      auto gen = c.witt().one(2);
      for (size_t e = 0; e < i; ++e) gen = c.witt().mul(gen, c.witt().teichmuller(k->pbasis(0), 2));
      w = c.witt().add(w, c.witt().mul(coeff, gen));
    }
    w = c.witt().add(w, c.witt().verschiebung({k->twist(x.coords[1][0], 1)}));
    EXPECT_EQ(c.extract(w), x);
  }
}
