#include "gkit/selftest.hpp"

#include <functional>

#include "gkit/error.hpp"
#include "gkit/expr.hpp"
#include "gkit/greenberg.hpp"
#include "gkit/integers.hpp"
#include "gkit/random.hpp"
#include "gkit/units.hpp"

namespace gkit {

namespace {

struct Tally {
  size_t passed = 0;
  size_t failed = 0;

  void check(const std::function<bool()>& f) {
    bool ok = false;
    try {
      ok = f();
    } catch (const Error&) {
      ok = false;
    }
    ++(ok ? passed : failed);
  }
};

AlgebraPtr field(uint32_t p, size_t d) {
  std::vector<std::string> names;
  for (size_t i = 0; i < d; ++i) names.push_back("t" + std::to_string(i + 1));
  if (d == 1) names = {"t"};
  return Algebra::field(PrimeParams{p, names});
}

AlgebraPtr etale(uint32_t p) {
  auto k = field(p, 1);
  // y^2 + y + t
  const FpPoly y = FpPoly::variable(p, 1), t = FpPoly::variable(p, 0);
  return Algebra::monogenic(k, y * y + y + t);
}

void witt_ghost(Tally& out, Sampler& rng) {
  for (auto [p, n] : {std::pair<uint32_t, size_t>{2, 3}, {3, 2}}) {
    const WittArithmetic<IntegerRing> w(IntegerRing{}, p);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<mpz_class> a(n), b(n);
      for (auto& x : a) x = static_cast<long>(rng.below(21)) - 10;
      for (auto& x : b) x = static_cast<long>(rng.below(21)) - 10;
      out.check([&] {
        const auto s = w.add(a, b), m = w.mul(a, b), ng = w.neg(a);
        for (size_t r = 0; r < n; ++r) {
          if (w.ghost(r, s) != w.ghost(r, a) + w.ghost(r, b)) return false;
          if (w.ghost(r, m) != w.ghost(r, a) * w.ghost(r, b)) return false;
          if (w.ghost(r, ng) != -w.ghost(r, a)) return false;
        }
        return true;
      });
    }
  }
}

void witt_vf(Tally& out, Sampler& rng) {
  for (uint32_t p : {2u, 3u}) {
    auto k = field(p, 1);
    const WittArithmetic<AlgebraRing> w(AlgebraRing{k}, p);
    const size_t n = 3;
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Elem> u(n), v(n - 1);
      for (auto& x : u) x = rng.elem(*k, 1, 2);
      for (auto& x : v) x = rng.elem(*k, 1, 2);
      out.check([&] {
        const auto fu = w.truncate(w.frobenius(u), n - 1);
        return w.equal(w.mul(u, w.verschiebung(v)), w.verschiebung(w.mul(fu, v))) &&
               w.equal(w.scale(u, p), w.verschiebung(fu));
      });
    }
  }
}

void pbasis(Tally& out, Sampler& rng) {
  for (const auto& q : {field(2, 1), field(3, 2), etale(2)}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Elem a = rng.elem(*q, 3, 4, true);
      out.check([&] {
        const auto digits = q->expand(a);
        Elem sum = q->zero();
        const auto base = q->p();
        for (size_t m = 0; m < digits.size(); ++m) {
          Elem mono = q->twist(digits[m]);
          const auto idx = unflatten_index(m, base, q->d());
          for (size_t i = 0; i < idx.size(); ++i) mono = q->mul(mono, q->pow(q->pbasis(i), idx[i]));
          sum = q->add(sum, mono);
        }
        return sum == a && ga_frob_section(*q, q->frobenius(a)) == a;
      });
    }
  }
}

void cohen_roundtrip(Tally& out, Sampler& rng) {
  for (auto [p, d, n] : {std::tuple<uint32_t, size_t, size_t>{2, 1, 2}, {3, 1, 1}, {2, 2, 1}}) {
    CohenRing ring(field(p, d), n);
    for (int trial = 0; trial < 5; ++trial) {
      const CohenElem a = rng.cohen(ring), b = rng.cohen(ring);
      out.check([&] {
        return ring.extract(ring.to_witt(a)) == a && ring.extract(ring.to_witt(ring.mul(a, b))) == ring.mul(a, b);
      });
    }
  }
  // (0, t) is not a Witt vector in the image of the Cohen ring.
  out.check([] {
    auto k = field(2, 1);
    CohenRing ring(k, 1);
    try {
      ring.extract({k->zero(), k->pbasis(0)});
    } catch (const Error& e) {
      return e.code() == ErrorCode::NotInCohen;
    }
    return false;
  });
}

void p_division(Tally& out, Sampler& rng) {
  for (const auto& q : {field(2, 1), etale(2)}) {
    CohenRing ring(q, 2);
    for (int trial = 0; trial < 5; ++trial) {
      const size_t e = 1 + rng.below(2);
      const CohenElem x = rng.cohen(ring);
      out.check([&] {
        const CohenElem target = ring.scale(x, static_cast<int64_t>(ipow(2, e)));
        return ring.scale(solve_p_division(ring, target, e), static_cast<int64_t>(ipow(2, e))) == target;
      });
    }
  }
}

void residue_kernel(Tally& out, Sampler& rng) {
  CohenRing ring(field(3, 1), 2);
  for (int trial = 0; trial < 10; ++trial) {
    CohenElem x = rng.cohen(ring);
    if (trial % 2 == 0) x.coords[0].assign(x.coords[0].size(), ring.algebra()->zero());
    out.check([&] {
      const bool in_kernel = ring.algebra()->is_zero(ring.residue(x));
      bool divisible = true;
      try {
        divisible = ring.scale(solve_p_division(ring, x, 1), 3) == x;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotInImage) throw;
        divisible = false;
      }
      return in_kernel == divisible;
    });
  }
}

void base_structure(Tally& out, Sampler& rng) {
  auto k = field(2, 1);
  CohenRing c(k, 1);
  for (const auto& base : {ArtinianBase::unramified(k, 2), ArtinianBase::eisenstein(k, 2, {c.from_int(2), c.zero()})}) {
    BaseRing a(base, k);
    for (int trial = 0; trial < 5; ++trial) {
      const CohenElem x = rng.cohen(a.cohen()), y = rng.cohen(a.cohen());
      out.check([&] {
        const auto& cr = a.cohen();
        return a.structure_map(cr.mul(x, y)) == a.mul(a.structure_map(x), a.structure_map(y)) &&
               a.structure_map(cr.add(x, y)) == a.add(a.structure_map(x), a.structure_map(y));
      });
    }
    out.check([&] { return a.is_zero(a.pow(a.pi(), base->nilpotency())); });
  }
}

AffinePresentation worked_example() {
  auto base = ArtinianBase::unramified(field(2, 1), 2);
  BaseRing a(base, base->field());
  const BaseElem tau = a.lift(base->field()->pbasis(0));
  return {base, {"x"}, {APoly{{{{2}, a.one()}, {{}, a.neg(a.mul(tau, tau))}}}}};
}

void greenberg_example(Tally& out, Sampler& rng) {
  const AffinePresentation x = worked_example();
  const auto g = greenberg_transform(x);
  out.check([&] {
    const FpPoly level0 = g.ring->equation_form(parse_elem(*g.ring, "z1.0.0.0^2 + z1.0.1.0^2*t + t"));
    return !g.equations.empty() && g.equations[0] == level0;
  });
  BaseRing a(x.base, x.base->field());
  const auto& k = *x.base->field();
  for (int trial = 0; trial < 5; ++trial) {
    const Elem eta = rng.elem(k, 2, 3);
    out.check([&] {
      const BaseElem point = a.add(a.lift(k.pbasis(0)), a.mul(a.from_int(2), a.lift(eta)));
      const auto coords = point_to_coords(x, g, {point});
      return coords_to_point(x, coords) == std::vector<BaseElem>{point};
    });
  }
}

void weil_restriction(Tally& out, Sampler& rng) {
  for (auto [p, d] : {std::pair<uint32_t, size_t>{2, 1}, {3, 1}, {2, 2}}) {
    GreenbergPresentation line;
    line.ring = field(p, d)->with_symbols({"z"});
    out.check([&] {
      const auto r = weil_restrict(line);
      return r.equations.empty() && r.symbols().size() == ipow(p, d);
    });
  }
  auto k = field(2, 1);
  for (int trial = 0; trial < 5; ++trial) {
    const Elem f = rng.elem(*k, 3, 4, true);
    out.check([&] {
      const auto coker = ga_frob_coker_coords(*k, f);
      Elem sum = k->frobenius(ga_frob_section(*k, f));
      for (size_t m = 1; m < coker.size() + 1; ++m)
        sum = k->add(sum, k->mul(k->frobenius(coker[m - 1]), k->pow(k->pbasis(0), m)));
      return sum == f;
    });
  }
}

void units(Tally& out, Sampler& rng) {
  auto k = field(3, 1);
  BaseRing a(ArtinianBase::unramified(k, 3), k);
  for (int trial = 0; trial < 5; ++trial) {
    const BaseElem u = a.add(a.one(), rng.base_in_ideal(a, 1));
    out.check([&] {
      const BaseElem v = p_power(a, u);
      const BaseElem s = p_power_solve(a, v, 1);
      return p_power(a, s) == v && a.reduce(s, 2) == a.reduce(u, 2);
    });
  }
  out.check([] {
    auto k2 = field(2, 1);
    return p_power_collision(BaseRing(ArtinianBase::unramified(k2, 3), k2), 1).has_value();
  });
}

}  // namespace

Json run_selftest(uint64_t seed) {
  const std::vector<std::pair<std::string, void (*)(Tally&, Sampler&)>> suites{
      {"base_structure", base_structure}, {"cohen_roundtrip", cohen_roundtrip},
      {"greenberg_example", greenberg_example}, {"p_division", p_division},
      {"pbasis", pbasis}, {"residue_kernel", residue_kernel},
      {"units", units}, {"weil_restriction", weil_restriction},
      {"witt_ghost", witt_ghost}, {"witt_vf", witt_vf},
  };
  Json report{{"seed", seed}, {"suites", Json::object()}};
  size_t passed = 0, failed = 0;
  for (size_t i = 0; i < suites.size(); ++i) {
    Sampler rng(seed * 1000003u + i);
    Tally t;
    suites[i].second(t, rng);
    report["suites"][suites[i].first] = {{"passed", t.passed}, {"failed", t.failed}};
    passed += t.passed;
    failed += t.failed;
  }
  report["passed"] = passed;
  report["failed"] = failed;
  report["ok"] = failed == 0;
  return report;
}

}  // namespace gkit
