#include "gkit/greenberg.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <map>
#include <sstream>

#include "gkit/error.hpp"
#include "gkit/random.hpp"

namespace gkit {

namespace {

// "1_0" for multi-indices; stage suffixes drop the separator while digits
// stay single characters.
std::string index_word(const std::vector<uint32_t>& idx, bool separate) {
  std::string s;
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i && separate) s += '_';
    s += std::to_string(idx[i]);
  }
  return s;
}

size_t env_size(const char* name, size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v, &end, 10);
  if (*end != '\0' || x == 0) fail(ErrorCode::InvalidArgument, std::string(name) + " must be a positive integer");
  return static_cast<size_t>(x);
}

void check_symbols(size_t count, const GreenbergLimits& limits) {
  if (count > limits.symbol_cap)
    fail(ErrorCode::ResourceLimit, std::to_string(count) + " symbols exceed the symbol cap of " +
                                       std::to_string(limits.symbol_cap));
}

// Runs f(0..n-1), concurrently when jobs > 1; results in index order.
template <class T, class F>
std::vector<T> run_indexed(size_t n, size_t jobs, F&& f) {
  std::vector<T> out(n);
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  for (size_t start = 0; start < n; start += jobs) {
    std::vector<std::future<T>> batch;
    for (size_t i = start; i < std::min(n, start + jobs); ++i) batch.push_back(std::async(std::launch::async, f, i));
    for (size_t i = 0; i < batch.size(); ++i) out[start + i] = batch[i].get();
  }
  return out;
}

}  // namespace

BaseElem evaluate(const BaseRing& ring, const APoly& f, const std::vector<BaseElem>& values) {
  BaseElem acc = ring.zero();
  for (const auto& term : f.terms) {
    if (term.exps.size() > values.size()) fail(ErrorCode::LengthMismatch, "polynomial has more variables than the point");
    BaseElem m = term.coeff;
    for (size_t v = 0; v < term.exps.size(); ++v)
      if (term.exps[v] > 0) m = ring.mul(m, ring.pow(values[v], term.exps[v]));
    acc = ring.add(acc, m);
  }
  return acc;
}

GreenbergLimits GreenbergLimits::from_env() {
  GreenbergLimits l;
  l.monomial_cap = env_size("GKIT_MONOMIAL_CAP", l.monomial_cap);
  l.symbol_cap = env_size("GKIT_SYMBOL_CAP", l.symbol_cap);
  return l;
}

std::vector<std::string> GreenbergPresentation::equation_strings() const {
  std::vector<std::string> out;
  for (const auto& f : equations) out.push_back(ring->format_poly(f));
  return out;
}

std::vector<std::string> greenberg_symbols(const AffinePresentation& x) {
  const auto& k = *x.base->field();
  const CohenRing& c = x.base->cohen();
  std::vector<std::string> names;
  for (size_t lambda = 0; lambda < x.vars.size(); ++lambda)
    for (size_t j = 0; j <= c.n(); ++j) {
      const uint32_t base = static_cast<uint32_t>(ipow(k.p(), c.n() - j));
      for (size_t flat = 0; flat < c.width(j); ++flat) {
        const std::string word = index_word(unflatten_index(flat, base, k.d()), true);
        for (size_t w = 0; w < x.base->e(); ++w)
          names.push_back("z" + std::to_string(lambda + 1) + "." + std::to_string(j) + "." + word + "." +
                          std::to_string(w));
      }
    }
  return names;
}

std::vector<BaseElem> generic_point(const AffinePresentation& x, const BaseRing& ring) {
  const auto& q = *ring.algebra();
  const CohenRing& c = ring.cohen();
  const size_t e = ring.e();
  if (q.num_symbols() < x.vars.size() * e * c.dimension())
    fail(ErrorCode::TypeMismatch, "algebra lacks the Greenberg coordinate symbols");
  std::vector<BaseElem> point;
  size_t s = 0;
  for (size_t lambda = 0; lambda < x.vars.size(); ++lambda) {
    std::vector<CohenElem> comps(e, c.zero());
    for (size_t j = 0; j <= c.n(); ++j)
      for (size_t flat = 0; flat < c.width(j); ++flat)
        for (size_t w = 0; w < e; ++w) comps[w].coords[j][flat] = q.symbol(s++);
    point.push_back(ring.from_components(comps));
  }
  return point;
}

std::vector<Elem> transform_polynomial(const AffinePresentation& x, const BaseRing& ring, const APoly& f) {
  const BaseElem value = evaluate(ring, f, generic_point(x, ring));
  const auto comps = ring.components(value);
  std::vector<Elem> out;
  const CohenRing& c = ring.cohen();
  for (size_t j = 0; j <= c.n(); ++j)
    for (size_t flat = 0; flat < c.width(j); ++flat)
      for (size_t w = 0; w < ring.e(); ++w) out.push_back(comps[w].coords[j][flat]);
  return out;
}

// Repeated equations carry no information; the first occurrence keeps its place.
static void push_unique(std::vector<FpPoly>& eqs, FpPoly f) {
  if (std::find(eqs.begin(), eqs.end(), f) == eqs.end()) eqs.push_back(std::move(f));
}

GreenbergPresentation greenberg_transform(const AffinePresentation& x, size_t stage, const GreenbergLimits& limits) {
  auto names = greenberg_symbols(x);
  check_symbols(names.size(), limits);
  GreenbergPresentation g;
  g.ring = x.base->field()->with_symbols(std::move(names))->with_term_cap(limits.monomial_cap);
  const BaseRing ring(x.base, g.ring);
  auto per_eq = run_indexed<std::vector<FpPoly>>(x.eqs.size(), limits.jobs, [&](size_t mu) {
    std::vector<FpPoly> eqs;
    for (const auto& coord : transform_polynomial(x, ring, x.eqs[mu]))
      if (!g.ring->is_zero(coord)) eqs.push_back(g.ring->equation_form(coord));
    return eqs;
  });
  for (auto& eqs : per_eq)
    for (auto& f : eqs) push_unique(g.equations, std::move(f));
  for (size_t s = 0; s < stage; ++s) g = weil_restrict(g, limits);
  return g;
}

namespace {

void check_point(const BaseRing& ring, const AffinePresentation& x, const std::vector<BaseElem>& point) {
  if (point.size() != x.vars.size()) fail(ErrorCode::LengthMismatch, "point has the wrong number of coordinates");
  for (size_t mu = 0; mu < x.eqs.size(); ++mu)
    if (!ring.is_zero(evaluate(ring, x.eqs[mu], point)))
      fail(ErrorCode::NotASolution, "equation " + std::to_string(mu + 1) + " does not vanish at the point");
}

}  // namespace

std::vector<Elem> point_to_coords(const AffinePresentation& x, const GreenbergPresentation& g,
                                  const std::vector<BaseElem>& point) {
  if (g.stage != 0) fail(ErrorCode::InvalidArgument, "point transfer works on the stage-0 presentation");
  const BaseRing ring(x.base, x.base->field());
  check_point(ring, x, point);
  std::vector<Elem> coords;
  const CohenRing& c = ring.cohen();
  for (const auto& entry : point) {
    const auto comps = ring.components(entry);
    for (size_t j = 0; j <= c.n(); ++j)
      for (size_t flat = 0; flat < c.width(j); ++flat)
        for (size_t w = 0; w < ring.e(); ++w) coords.push_back(comps[w].coords[j][flat]);
  }
  const auto& k = *x.base->field();
  for (const auto& f : g.equations)
    check_internal(k.is_zero(g.ring->substitute(g.ring->from_poly(f), coords, k)),
                   "Greenberg equation does not vanish at a transferred point");
  return coords;
}

std::vector<BaseElem> coords_to_point(const AffinePresentation& x, const std::vector<Elem>& coords) {
  const BaseRing ring(x.base, x.base->field());
  const CohenRing& c = ring.cohen();
  const size_t e = ring.e();
  if (coords.size() != x.vars.size() * e * c.dimension())
    fail(ErrorCode::LengthMismatch, "wrong number of Greenberg coordinates");
  std::vector<BaseElem> point;
  size_t s = 0;
  for (size_t lambda = 0; lambda < x.vars.size(); ++lambda) {
    std::vector<CohenElem> comps(e, c.zero());
    for (size_t j = 0; j <= c.n(); ++j)
      for (size_t flat = 0; flat < c.width(j); ++flat)
        for (size_t w = 0; w < e; ++w) comps[w].coords[j][flat] = coords[s++];
    point.push_back(ring.from_components(comps));
  }
  check_point(ring, x, point);
  return point;
}

FrobeniusTwist::FrobeniusTwist(AlgebraPtr q) : q_(std::move(q)), size_(ipow(q_->p(), q_->d())) {}

FrobeniusTwist::Elem FrobeniusTwist::constant(const gkit::Elem& c) const {
  Elem r(size_, q_->zero());
  r[0] = c;
  return r;
}

FrobeniusTwist::Elem FrobeniusTwist::add(const Elem& a, const Elem& b) const {
  Elem r(size_);
  for (size_t i = 0; i < size_; ++i) r[i] = q_->add(a[i], b[i]);
  return r;
}

FrobeniusTwist::Elem FrobeniusTwist::mul(const Elem& a, const Elem& b) const {
  const uint32_t p = q_->p();
  const size_t d = q_->d();
  Elem r(size_, q_->zero());
  for (size_t i = 0; i < size_; ++i) {
    if (q_->is_zero(a[i])) continue;
    const auto ii = unflatten_index(i, p, d);
    for (size_t j = 0; j < size_; ++j) {
      if (q_->is_zero(b[j])) continue;
      const auto jj = unflatten_index(j, p, d);
      std::vector<uint32_t> sum(d), carry(d);
      for (size_t c = 0; c < d; ++c) {
        sum[c] = ii[c] + jj[c];
        if (sum[c] >= p) {
          sum[c] -= p;
          carry[c] = 1;  // T_c^p = t_c
        }
      }
      r[flatten_index(sum, p)] = q_->add(r[flatten_index(sum, p)],
                                         q_->mul(q_->mul(a[i], b[j]), q_->monomial(Monomial(std::move(carry)))));
    }
  }
  return r;
}

FrobeniusTwist::Elem FrobeniusTwist::pow(const Elem& a, uint64_t k) const {
  Elem result = constant(q_->one());
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return result;
}

GreenbergPresentation weil_restrict(const GreenbergPresentation& g, const GreenbergLimits& limits) {
  const auto& q = *g.ring;
  if (q.has_generator()) fail(ErrorCode::UnsupportedAlgebra, "Weil restriction expects a system over k");
  const uint32_t p = q.p();
  const size_t d = q.d();
  const size_t width = ipow(p, d);
  const auto& old = q.symbol_names();
  check_symbols(old.size() * width, limits);

  std::vector<std::string> names;
  for (const auto& s : old)
    for (size_t i = 0; i < width; ++i) names.push_back(s + ".s" + index_word(unflatten_index(i, p, d), p > 10));
  GreenbergPresentation out;
  out.stage = g.stage + 1;
  out.substitutions = g.substitutions;
  out.ring = q.base_field()->with_symbols(std::move(names))->with_term_cap(limits.monomial_cap);
  {
    std::ostringstream os;
    os << "z = sum_i z.s<i> * T^i with T^" << p << " = t (" << old.size() << " symbols -> " << old.size() * width
       << ")";
    out.substitutions.push_back(os.str());
  }
  const FrobeniusTwist twist(out.ring);
  const auto& r = *out.ring;

  std::map<std::pair<size_t, uint32_t>, FrobeniusTwist::Elem> powers;
  auto symbol_power = [&](size_t s, uint32_t e) -> const FrobeniusTwist::Elem& {
    auto it = powers.find({s, e});
    if (it != powers.end()) return it->second;
    FrobeniusTwist::Elem z(width, r.zero());
    for (size_t i = 0; i < width; ++i) z[i] = r.symbol(s * width + i);
    return powers.emplace(std::make_pair(s, e), twist.pow(z, e)).first->second;
  };

  for (const auto& f : g.equations) {
    FrobeniusTwist::Elem acc(width, r.zero());
    for (const auto& term : f.terms()) {
      std::vector<uint32_t> t_part(d);
      for (size_t v = 0; v < d; ++v) t_part[v] = term.mono.exponent(v);
      FrobeniusTwist::Elem m =
          twist.constant(r.from_poly(FpPoly(p, Monomial(std::move(t_part)), term.coeff)));
      for (size_t s = 0; s < old.size(); ++s) {
        const uint32_t e = term.mono.exponent(q.symbol_index(s));
        if (e > 0) m = twist.mul(m, symbol_power(s, e));
      }
      acc = twist.add(acc, m);
    }
    for (const auto& coeff : acc)
      if (!r.is_zero(coeff)) push_unique(out.equations, r.equation_form(coeff));
  }
  return out;
}

Elem ga_frob_section(const Algebra& q, const Elem& f) { return q.expand(f, 1)[0]; }

std::vector<Elem> ga_frob_coker_coords(const Algebra& q, const Elem& f) {
  auto digits = q.expand(f, 1);
  return std::vector<Elem>(digits.begin() + 1, digits.end());
}

KernelReport graded_kernel_check(GroupKind group, const BasePtr& base, size_t i, uint64_t seed, size_t samples) {
  if (i > base->r()) fail(ErrorCode::InvalidArgument, "graded index beyond r");
  KernelReport rep;
  rep.group = group;
  rep.i = i;
  const size_t v = i + 1;
  const size_t R = base->nilpotency();
  if (v >= R) {
    rep.isomorphism = "trivial: I^" + std::to_string(v) + " = 0";
    return rep;
  }
  rep.expected_rank = 1;
  rep.position = v / base->e();
  rep.component = v % base->e();
  rep.coordinate_count = base->cohen().width(rep.position);

  const auto& k = *base->field();
  const BaseRing ring(base, base->field());
  const bool mult = group == GroupKind::Multiplicative;
  const BaseElem one = ring.one();
  // Kernel element of G(A/I^(v+1)) attached to f in k.
  auto kernel_elem = [&](const BaseRing& r, const Elem& f) {
    BaseElem x = r.digit_lift(f, v);
    return mult ? r.add(r.one(), x) : x;
  };
  auto to_k = [&](const BaseRing& r, const BaseElem& g) { return r.digit(mult ? r.sub(g, r.one()) : g, v); };
  auto op = [&](const BaseRing& r, const BaseElem& a, const BaseElem& b) {
    return r.reduce(mult ? r.mul(a, b) : r.add(a, b), v + 1);
  };
  auto trivial = [&](const BaseRing& r, const BaseElem& g) {
    return r.reduce(g, v) == (mult ? r.reduce(r.one(), v) : r.zero());
  };

  Sampler rng(seed);
  bool surjective_hit = false;
  for (size_t s = 0; s < samples; ++s) {
    const Elem f1 = rng.elem(k, 2, 3, true), f2 = rng.elem(k, 2, 3, true);
    // Noise in I^(v+1) disappears in A/I^(v+1).
    const BaseElem noise = rng.base_in_ideal(ring, v + 1);
    const BaseElem x1 = ring.reduce(ring.add(kernel_elem(ring, f1), noise), v + 1);
    const BaseElem x2 = ring.reduce(kernel_elem(ring, f2), v + 1);
    bool ok = trivial(ring, x1) && trivial(ring, x2);
    ok = ok && k.equal(to_k(ring, x1), f1);
    ok = ok && k.equal(to_k(ring, op(ring, x1, x2)), k.add(f1, f2));
    ok = ok && ring.reduce(kernel_elem(ring, to_k(ring, x1)), v + 1) == x1;
    // An element outside the kernel is detected.
    const BaseElem outside = ring.add(mult ? one : ring.zero(), ring.digit_lift(k.one(), v - 1));
    ok = ok && !trivial(ring, ring.reduce(outside, v + 1));
    surjective_hit = surjective_hit || !k.is_zero(f1);
    rep.points_ok = rep.points_ok && ok;
    ++rep.points_checked;
  }
  rep.kernel_rank = rep.points_ok && surjective_hit ? 1 : 0;

  auto q = base->field()->with_symbols({"z1", "z2"});
  const BaseRing sym(base, q);
  const BaseElem y1 = kernel_elem(sym, q->symbol(0)), y2 = kernel_elem(sym, q->symbol(1));
  // Generic points are read through sigma (symbols stand for p^n-th powers of
  // the coordinates), so only the structure is compared here.
  const Elem d1 = to_k(sym, y1), d2 = to_k(sym, y2);
  rep.symbolic_ok = trivial(sym, y1) && trivial(sym, y2) && !q->is_zero(d1) &&
                    q->equal(to_k(sym, op(sym, y1, y2)), q->add(d1, d2));

  std::ostringstream os;
  os << (mult ? "u -> digit_" : "x -> digit_") << v << (mult ? "(u - 1)" : "(x)") << " in k; coordinates x_"
     << rep.position << "(i), pi-component " << rep.component;
  rep.isomorphism = os.str();
  return rep;
}

}  // namespace gkit
