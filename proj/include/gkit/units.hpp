#pragma once

#include <optional>
#include <utility>

#include "gkit/base.hpp"

namespace gkit {

// Largest n with u - 1 in I^n; nullopt for u = 1 (infinite level).
// NotAUnit when the residue of u vanishes.
std::optional<size_t> unit_level(const BaseRing& ring, const BaseElem& u);

BaseElem p_power(const BaseRing& ring, const BaseElem& u);

// The u of level >= n with u^p = v, by Hensel iteration over the graded
// pieces: at level l the correction x in I^l is fixed by
//   digit_{l+e}(v u^-p - 1) = rho * digit_l(x),
// since (1+x)^p = 1 + p x modulo I^(l+e+1) once l (p-1) > e.
// The solution is unique modulo U^(R-e) (those units have trivial p-th
// power); the returned one has no digits at or beyond R - e.
// LevelTooLow unless n (p-1) > e; NotInTargetFiltration unless v is a unit
// of level >= n + e.
BaseElem p_power_solve(const BaseRing& ring, const BaseElem& v, size_t n);

// u != 1 of level >= n with u^p = 1 and u not in U^(R-e), i.e. a failure of
// injectivity of the p-th power on U^n; searched among 1 + c pi^l and -1.
std::optional<BaseElem> p_power_collision(const BaseRing& ring, size_t n);

}  // namespace gkit
