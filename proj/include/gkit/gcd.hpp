#pragma once

#include <vector>

#include "gkit/polynomial.hpp"

namespace gkit {

// Monic greatest common divisor in F_p[x_0, x_1, ...]; gcd(0, 0) = 0.
// Recursive primitive-PRS on the largest occurring variable.
FpPoly poly_gcd(const FpPoly& a, const FpPoly& b);

// a / b when b divides a exactly; throws InternalError otherwise.
FpPoly divide_exact(const FpPoly& a, const FpPoly& b);

// Division with remainder; leading terms of the remainder are not divisible
// by the leading term of b (graded-lex).
std::pair<FpPoly, FpPoly> divide_with_remainder(const FpPoly& a, const FpPoly& b);

// Coefficients of f viewed as a polynomial in x_var; entry e is the
// coefficient of x_var^e and does not involve x_var.
std::vector<FpPoly> coefficients_in(const FpPoly& f, size_t var);
FpPoly from_coefficients(const std::vector<FpPoly>& coeffs, size_t var, uint32_t p);

}  // namespace gkit
