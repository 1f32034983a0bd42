#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace gkit {

// Z as a Witt coefficient ring (the ghost-map oracle lives here).
struct IntegerRing {
  using Value = mpz_class;

  Value zero() const { return 0; }
  Value one() const { return 1; }
  Value from_int(int64_t v) const { return mpz_class(static_cast<long>(v)); }
  Value from_mpz(const mpz_class& v) const { return v; }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value pow(const Value& a, uint64_t e) const {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
  }
  bool equal(const Value& a, const Value& b) const { return a == b; }
  bool is_zero(const Value& a) const { return a == 0; }
  uint32_t characteristic() const { return 0; }
};

}  // namespace gkit
