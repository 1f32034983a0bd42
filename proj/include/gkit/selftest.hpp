#pragma once

#include <cstdint>

#include "gkit/json_io.hpp"

namespace gkit {

// Seeded invariant suites (Witt, p-basis, Cohen, base, Greenberg, Weil
// restriction, units). Report: {"seed", "suites": {name: {"passed",
// "failed"}}, "passed", "failed", "ok"}. Output depends only on the seed.
Json run_selftest(uint64_t seed);

}  // namespace gkit
