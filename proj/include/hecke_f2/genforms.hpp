#pragma once

#include <cstdint>
#include <string>

#include "hecke_f2/fps2.hpp"

namespace hecke_f2 {

// Generators of the mod-2 form algebras. Levels 1, 3, 5 are the supported
// levels throughout; each algebra M(N) is a polynomial ring in one generator:
//   level 1: delta  = sum of q^(k^2), k odd          (q + q^9 + q^25 + ...)
//   level 3: f3     a_n = parity of sigma3(n) minus, when 3 | n, sigma3(n/3)
//   level 5: f5     likewise with 5
// sigma3(n) is odd exactly when n is a square or twice a square, so no
// factorization is ever needed.

bool valid_level(int64_t level);
void require_level(int64_t level);

std::string gen_name(int64_t level);  // "delta", "f3", "f5"

// The level's generator to the given precision (exclusive).
QExpansion gen_qexp(int64_t level, int64_t prec);

// Parity of sigma3(n) for n >= 1: 1 iff n = m^2 or n = 2 m^2.
int sigma3_parity(int64_t n);

// Component of f supported on q-indices congruent to i mod 8 (same precision).
QExpansion graded_part(const QExpansion& f, int64_t i);

}  // namespace hecke_f2
