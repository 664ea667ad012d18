#pragma once

#include <cstdint>
#include <string>

#include "hecke_f2/f2la.hpp"
#include "vendor/json.hpp"

namespace hecke_f2 {

// First-order deformation counts. A tangent vector is a GF(2)-valued map b
// on the eight-element sign group (the mod-squares classes of Frobenius
// elements); each flavor of deformation problem imposes linear constraints
// phrased through the inertia classes, the decomposition classes and the
// letter c. The constraints depend on the level prime only through its
// residue mod 8.
enum class TangentSystem {
    Unrestricted,   // b(1) = b(c) = 0
    LevelShape,     // + b(di) = b(d) for d in the decomposition classes
    PrimeQuotient,  // b(c) = 0, b = 0 on decomposition classes, coset sums vanish
    Reduced,        // b vanishes on inertia and c, b(di) = b(d), coset sums vanish
};

const char* tangent_system_name(TangentSystem sys);

// Constraint matrix over the 8 unknowns b(g), one row per imposed relation.
BitMatrix tangent_constraints(TangentSystem sys, int64_t n_mod8);

// Nullity via the kernel of the constraint matrix.
int64_t tangent_nullity(TangentSystem sys, int64_t n_mod8);

// Nullity via brute force: count the maps among all 256 that satisfy the
// constraints stated as predicates, then take log2. Throws if the count is
// not a power of two (it always is for a linear system).
int64_t tangent_nullity_enum(TangentSystem sys, int64_t n_mod8);

// 4 x 4 table: rows the four systems, columns the residues 1, 3, 5, 7.
std::string tangent_table_text();
nlohmann::ordered_json tangent_table_json();

}  // namespace hecke_f2
