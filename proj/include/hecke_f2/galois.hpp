#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vendor/json.hpp"

namespace hecke_f2 {

// The mod-squares class of a Frobenius element for the compositum
// Q(sqrt(-1), sqrt(2), sqrt(N)): a triple of signs recording the action on
// the three square roots, together with the bookkeeping derived from it.
struct FrattiniClass {
    std::array<int, 3> eps{};  // action on sqrt(-1), sqrt(2), sqrt(N); 1 = moved
    int64_t label = 1;         // 1, 3, 5, 7: the mod-8 cyclotomic coordinate
    bool plus = true;          // fixes sqrt(N)
    std::string letters;       // word in the letter generators c, d, i

    bool operator==(const FrattiniClass& o) const {
        return eps == o.eps && label == o.label && plus == o.plus &&
               letters == o.letters;
    }
};

// Jacobi symbol (a | n) for odd n > 0; returns -1, 0 or 1.
int jacobi(int64_t a, int64_t n);

bool is_prime_ll(int64_t n);

// Class of Frob_q for an odd prime q not dividing 2 * level; level 3 or 5.
FrattiniClass frattini_class(int64_t level, int64_t q);

// Same data reconstructed from the sign triple alone.
FrattiniClass class_of_triple(int64_t level, const std::array<int, 3>& t);

// Inertia and decomposition data at the level prime, reduced to the
// eight-element sign group. Parameterized by the residue of the prime mod 8
// so the tangent systems can range over all four odd residues. The class of
// the letter c is always (label 7, plus) regardless of the residue.
struct CosetData {
    int64_t n_mod8 = 1;
    std::array<int, 3> i_rep{};  // generator of inertia's image: (0,0,1)
    std::array<int, 3> d_rep{};  // Frobenius-at-N image, fixes sqrt(N)
    std::array<int, 3> c_rep{};  // (1,0,0)
    std::vector<std::array<int, 3>> inertia;        // two elements
    std::vector<std::array<int, 3>> decomposition;  // generated by inertia and d
};

CosetData coset_data(int64_t n_mod8);

// First `count` primes up to `limit` whose class has the given triple.
std::vector<int64_t> class_primes(int64_t level, const std::array<int, 3>& t,
                                  int64_t count, int64_t limit = 1000);

// All eight classes in a fixed order: labels 1, 3, 5, 7, plus before minus.
std::vector<FrattiniClass> all_classes(int64_t level);

std::string class_table_text(int64_t level);
nlohmann::ordered_json class_table_json(int64_t level);

}  // namespace hecke_f2
