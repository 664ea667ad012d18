#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hecke_f2/f2la.hpp"
#include "hecke_f2/fps2.hpp"
#include "hecke_f2/heckeq.hpp"
#include "hecke_f2/recur.hpp"

namespace hecke_f2 {

// Finite-scale model of the form algebra M(N) = GF(2)[f]: the degrees
// 0 .. D-1 with enough q-expansion precision to move between coordinates and
// q-expansions and to push U_2 (factor 2) and U_N (factor N) through without
// losing certainty. All T/U operator matrices are exact at every column
// because those operators never raise the degree; theta squares the result of
// U_2 (V_2 is squaring in characteristic 2), so its matrix columns are exact
// only up to theta_valid.
struct PolyAlgebra {
    int64_t level = 1;
    int64_t D = 0;
    int64_t prec = 0;
    QExpansion gen;
    std::vector<QExpansion> pows;  // gen^0 .. gen^{D-1}, all at prec

    BitMatrix u2;           // exact on all D columns
    BitMatrix th;           // theta = 1 + V_2 U_2; columns >= theta_valid unusable
    int64_t theta_valid = 0;

    mutable std::map<OpSpec, BitMatrix> mat_cache;
    mutable std::map<OpSpec, CompanionPoly> cp_cache;

    // PolyCoord with dim = D for a q-expansion (throws NotInAlgebra /
    // InsufficientPrecision like from_qexpansion).
    PolyCoord coord(const QExpansion& f) const;
    QExpansion qexp(const PolyCoord& c) const;
    QExpansion qexp_bits(const std::vector<uint64_t>& coords) const;

    // Matrix of an operator on f^0..f^{D-1}. TEll / UOp(level) go through the
    // companion recurrence (exact everywhere); UOp(2) and Theta come from the
    // bootstrap; VOp(2) is Frobenius (column n -> e_{2n}). Columns beyond
    // valid_cols(op) are zero-filled placeholders.
    const BitMatrix& op_matrix(const OpSpec& op) const;
    const CompanionPoly& companion(const OpSpec& op) const;
    int64_t valid_cols(const OpSpec& op) const;
};

// prec = 0 picks max(level, 2) * D + 64.
PolyAlgebra make_algebra(int64_t level, int64_t D, int64_t prec = 0);

// Same, but with the generator series supplied (e.g. from the on-disk
// cache). The series must carry exactly the requested precision and open
// with q + O(q^2); downstream bootstrap checks reject anything inconsistent.
PolyAlgebra make_algebra(int64_t level, int64_t D, int64_t prec, QExpansion gen);

// Echelonized subspace of the degree-< D coordinate space.
struct FormSpace {
    std::string name;
    int64_t level = 0;
    int64_t D = 0;
    Echelon ech;
    std::vector<int> labels;  // mod-8 class of each basis row's q-support, -1 if mixed

    int64_t dim() const { return ech.rank(); }
    std::vector<uint64_t> basis_row(int64_t i) const { return ech.mat.row_copy(i); }
    bool contains(const std::vector<uint64_t>& v) const { return in_row_space(ech, v); }
};

FormSpace make_space(std::string name, const PolyAlgebra& alg, BitMatrix rows);

// {v in space : M v = 0}.
FormSpace kernel_in_space(std::string name, const PolyAlgebra& alg, const FormSpace& space,
                          const BitMatrix& M);

// K(N) = ker U_2 = forms supported on odd q-indices.
FormSpace k_space(const PolyAlgebra& alg);

// Span of theta(f^n), 1 <= n < theta_valid: the constructive route into K(N).
FormSpace theta_image(const PolyAlgebra& alg);

// Level-raised copies of the level-1 algebra inside M(N): the span of 1,
// powers of delta, and powers of delta(q^Nanchor). Returns the space plus the
// coordinates of the two generators.
struct OldSpace {
    FormSpace space;
    PolyCoord delta;    // delta as a polynomial in the level's generator
    PolyCoord delta_n;  // delta(q^N) likewise
};
OldSpace old_space(const PolyAlgebra& alg);

// ker(U_N + 1) on K and ker (U_N + 1)^2 on K.
FormSpace vnew_space(const PolyAlgebra& alg);
FormSpace new_space(const PolyAlgebra& alg);

// Exact polynomial product of two coordinate vectors (GF(2)[f] multiplication,
// throws on degree overflow past D-1).
PolyCoord pc_mul(const PolyCoord& a, const PolyCoord& b);

// For f in ker(U_N + 1): g = f_1 + f_i (mod-8 graded parts, default class
// i = 5 for N = 3 and i = 3 for N = 5) satisfies (U_N + 1) g = f. The result
// is certified back in the algebra via from_qexpansion.
PolyCoord un_preimage(const PolyAlgebra& alg, const PolyCoord& f, int64_t i = 0);

// One row per basis vector: row index, leading degree, grading label, then
// the D coordinate bits.
std::string dump_space_csv(const FormSpace& s);

// dim(A ∩ B) via rank(A) + rank(B) - rank(A stacked on B).
int64_t intersection_dim(const FormSpace& a, const FormSpace& b);

}  // namespace hecke_f2
