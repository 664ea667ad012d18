#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hecke_f2/f2la.hpp"
#include "hecke_f2/spaces.hpp"
#include "vendor/json.hpp"

namespace hecke_f2 {

// Monomials of total degree < d in two variables, graded order, first
// variable's exponent descending inside each degree. This is the one
// canonical order used for series text, dual bases and pairing grids.
std::vector<std::pair<int64_t, int64_t>> graded_monomials(int64_t d);

// A truncated power series in two commuting variables over GF(2). Terms are
// the monomials with coefficient 1; everything of total degree >= degree_bound
// is unknown rather than zero.
struct BiSeries {
    std::string xname = "x";
    std::string yname = "y";
    int64_t degree_bound = 0;  // exclusive
    std::set<std::pair<int64_t, int64_t>> terms;

    bool has_term(int64_t a, int64_t b) const { return terms.count({a, b}) != 0; }
    void set_term(int64_t a, int64_t b, bool on = true);
    bool is_zero() const { return terms.empty(); }

    // "xy + x^3y + xy^5 + ..." in canonical order; "0" when empty.
    std::string text() const;
    nlohmann::ordered_json to_json() const;

    bool operator==(const BiSeries& o) const {
        return degree_bound == o.degree_bound && terms == o.terms;
    }
};

// Formal sum of composition products of basic operators. A product
// {a, b, c} means a after b after c; the empty product is the identity.
// Equal products cancel in pairs (coefficients live in GF(2)).
using OpProduct = std::vector<OpSpec>;

struct OperatorExpr {
    std::vector<OpProduct> terms;  // kept sorted, duplicates cancelled

    bool is_zero() const { return terms.empty(); }
    bool operator==(const OperatorExpr& o) const = default;
};

OperatorExpr ox_zero();
OperatorExpr ox_identity();
OperatorExpr ox_gen(const OpSpec& op);
OperatorExpr ox_sum(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr ox_compose(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr ox_pow(const OperatorExpr& a, int64_t n);

// s(x, y) with the variables sent to single operators: each term (a, b)
// becomes x^a y^b as a composition product.
OperatorExpr series_operator(const BiSeries& s, const OpSpec& x, const OpSpec& y);

// "T11*T13 + T7 + 1" style rendering, terms in the normalized order.
std::string ox_name(const OperatorExpr& e);

// Evaluated operator: matrix on f^0..f^{D-1} plus the number of leading
// columns that are exact. Degree-raising ops (theta, V_2) are only allowed
// as single-factor terms; T/U products stay exact at every column.
struct OpMatrix {
    BitMatrix mat;
    int64_t valid = 0;
};

OpMatrix eval_expr(const PolyAlgebra& alg, const OperatorExpr& e);

// <T, f> = a_1(T f), which in coordinates is bit 1 of mat * form.
int pairing_bit(const BitMatrix& op, const std::vector<uint64_t>& form);

// Dual basis of the monomials x^a y^b (total degree < d, canonical order)
// for the pairing <., .> on a space: forms[k] pairs to 1 against
// monomials[k] and to 0 against every other monomial of the grid.
//
// grid_degree records how far the defining pairing conditions actually
// reached (>= d). Construction certifies the tail: every monomial of total
// degree exactly d annihilates every dual form, so pairing any series
// against these forms reads off its coefficients below degree d exactly.
struct DualBasis {
    int64_t d = 0;
    int64_t grid_degree = 0;
    std::vector<std::pair<int64_t, int64_t>> monomials;
    std::vector<std::vector<uint64_t>> forms;  // coordinate vectors, D bits
};

// Throws SingularPairing if the degree-< d system itself is unsolvable on
// this space, InsufficientScale if solvable but the tail certificate cannot
// be reached at any padding.
DualBasis dual_basis_rows(const PolyAlgebra& alg,
                          const std::vector<std::vector<uint64_t>>& rows,
                          const BitMatrix& mx, const BitMatrix& my, int64_t d);
DualBasis dual_basis(const PolyAlgebra& alg, const FormSpace& space,
                     const BitMatrix& mx, const BitMatrix& my, int64_t d);

// Coefficients below degree d of the series expressing t as a power series
// in the two generator operators, read off against the dual basis. The
// residual t + (extracted series)(mx, my) is checked to annihilate every
// dual form; a surviving bit throws NotInAlgebra.
BiSeries express_in_generators(const PolyAlgebra& alg, const BitMatrix& t,
                               const BitMatrix& mx, const BitMatrix& my,
                               const DualBasis& dual, const std::string& xname,
                               const std::string& yname);

// Least k with (ideal generated by gens)^k * v = 0; 0 for v = 0. Walks
// span{products of k generators applied to v} until it dies.
int64_t nilpotence_index(const std::vector<BitMatrix>& gens,
                         const std::vector<uint64_t>& v, int64_t dim);

// h[k] = rank of the pairing (monomials of total degree < k in gens) x
// (rows), for k = 0..k_max. Measures the dimension of the part of the dual
// space reached by low-degree operator monomials.
std::vector<int64_t> hilbert_samuel(const std::vector<BitMatrix>& gens,
                                    const std::vector<std::vector<uint64_t>>& rows,
                                    int64_t k_max);

// Solve U^2 + X U + 1 = 0 on the whole degree-< D model for X a sum of
// monomials of degree 2..max_degree in tgens (degree >= 2 keeps X inside
// the square of the maximal ideal). Tries max_degree = 6 then 8, then
// throws InsufficientScale. The returned witness satisfies the relation as
// an exact matrix identity; callers layer the Frobenius cross-checks
// (kills ker(U+1), restricts to T_N on level-raised forms) on top.
OperatorExpr solve_frobenius(const PolyAlgebra& alg, const std::vector<OpSpec>& tgens);

}  // namespace hecke_f2
