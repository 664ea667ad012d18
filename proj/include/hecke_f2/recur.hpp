#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hecke_f2/f2la.hpp"
#include "hecke_f2/fps2.hpp"
#include "hecke_f2/heckeq.hpp"

namespace hecke_f2 {

// Coordinates of a polynomial in the level's generator f: bit n is the
// coefficient of f^n. dim is the number of tracked coordinates (degrees
// 0 .. dim-1). All arithmetic that would push a set bit past dim-1 throws
// instead of silently truncating; exactness is the whole point.
struct PolyCoord {
    std::vector<uint64_t> bits;
    int64_t dim = 0;

    PolyCoord() = default;
    explicit PolyCoord(int64_t d) : bits(static_cast<size_t>(nwords(d)), 0), dim(d) {}

    int get(int64_t i) const;
    void set(int64_t i, int b);
    int64_t deg() const { return highest_set(bits); }  // -1 for zero
    bool is_zero() const { return all_zero(bits); }
    bool operator==(const PolyCoord& o) const { return dim == o.dim && bits == o.bits; }
};

PolyCoord pc_add(const PolyCoord& a, const PolyCoord& b);
// a * y^s; throws if a set coordinate would leave the window.
PolyCoord pc_shift(const PolyCoord& a, int64_t s);
// a * p(y) where bit i of ymask is the coefficient of y^i.
PolyCoord pc_mul_mask(const PolyCoord& a, uint64_t ymask);
// Change dim; shrinking below a set coordinate throws.
PolyCoord pc_resize(const PolyCoord& a, int64_t dim);

// pows[i] = gen^i at gen's precision, i = 0..n.
std::vector<QExpansion> gen_powers(const QExpansion& gen, int64_t n);

// Exact polynomial coordinates of f in the algebra GF(2)[gen], degrees up to
// max_deg. Requires gen = q + O(q^2) and f.prec > max_deg (the leading terms
// of successive generator powers make the elimination triangular). Throws
// NotInAlgebra (with the residual's first surviving q-index) if f is not a
// polynomial of degree <= max_deg to the available precision.
PolyCoord from_qexpansion(const QExpansion& f, const std::vector<QExpansion>& pows,
                          int64_t max_deg);
PolyCoord from_qexpansion(const QExpansion& f, const QExpansion& gen, int64_t max_deg);

// Sum of pows[i] over set coordinates (needs pows.size() > deg).
QExpansion qexp_of(const PolyCoord& c, const std::vector<QExpansion>& pows);

// Companion polynomial of an operator acting on GF(2)[f]: the images
// s_n = op(f^n) satisfy, for every n > order,
//   s_n = sum_{j=1..order} a_j(y) * s_{n-j}       (y = multiplication by f)
// with deg a_j <= j and deg a_order = order. a[j] stores a_j as a bitmask of
// y-powers; a[0] is unused.
struct CompanionPoly {
    int64_t order = 0;
    std::vector<uint64_t> a;

    bool operator==(const CompanionPoly& o) const = default;
};

// Canonical text: X-powers descending, each coefficient ascending in y, e.g.
// "X^3 + y*X^2 + (y + y^2)*X + y + y^3".
std::string to_text(const CompanionPoly& cp);

// Find the minimal-order companion polynomial of op on level's algebra by
// solving the linear system the recurrence imposes on operator images of
// f^n (solved on one window of n, then re-verified on a disjoint window
// twice as long). Throws NoRecurrenceFound if nothing of order <= d_max fits
// or the minimal fit is ambiguous or fails the degree side conditions.
CompanionPoly derive_companion(const OpSpec& op, int64_t level, int64_t d_max);

// Independent check of a claimed recurrence against q-expansion images for
// order < n <= n_max; every s_n here is recomputed from scratch, nothing is
// recurrence-filled. first_fail is the smallest failing n (or -1).
struct RecurrenceCheck {
    bool ok = true;
    int64_t first_fail = -1;
};
RecurrenceCheck verify_recurrence(const CompanionPoly& cp, const OpSpec& op,
                                  int64_t level, int64_t n_max);

// D x D matrix of op on the basis f^0 .. f^{D-1}: column n holds the
// coordinates of op(f^n). Seed columns (n <= order) come from q-expansions;
// the rest are filled by the recurrence, which keeps every column exact at
// any D. Asserts deg op(f^n) <= n throughout, so the matrix is lower
// triangular in the degree filtration and compositions stay exact.
BitMatrix hecke_matrix(const CompanionPoly& cp, const OpSpec& op, int64_t level,
                       int64_t D);

}  // namespace hecke_f2
