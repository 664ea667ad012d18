#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hecke_f2/bits.hpp"

namespace hecke_f2 {

// Truncated power series over GF(2), coefficients bit-packed little-endian:
// bit i of `bits` is the coefficient of q^i. `prec` is exclusive: coefficients
// 0 .. prec-1 are known, everything beyond is O(q^prec). prec >= 1 always.
// Bits at positions >= prec are kept zero (class invariant).
struct QExpansion {
    std::vector<uint64_t> bits;
    int64_t prec = 1;

    QExpansion() : bits(1, 0) {}
    explicit QExpansion(int64_t p);

    int coeff(int64_t i) const;  // throws IndexBeyondPrecision if i >= prec
    void set_coeff(int64_t i, int b);

    bool is_zero() const { return all_zero(bits); }
    // Lowest set coefficient index, or -1 if zero to precision.
    int64_t order() const { return lowest_set(bits); }

    bool operator==(const QExpansion& o) const {
        return prec == o.prec && bits == o.bits;
    }
};

QExpansion qzero(int64_t prec);
QExpansion qone(int64_t prec);
QExpansion qpow_monomial(int64_t n, int64_t prec);  // q^n

// prec of the result = min of operand precs (add), and for mul the same:
// products of known windows only ever pollute indices >= min prec.
QExpansion add(const QExpansion& a, const QExpansion& b);
QExpansion mul(const QExpansion& a, const QExpansion& b);
QExpansion pow(const QExpansion& a, int64_t e);  // e >= 0, repeated squaring

// f(q) -> f(q^m); result precision m * prec: the first unknown source
// coefficient lands at index m*prec, and indices below it that are not
// multiples of m are genuinely zero.
QExpansion substitute_qpow(const QExpansion& a, int64_t m);

QExpansion truncate(const QExpansion& a, int64_t prec);

// Compare through coefficient P-1; throws InsufficientPrecision if either
// operand knows fewer than P coefficients.
bool eq_to_prec(const QExpansion& a, const QExpansion& b, int64_t P);

// Human-readable "q + q^2 + q^4 + ..." (constant term prints as "1").
std::string terms_string(const QExpansion& a, int64_t max_terms = 24);

// F2QSER interchange format:
//   F2QSER 1
//   name=<id> level=<n> prec=<p>
//   <lowercase hex, bit i little-endian = coeff of q^i, padded to 4 bits>
std::string to_f2qser(const QExpansion& a, const std::string& name, int64_t level);

struct F2qserRecord {
    QExpansion series;
    std::string name;
    int64_t level;
};
F2qserRecord from_f2qser(const std::string& text);

}  // namespace hecke_f2
