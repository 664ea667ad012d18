#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hecke_f2/bits.hpp"

namespace hecke_f2 {

// Dense GF(2) matrix, rows packed into 64-bit words. Everything here is exact;
// there is no tolerance knob anywhere. An unsolvable system is a value
// (std::nullopt), not an exception.
struct BitMatrix {
    int64_t rows = 0;
    int64_t cols = 0;
    int64_t wpr = 0;  // words per row
    std::vector<uint64_t> w;

    BitMatrix() = default;
    BitMatrix(int64_t r, int64_t c)
        : rows(r), cols(c), wpr(nwords(c)), w(static_cast<size_t>(r * nwords(c)), 0) {}

    static BitMatrix identity(int64_t n);

    uint64_t* row(int64_t r) { return w.data() + r * wpr; }
    const uint64_t* row(int64_t r) const { return w.data() + r * wpr; }

    int get(int64_t r, int64_t c) const {
        return static_cast<int>((row(r)[c >> 6] >> (c & 63)) & 1u);
    }
    void set(int64_t r, int64_t c, int b) {
        uint64_t mask = uint64_t{1} << (c & 63);
        if (b)
            row(r)[c >> 6] |= mask;
        else
            row(r)[c >> 6] &= ~mask;
    }

    void xor_rows(int64_t dst, int64_t src) {
        uint64_t* d = row(dst);
        const uint64_t* s = row(src);
        for (int64_t k = 0; k < wpr; ++k) d[k] ^= s[k];
    }
    void swap_rows(int64_t a, int64_t b) {
        if (a == b) return;
        uint64_t* pa = row(a);
        uint64_t* pb = row(b);
        for (int64_t k = 0; k < wpr; ++k) std::swap(pa[k], pb[k]);
    }

    bool row_zero(int64_t r) const {
        const uint64_t* p = row(r);
        for (int64_t k = 0; k < wpr; ++k)
            if (p[k]) return false;
        return true;
    }

    std::vector<uint64_t> row_copy(int64_t r) const {
        return std::vector<uint64_t>(row(r), row(r) + wpr);
    }
    void row_assign(int64_t r, const std::vector<uint64_t>& v) {
        for (int64_t k = 0; k < wpr; ++k) row(r)[k] = (k < (int64_t)v.size()) ? v[k] : 0;
        mask_row_tail(r);
    }
    void mask_row_tail(int64_t r) {
        int rem = static_cast<int>(cols & 63);
        if (rem) row(r)[wpr - 1] &= (uint64_t{1} << rem) - 1;
    }

    bool operator==(const BitMatrix& o) const {
        return rows == o.rows && cols == o.cols && w == o.w;
    }
};

BitMatrix add(const BitMatrix& a, const BitMatrix& b);
BitMatrix mul(const BitMatrix& a, const BitMatrix& b);
BitMatrix transpose(const BitMatrix& m);

// y = m * x, with x packed over m.cols bits and y over m.rows bits.
std::vector<uint64_t> mat_vec(const BitMatrix& m, const std::vector<uint64_t>& x);

// Reduced row-echelon form with zero rows dropped. pivots[i] is the column of
// row i's leading 1, strictly increasing; rank == pivots.size().
struct Echelon {
    BitMatrix mat;
    std::vector<int64_t> pivots;
    int64_t cols = 0;
    int64_t rank() const { return static_cast<int64_t>(pivots.size()); }
};

Echelon echelon(const BitMatrix& m);
int64_t rank(const BitMatrix& m);

// Reduce v (packed, e.cols bits) by the echelon rows; the remainder is zero
// exactly when v lies in the row space.
std::vector<uint64_t> reduce_by(const Echelon& e, std::vector<uint64_t> v);
bool in_row_space(const Echelon& e, const std::vector<uint64_t>& v);

// Coordinates of v in the echelon's row basis (v must lie in the row space).
std::optional<std::vector<uint64_t>> coords_in_row_space(const Echelon& e,
                                                         std::vector<uint64_t> v);

// Basis of {x : m x = 0}, one row per basis vector (cols = m.cols).
BitMatrix kernel(const BitMatrix& m);

// One solution of m x = b with free coordinates set to zero, or nullopt.
// b is packed over m.rows bits; the result over m.cols bits.
std::optional<std::vector<uint64_t>> solve(const BitMatrix& m,
                                           const std::vector<uint64_t>& b);

// Stack a on top of b (same cols).
BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);

}  // namespace hecke_f2
