#include "hecke_f2/f2la.hpp"

#include <algorithm>

#include "hecke_f2/errors.hpp"

namespace hecke_f2 {

BitMatrix BitMatrix::identity(int64_t n) {
    BitMatrix m(n, n);
    for (int64_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

BitMatrix add(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw InvalidIndex("matrix add: shape mismatch");
    BitMatrix r = a;
    for (size_t k = 0; k < r.w.size(); ++k) r.w[k] ^= b.w[k];
    return r;
}

BitMatrix mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols != b.rows) throw InvalidIndex("matrix mul: shape mismatch");
    BitMatrix r(a.rows, b.cols);
    for (int64_t i = 0; i < a.rows; ++i) {
        const uint64_t* ar = a.row(i);
        uint64_t* rr = r.row(i);
        for (int64_t kw = 0; kw < a.wpr; ++kw) {
            uint64_t bits = ar[kw];
            while (bits) {
                int64_t k = kw * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                const uint64_t* br = b.row(k);
                for (int64_t j = 0; j < b.wpr; ++j) rr[j] ^= br[j];
            }
        }
    }
    return r;
}

BitMatrix transpose(const BitMatrix& m) {
    BitMatrix r(m.cols, m.rows);
    for (int64_t i = 0; i < m.rows; ++i) {
        const uint64_t* p = m.row(i);
        for (int64_t kw = 0; kw < m.wpr; ++kw) {
            uint64_t bits = p[kw];
            while (bits) {
                int64_t j = kw * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                r.set(j, i, 1);
            }
        }
    }
    return r;
}

std::vector<uint64_t> mat_vec(const BitMatrix& m, const std::vector<uint64_t>& x) {
    if ((int64_t)x.size() < m.wpr) throw InvalidIndex("mat_vec: vector too short");
    std::vector<uint64_t> y(static_cast<size_t>(nwords(m.rows)), 0);
    for (int64_t i = 0; i < m.rows; ++i) {
        const uint64_t* p = m.row(i);
        uint64_t acc = 0;
        for (int64_t k = 0; k < m.wpr; ++k) acc ^= p[k] & x[static_cast<size_t>(k)];
        if (std::popcount(acc) & 1) set_bit(y, i, 1);
    }
    return y;
}

Echelon echelon(const BitMatrix& m) {
    BitMatrix a = m;
    std::vector<int64_t> pivots;
    int64_t r = 0;
    for (int64_t c = 0; c < a.cols && r < a.rows; ++c) {
        int64_t sel = -1;
        for (int64_t i = r; i < a.rows; ++i)
            if (a.get(i, c)) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        a.swap_rows(r, sel);
        for (int64_t i = 0; i < a.rows; ++i)
            if (i != r && a.get(i, c)) a.xor_rows(i, r);
        pivots.push_back(c);
        ++r;
    }
    Echelon e;
    e.cols = a.cols;
    e.pivots = std::move(pivots);
    e.mat = BitMatrix(static_cast<int64_t>(e.pivots.size()), a.cols);
    for (int64_t i = 0; i < e.mat.rows; ++i) e.mat.row_assign(i, a.row_copy(i));
    return e;
}

int64_t rank(const BitMatrix& m) { return echelon(m).rank(); }

std::vector<uint64_t> reduce_by(const Echelon& e, std::vector<uint64_t> v) {
    v.resize(static_cast<size_t>(nwords(e.cols)), 0);
    for (int64_t i = 0; i < e.mat.rows; ++i) {
        if (get_bit(v, e.pivots[static_cast<size_t>(i)])) {
            const uint64_t* p = e.mat.row(i);
            for (int64_t k = 0; k < e.mat.wpr; ++k) v[static_cast<size_t>(k)] ^= p[k];
        }
    }
    return v;
}

bool in_row_space(const Echelon& e, const std::vector<uint64_t>& v) {
    return all_zero(reduce_by(e, v));
}

std::optional<std::vector<uint64_t>> coords_in_row_space(const Echelon& e,
                                                         std::vector<uint64_t> v) {
    v.resize(static_cast<size_t>(nwords(e.cols)), 0);
    std::vector<uint64_t> c(static_cast<size_t>(nwords(e.mat.rows)), 0);
    for (int64_t i = 0; i < e.mat.rows; ++i) {
        if (get_bit(v, e.pivots[static_cast<size_t>(i)])) {
            set_bit(c, i, 1);
            const uint64_t* p = e.mat.row(i);
            for (int64_t k = 0; k < e.mat.wpr; ++k) v[static_cast<size_t>(k)] ^= p[k];
        }
    }
    if (!all_zero(v)) return std::nullopt;
    return c;
}

BitMatrix kernel(const BitMatrix& m) {
    Echelon e = echelon(m);
    std::vector<int64_t> free_cols;
    {
        size_t pi = 0;
        for (int64_t c = 0; c < m.cols; ++c) {
            if (pi < e.pivots.size() && e.pivots[pi] == c)
                ++pi;
            else
                free_cols.push_back(c);
        }
    }
    BitMatrix k(static_cast<int64_t>(free_cols.size()), m.cols);
    for (size_t f = 0; f < free_cols.size(); ++f) {
        k.set(static_cast<int64_t>(f), free_cols[f], 1);
        for (int64_t i = 0; i < e.mat.rows; ++i)
            if (e.mat.get(i, free_cols[f])) k.set(static_cast<int64_t>(f), e.pivots[static_cast<size_t>(i)], 1);
    }
    return k;
}

std::optional<std::vector<uint64_t>> solve(const BitMatrix& m,
                                           const std::vector<uint64_t>& b) {
    // Augment with b as an extra column and eliminate.
    BitMatrix a(m.rows, m.cols + 1);
    for (int64_t i = 0; i < m.rows; ++i) {
        const uint64_t* src = m.row(i);
        uint64_t* dst = a.row(i);
        for (int64_t k = 0; k < m.wpr; ++k) dst[k] = src[k];
        a.mask_row_tail(i);
        if (static_cast<size_t>(i >> 6) < b.size() && get_bit(b, i)) a.set(i, m.cols, 1);
    }
    Echelon e = echelon(a);
    std::vector<uint64_t> x(static_cast<size_t>(nwords(m.cols)), 0);
    for (int64_t i = 0; i < e.mat.rows; ++i) {
        if (e.pivots[static_cast<size_t>(i)] == m.cols) return std::nullopt;  // row (0 .. 0 | 1)
        if (e.mat.get(i, m.cols)) set_bit(x, e.pivots[static_cast<size_t>(i)], 1);
    }
    return x;
}

BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols != b.cols) throw InvalidIndex("vstack: column mismatch");
    BitMatrix r(a.rows + b.rows, a.cols);
    std::copy(a.w.begin(), a.w.end(), r.w.begin());
    std::copy(b.w.begin(), b.w.end(), r.w.begin() + a.w.size());
    return r;
}

}  // namespace hecke_f2
