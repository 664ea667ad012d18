#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace hecke_f2 {

// Shared helpers for little-endian packed bit vectors: bit i of the vector
// lives in word i/64 at position i%64.

inline int64_t nwords(int64_t nbits) { return (nbits + 63) >> 6; }

inline int get_bit(const std::vector<uint64_t>& w, int64_t i) {
    return static_cast<int>((w[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1u);
}

inline void set_bit(std::vector<uint64_t>& w, int64_t i, int b = 1) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (b)
        w[static_cast<size_t>(i >> 6)] |= mask;
    else
        w[static_cast<size_t>(i >> 6)] &= ~mask;
}

inline void flip_bit(std::vector<uint64_t>& w, int64_t i) {
    w[static_cast<size_t>(i >> 6)] ^= uint64_t{1} << (i & 63);
}

// Zero out bits at positions >= nbits in the final word.
inline void mask_tail(std::vector<uint64_t>& w, int64_t nbits) {
    if (w.empty()) return;
    int r = static_cast<int>(nbits & 63);
    if (r) w.back() &= (uint64_t{1} << r) - 1;
}

inline bool all_zero(const std::vector<uint64_t>& w) {
    for (uint64_t x : w)
        if (x) return false;
    return true;
}

inline int64_t popcount_words(const std::vector<uint64_t>& w) {
    int64_t c = 0;
    for (uint64_t x : w) c += std::popcount(x);
    return c;
}

// Index of the lowest set bit, or -1 if none.
inline int64_t lowest_set(const std::vector<uint64_t>& w) {
    for (size_t k = 0; k < w.size(); ++k)
        if (w[k]) return static_cast<int64_t>(k) * 64 + std::countr_zero(w[k]);
    return -1;
}

// Index of the highest set bit, or -1 if none.
inline int64_t highest_set(const std::vector<uint64_t>& w) {
    for (size_t k = w.size(); k-- > 0;)
        if (w[k]) return static_cast<int64_t>(k) * 64 + (63 - std::countl_zero(w[k]));
    return -1;
}

// dst ^= src (dst at least as long as src).
inline void xor_into(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src) {
    for (size_t k = 0; k < src.size(); ++k) dst[k] ^= src[k];
}

// dst ^= src << shift, writing only bits < nbits_out of dst.
inline void xor_shifted(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src,
                        int64_t shift, int64_t nbits_out) {
    int64_t wshift = shift >> 6;
    int bshift = static_cast<int>(shift & 63);
    int64_t last = nwords(nbits_out);
    int64_t n = static_cast<int64_t>(src.size());
    if (bshift == 0) {
        for (int64_t k = 0; k < n && k + wshift < last; ++k)
            dst[static_cast<size_t>(k + wshift)] ^= src[static_cast<size_t>(k)];
    } else {
        for (int64_t k = 0; k <= n && k + wshift < last; ++k) {
            uint64_t lo = (k < n) ? src[static_cast<size_t>(k)] << bshift : 0;
            uint64_t hi = (k > 0) ? src[static_cast<size_t>(k - 1)] >> (64 - bshift) : 0;
            dst[static_cast<size_t>(k + wshift)] ^= lo | hi;
        }
    }
    mask_tail(dst, nbits_out);
}

}  // namespace hecke_f2
