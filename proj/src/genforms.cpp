#include "hecke_f2/genforms.hpp"

#include <cmath>

#include "hecke_f2/errors.hpp"

namespace hecke_f2 {

bool valid_level(int64_t level) { return level == 1 || level == 3 || level == 5; }

void require_level(int64_t level) {
    if (!valid_level(level))
        throw InvalidIndex("level must be 1, 3 or 5, got " + std::to_string(level));
}

std::string gen_name(int64_t level) {
    require_level(level);
    if (level == 1) return "delta";
    return level == 3 ? "f3" : "f5";
}

int sigma3_parity(int64_t n) {
    // sigma3(n) = sum of cubes of divisors; odd divisors contribute 1 mod 2,
    // so the parity is the parity of the number of odd divisors of n, which
    // is odd iff the odd part of n is a perfect square, i.e. n = m^2 or 2m^2.
    if (n < 1) throw InvalidIndex("sigma3_parity: n must be >= 1");
    while ((n & 1) == 0) n >>= 1;
    int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? 1 : 0;
}

QExpansion gen_qexp(int64_t level, int64_t prec) {
    require_level(level);
    QExpansion f(prec);
    if (level == 1) {
        for (int64_t k = 1; k * k < prec; k += 2) f.set_coeff(k * k, 1);
        return f;
    }
    // Parity table of sigma3 via the square / twice-square characterization.
    std::vector<uint64_t> odd3(static_cast<size_t>(nwords(prec)), 0);
    for (int64_t m = 1; m * m < prec; ++m) flip_bit(odd3, m * m);
    for (int64_t m = 1; 2 * m * m < prec; ++m) flip_bit(odd3, 2 * m * m);
    for (int64_t n = 1; n < prec; ++n) {
        int a = get_bit(odd3, n);
        if (n % level == 0) a ^= get_bit(odd3, n / level);
        if (a) f.set_coeff(n, 1);
    }
    return f;
}

QExpansion graded_part(const QExpansion& f, int64_t i) {
    if (i < 0 || i > 7) throw InvalidIndex("graded_part: class must be 0..7");
    QExpansion r(f.prec);
    for (int64_t n = (i == 0) ? 8 : i; n < f.prec; n += 8)
        if (get_bit(f.bits, n)) r.set_coeff(n, 1);
    if (i == 0 && f.coeff(0)) r.set_coeff(0, 1);
    return r;
}

}  // namespace hecke_f2
