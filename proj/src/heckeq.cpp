#include "hecke_f2/heckeq.hpp"

#include "hecke_f2/errors.hpp"

namespace hecke_f2 {

int64_t hecke_out_prec(int64_t prec, int64_t m) { return (prec - 1) / m + 1; }

bool is_odd_prime(int64_t p) {
    if (p < 3 || (p & 1) == 0) return false;
    for (int64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

QExpansion t_ell(const QExpansion& f, int64_t ell) {
    if (!is_odd_prime(ell)) throw InvalidIndex("t_ell: " + std::to_string(ell) + " is not an odd prime");
    QExpansion r(hecke_out_prec(f.prec, ell));
    for (int64_t m = 0; m < r.prec; ++m) {
        int a = f.coeff(m * ell);
        if (m % ell == 0) a ^= f.coeff(m / ell);
        if (a) r.set_coeff(m, 1);
    }
    return r;
}

QExpansion u_op(const QExpansion& f, int64_t m) {
    if (m < 1) throw InvalidIndex("u_op: m must be >= 1");
    QExpansion r(hecke_out_prec(f.prec, m));
    for (int64_t i = 0; i < r.prec; ++i)
        if (f.coeff(i * m)) r.set_coeff(i, 1);
    return r;
}

QExpansion v_op(const QExpansion& f, int64_t m) { return substitute_qpow(f, m); }

QExpansion theta(const QExpansion& f) {
    QExpansion r(f.prec);
    for (int64_t i = 1; i < f.prec; i += 2)
        if (get_bit(f.bits, i)) r.set_coeff(i, 1);
    return r;
}

QExpansion t_prime_power(const QExpansion& f, int64_t ell, int64_t r) {
    if (r < 0) throw InvalidIndex("t_prime_power: negative exponent");
    if (r == 0) return f;
    if (r == 1) return t_ell(f, ell);
    // prev2 / prev1 track T_{ell^{k-2}} f and T_{ell^{k-1}} f, truncated as we go.
    QExpansion prev2 = f;
    QExpansion prev1 = t_ell(f, ell);
    for (int64_t k = 2; k <= r; ++k) {
        QExpansion next = add(t_ell(prev1, ell), truncate(prev2, hecke_out_prec(prev1.prec, ell)));
        prev2 = std::move(prev1);
        prev1 = std::move(next);
    }
    return prev1;
}

QExpansion t_n(const QExpansion& f, int64_t n) {
    if (n < 1 || (n & 1) == 0) throw InvalidIndex("t_n: n must be odd and positive");
    QExpansion r = f;
    for (int64_t p = 3; p * p <= n; p += 2) {
        if (n % p) continue;
        int64_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        r = t_prime_power(r, p, e);
    }
    if (n > 1) r = t_ell(r, n);
    return r;
}

QExpansion apply_op(const OpSpec& op, const QExpansion& f) {
    switch (op.kind) {
        case OpKind::TEll: return t_ell(f, op.m);
        case OpKind::UOp: return u_op(f, op.m);
        case OpKind::VOp: return v_op(f, op.m);
        case OpKind::Theta: return theta(f);
        case OpKind::Identity: return f;
    }
    throw InvalidIndex("apply_op: bad kind");
}

std::string op_name(const OpSpec& op) {
    switch (op.kind) {
        case OpKind::TEll: return "T" + std::to_string(op.m);
        case OpKind::UOp: return "U" + std::to_string(op.m);
        case OpKind::VOp: return "V" + std::to_string(op.m);
        case OpKind::Theta: return "theta";
        case OpKind::Identity: return "1";
    }
    return "?";
}

}  // namespace hecke_f2
