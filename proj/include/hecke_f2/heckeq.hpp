#pragma once

#include <cstdint>
#include <string>

#include "hecke_f2/fps2.hpp"

namespace hecke_f2 {

// Hecke operators acting on q-expansions over GF(2). In characteristic 2 all
// weights collapse: for odd prime ell (coprime to the level),
//   (T_ell f)_m = a_{m*ell} + a_{m/ell}   (second term only when ell | m)
// and for any m >= 1,
//   (U_m f)_i = a_{i*m},   (V_m f) = f(q^m).
// theta projects onto odd q-indices; on the algebra side it coincides with
// 1 + V_2 U_2, which is a checked identity, not the implementation.

// Precision after an index-dividing operator: the largest P with
// (P-1)*m <= prec-1, i.e. floor((prec-1)/m) + 1. Deliberately pessimistic for
// T_ell (the a_{m/ell} term never constrains).
int64_t hecke_out_prec(int64_t prec, int64_t m);

bool is_odd_prime(int64_t p);

QExpansion t_ell(const QExpansion& f, int64_t ell);
QExpansion u_op(const QExpansion& f, int64_t m);
QExpansion v_op(const QExpansion& f, int64_t m);
QExpansion theta(const QExpansion& f);

// T at odd prime powers via the characteristic-2 recurrence
// T_{ell^r} = T_ell T_{ell^{r-1}} + T_{ell^{r-2}}, and at general odd n by
// multiplicativity over its prime-power factors.
QExpansion t_prime_power(const QExpansion& f, int64_t ell, int64_t r);
QExpansion t_n(const QExpansion& f, int64_t n);

enum class OpKind { TEll, UOp, VOp, Theta, Identity };

struct OpSpec {
    OpKind kind = OpKind::Identity;
    int64_t m = 0;  // parameter for TEll / UOp / VOp, ignored otherwise

    bool operator==(const OpSpec& o) const = default;
    bool operator<(const OpSpec& o) const {
        return kind != o.kind ? kind < o.kind : m < o.m;
    }
};

inline OpSpec op_t(int64_t ell) { return {OpKind::TEll, ell}; }
inline OpSpec op_u(int64_t m) { return {OpKind::UOp, m}; }
inline OpSpec op_v(int64_t m) { return {OpKind::VOp, m}; }
inline OpSpec op_theta() { return {OpKind::Theta, 0}; }
inline OpSpec op_id() { return {OpKind::Identity, 0}; }

QExpansion apply_op(const OpSpec& op, const QExpansion& f);
std::string op_name(const OpSpec& op);  // "T11", "U3", "V2", "theta", "1"

}  // namespace hecke_f2
